#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "error.hpp"

namespace entspec {

using Complex = std::complex<double>;

template <typename Real, std::size_t N>
using ComplexMatrix = std::array<std::array<std::complex<Real>, N>, N>;

template <std::size_t N>
using SquareMatrix = ComplexMatrix<double, N>;

using Matrix4c = SquareMatrix<4>;

template <typename Real, std::size_t N>
ComplexMatrix<Real, N> multiply(const ComplexMatrix<Real, N>& a, const ComplexMatrix<Real, N>& b) {
  ComplexMatrix<Real, N> c{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t j = 0; j < N; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

namespace detail {

// Givens rotation G = [[c, s], [-conj(s), c]] with G (a, b)^T = (r, 0)^T.
template <typename Real>
struct Givens {
  using C = std::complex<Real>;
  Real c = 1;
  C s{};

  static Givens zeroing(C a, C b) {
    const Real nb = std::abs(b);
    if (nb == 0) return {};
    const Real na = std::abs(a);
    const Real norm = std::hypot(na, nb);
    if (na == 0) return {0, std::conj(b) / nb};
    return {na / norm, (a / na) * std::conj(b) / norm};
  }
};

template <typename Real, std::size_t N>
void reduce_to_hessenberg(ComplexMatrix<Real, N>& h) {
  using C = std::complex<Real>;
  for (std::size_t k = 0; k + 2 < N; ++k) {
    std::array<C, N> v{};
    Real xnorm2 = 0;
    for (std::size_t i = k + 1; i < N; ++i) {
      v[i] = h[i][k];
      xnorm2 += std::norm(v[i]);
    }
    const Real xnorm = std::sqrt(xnorm2);
    if (xnorm == 0) continue;
    const Real a0 = std::abs(v[k + 1]);
    const C phase = a0 == 0 ? C{1} : v[k + 1] / a0;
    v[k + 1] += phase * xnorm;
    Real vnorm2 = 0;
    for (std::size_t i = k + 1; i < N; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0) continue;
    // h <- (I - 2 v v^H / |v|^2) h (I - 2 v v^H / |v|^2)
    for (std::size_t j = 0; j < N; ++j) {
      C dot{};
      for (std::size_t i = k + 1; i < N; ++i) dot += std::conj(v[i]) * h[i][j];
      dot *= Real(2) / vnorm2;
      for (std::size_t i = k + 1; i < N; ++i) h[i][j] -= v[i] * dot;
    }
    for (std::size_t i = 0; i < N; ++i) {
      C dot{};
      for (std::size_t j = k + 1; j < N; ++j) dot += h[i][j] * v[j];
      dot *= Real(2) / vnorm2;
      for (std::size_t j = k + 1; j < N; ++j) h[i][j] -= dot * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < N; ++i) h[i][k] = 0;
  }
}

// Eigenvalue of the 2x2 block [[a, b], [c, d]] closest to d.
template <typename C>
C wilkinson_shift(C a, C b, C c, C d) {
  const C half_diff = (a - d) / typename C::value_type(2);
  const C root = std::sqrt(half_diff * half_diff + b * c);
  const C mid = (a + d) / typename C::value_type(2);
  const C e1 = mid + root, e2 = mid - root;
  return std::abs(e1 - d) < std::abs(e2 - d) ? e1 : e2;
}

}  // namespace detail

// Eigenvalues of a small complex matrix by Householder reduction to upper
// Hessenberg form followed by single-shift QR with Wilkinson shifts. A
// subdiagonal entry is treated as zero once it falls below 1e-12 of the
// Frobenius norm. Order of the result is unspecified.
template <typename Real, std::size_t N>
std::array<std::complex<Real>, N> hessenberg_qr_eigenvalues(ComplexMatrix<Real, N> h, int max_iterations_per_eigenvalue = 100) {
  using C = std::complex<Real>;
  Real fro2 = 0;
  for (const auto& row : h)
    for (const auto& x : row) {
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) throw ArgumentError("matrix has non-finite entries");
      fro2 += std::norm(x);
    }
  std::array<C, N> eig{};
  const Real norm = std::sqrt(fro2);
  if (norm == 0) return eig;
  const Real tol = Real(1e-12) * norm;

  detail::reduce_to_hessenberg(h);

  int hi = static_cast<int>(N) - 1;
  int iterations = 0;
  while (hi >= 0) {
    if (hi == 0) {
      eig[0] = h[0][0];
      break;
    }
    int lo = hi;
    while (lo > 0 && std::abs(h[lo][lo - 1]) > tol) --lo;
    if (lo > 0) h[lo][lo - 1] = 0;
    if (lo == hi) {
      eig[hi] = h[hi][hi];
      --hi;
      iterations = 0;
      continue;
    }
    if (++iterations > max_iterations_per_eigenvalue) throw NumericalError("Hessenberg QR iteration did not converge");

    C shift;
    if (iterations % 11 == 10) {
      // exceptional shift to break cycles
      shift = h[hi][hi] + C{std::abs(h[hi][hi - 1]), 0};
    } else {
      shift = detail::wilkinson_shift(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi]);
    }

    for (int i = lo; i <= hi; ++i) h[i][i] -= shift;
    std::array<detail::Givens<Real>, N> rotations{};
    for (int k = lo; k < hi; ++k) {
      const auto g = detail::Givens<Real>::zeroing(h[k][k], h[k + 1][k]);
      rotations[k] = g;
      for (int j = k; j <= hi; ++j) {
        const C x = h[k][j], y = h[k + 1][j];
        h[k][j] = g.c * x + g.s * y;
        h[k + 1][j] = -std::conj(g.s) * x + g.c * y;
      }
      h[k + 1][k] = 0;
    }
    for (int k = lo; k < hi; ++k) {
      const auto& g = rotations[k];
      const int last = std::min(k + 2, hi);
      for (int i = lo; i <= last; ++i) {
        const C x = h[i][k], y = h[i][k + 1];
        h[i][k] = x * g.c + y * std::conj(g.s);
        h[i][k + 1] = -x * g.s + y * g.c;
      }
    }
    for (int i = lo; i <= hi; ++i) h[i][i] += shift;
  }
  return eig;
}

inline std::array<Complex, 4> eig4(const Matrix4c& m) { return hessenberg_qr_eigenvalues<double, 4>(m); }

// Eigenvalues (ascending) of a Hermitian matrix given row-major, computed with
// cyclic Jacobi sweeps on the equivalent real symmetric matrix
// [[Re, -Im], [Im, Re]], whose spectrum is that of the input with each
// eigenvalue doubled.
inline std::vector<double> hermitian_eigenvalues(const std::vector<Complex>& entries, std::size_t dim) {
  if (entries.size() != dim * dim) throw ArgumentError("matrix size does not match dimension");
  const std::size_t m = 2 * dim;
  std::vector<double> a(m * m);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * m + j]; };
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const Complex h = 0.5 * (entries[i * dim + j] + std::conj(entries[j * dim + i]));
      at(i, j) = h.real();
      at(i + dim, j + dim) = h.real();
      at(i, j + dim) = -h.imag();
      at(i + dim, j) = h.imag();
    }

  double total = 0.0;
  for (double x : a) total += x * x;
  const double threshold = 1e-30 * std::max(total, 1e-300);
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0;; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) off += at(i, j) * at(i, j);
    if (off <= threshold) break;
    if (sweep == kMaxSweeps) throw NumericalError("Jacobi eigenvalue sweeps did not converge");
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> diag(m);
  for (std::size_t i = 0; i < m; ++i) diag[i] = at(i, i);
  std::sort(diag.begin(), diag.end());
  std::vector<double> out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = 0.5 * (diag[2 * i] + diag[2 * i + 1]);
  return out;
}

}  // namespace entspec
