#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bits.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "state.hpp"

namespace entspec {

// Split of n qubits into A (set bits of `mask`) and B (the rest).
class Bipartition {
 public:
  Bipartition(int n, Mask mask) : n_(n), mask_(mask) {
    PureState::check_qubit_count(n);
    if ((mask & ~low_bits(n)) != 0) throw ArgumentError("mask has bits beyond qubit " + std::to_string(n - 1));
    const int na = popcount(mask);
    if (na == 0 || na == n) throw ArgumentError("both subsystems of a bipartition must be non-empty");
  }

  int num_qubits() const { return n_; }
  Mask mask() const { return mask_; }
  Mask complement_mask() const { return ~mask_ & low_bits(n_); }
  int size_a() const { return popcount(mask_); }
  int size_b() const { return n_ - size_a(); }
  std::size_t dim_a() const { return std::size_t{1} << size_a(); }
  std::size_t dim_b() const { return std::size_t{1} << size_b(); }

  friend bool operator==(const Bipartition&, const Bipartition&) = default;

 private:
  int n_;
  Mask mask_;
};

inline Bipartition complement(const Bipartition& part) { return Bipartition(part.num_qubits(), part.complement_mask()); }

// rho_A, a dim x dim complex matrix stored row-major.
struct ReducedDensity {
  std::size_t dim = 0;
  std::vector<Complex> entries;

  const Complex& operator()(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }

  Complex trace() const {
    Complex t{};
    for (std::size_t i = 0; i < dim; ++i) t += (*this)(i, i);
    return t;
  }

  double purity() const {
    double s = 0.0;
    for (const auto& x : entries) s += std::norm(x);
    return s;
  }

  bool is_hermitian(double tol = 1e-12) const {
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i; j < dim; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
  }

  std::vector<double> eigenvalues() const { return hermitian_eigenvalues(entries, dim); }

  // Hermitian within 1e-12, unit trace within 1e-12, smallest eigenvalue >= -1e-10.
  bool satisfies_invariants() const {
    if (!is_hermitian(1e-12)) return false;
    if (std::abs(trace() - Complex{1.0}) > 1e-12) return false;
    return eigenvalues().front() >= -1e-10;
  }
};

struct PurityResult {
  double purity = 1.0;           // Tr rho_A^2
  double participation = 1.0;    // 1 / purity
  double effective_spins = 0.0;  // log2(participation)

  static PurityResult from_purity(double p) { return {p, 1.0 / p, std::log2(1.0 / p)}; }
};

namespace detail {

inline void check_matching(const PureState& state, const Bipartition& part) {
  if (state.num_qubits() != part.num_qubits()) {
    throw ArgumentError("bipartition is over " + std::to_string(part.num_qubits()) + " qubits but the state has " +
                        std::to_string(state.num_qubits()));
  }
}

// Z[j][l] = z_k with k = deposit(j, rows) | deposit(l, ~rows), split into real
// and imaginary planes, row-major.
struct CoefficientMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> re, im;

  CoefficientMatrix(const PureState& state, Mask row_mask, Mask col_mask) {
    const auto row_off = submask_offsets(row_mask);
    const auto col_off = submask_offsets(col_mask);
    rows = row_off.size();
    cols = col_off.size();
    re.resize(rows * cols);
    im.resize(rows * cols);
    const auto amps = state.amplitudes();
    for (std::size_t j = 0; j < rows; ++j)
      for (std::size_t l = 0; l < cols; ++l) {
        const Complex z = amps[row_off[j] | col_off[l]];
        re[j * cols + l] = z.real();
        im[j * cols + l] = z.imag();
      }
  }

  // (Z Z^dagger)[a][b]
  Complex gram(std::size_t a, std::size_t b) const {
    const double* ar = &re[a * cols];
    const double* ai = &im[a * cols];
    const double* br = &re[b * cols];
    const double* bi = &im[b * cols];
    double sr = 0.0, si = 0.0;
    for (std::size_t l = 0; l < cols; ++l) {
      sr += ar[l] * br[l] + ai[l] * bi[l];
      si += ai[l] * br[l] - ar[l] * bi[l];
    }
    return {sr, si};
  }
};

}  // namespace detail

// rho_A = Z Z^dagger, rows indexed by the compaction of k onto the mask bits.
inline ReducedDensity reduced_density(const PureState& state, const Bipartition& part) {
  detail::check_matching(state, part);
  const detail::CoefficientMatrix z(state, part.mask(), part.complement_mask());
  ReducedDensity rho{z.rows, std::vector<Complex>(z.rows * z.rows)};
  for (std::size_t a = 0; a < z.rows; ++a)
    for (std::size_t b = a; b < z.rows; ++b) {
      const Complex g = z.gram(a, b);
      rho.entries[a * z.rows + b] = g;
      rho.entries[b * z.rows + a] = std::conj(g);
    }
  for (std::size_t a = 0; a < z.rows; ++a) rho.entries[a * z.rows + a].imag(0.0);
  return rho;
}

// Tr rho_A^2 as the squared Frobenius norm of the Gram matrix of the smaller
// side; costs O(min(N_A, N_B)^2 max(N_A, N_B)) and never forms rho.
inline PurityResult purity(const PureState& state, const Bipartition& part) {
  detail::check_matching(state, part);
  Mask rows = part.mask(), cols = part.complement_mask();
  if (part.size_a() > part.size_b()) std::swap(rows, cols);
  const detail::CoefficientMatrix z(state, rows, cols);
  double diag = 0.0, off = 0.0;
  for (std::size_t a = 0; a < z.rows; ++a) {
    diag += std::norm(z.gram(a, a));
    for (std::size_t b = a + 1; b < z.rows; ++b) off += std::norm(z.gram(a, b));
  }
  // 1/rank <= Tr rho^2 <= 1 holds exactly; clamp away last-bit rounding
  const double floor = 1.0 / static_cast<double>(z.rows);
  return PurityResult::from_purity(std::clamp(diag + 2.0 * off, floor, 1.0));
}

// Literal quadruple sum over (j, j', l, l'). Reference implementation; n <= 12.
inline double purity_quadruple_sum(const PureState& state, const Bipartition& part) {
  detail::check_matching(state, part);
  if (state.num_qubits() > 12) throw ArgumentError("quadruple-sum purity is limited to 12 qubits");
  const auto a_off = submask_offsets(part.mask());
  const auto b_off = submask_offsets(part.complement_mask());
  const auto z = state.amplitudes();
  Complex total{};
  for (std::size_t j = 0; j < a_off.size(); ++j)
    for (std::size_t jp = 0; jp < a_off.size(); ++jp)
      for (std::size_t l = 0; l < b_off.size(); ++l)
        for (std::size_t lp = 0; lp < b_off.size(); ++lp) {
          total += z[a_off[j] | b_off[l]] * std::conj(z[a_off[jp] | b_off[l]]) * z[a_off[jp] | b_off[lp]] *
                   std::conj(z[a_off[j] | b_off[lp]]);
        }
  return total.real();
}

}  // namespace entspec
