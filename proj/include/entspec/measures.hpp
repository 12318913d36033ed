#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "purity.hpp"
#include "spectra.hpp"
#include "state.hpp"

namespace entspec {

// Q = 2 (1 - mean single-qubit purity), the mean over the max-unbalanced family.
inline double q_measure(const PureState& state) {
  if (state.num_qubits() < 2) throw ArgumentError("Q needs at least 2 qubits");
  const auto dist = compute_distribution(state, BipartitionFamily::max_unbalanced(state.num_qubits()));
  double sum = 0.0;
  for (const auto& e : dist.entries) sum += e.result.purity;
  return 2.0 * (1.0 - sum / static_cast<double>(dist.entries.size()));
}

struct ConcurrenceResult {
  double value = 0.0;
  std::array<double, 4> lambdas{};  // decreasing
};

namespace detail {

inline void check_qubit(const PureState& state, int q) {
  if (q < 0 || q >= state.num_qubits()) throw ArgumentError("qubit index out of range");
}

// sigma_y (x) sigma_y in the two-qubit computational basis.
inline Matrix4c spin_flip() {
  Matrix4c y{};
  y[0][3] = -1.0;
  y[1][2] = 1.0;
  y[2][1] = 1.0;
  y[3][0] = -1.0;
  return y;
}

}  // namespace detail

// Wootters concurrence of the two-qubit reduction on qubits i and j.
inline ConcurrenceResult concurrence(const PureState& state, int i, int j) {
  detail::check_qubit(state, i);
  detail::check_qubit(state, j);
  if (i == j) throw ArgumentError("concurrence needs two distinct qubits");
  if (state.num_qubits() < 2) throw ArgumentError("concurrence needs at least 2 qubits");

  // R is formed and diagonalized in extended precision: its vanishing
  // eigenvalues carry rounding error e, and sqrt(e) would dominate C.
  using Extended = long double;
  ComplexMatrix<Extended, 4> rho{}, rho_conj{}, flip{};
  if (state.num_qubits() == 2) {
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) {
        const std::complex<Extended> za(state[a].real(), state[a].imag()), zb(state[b].real(), state[b].imag());
        rho[a][b] = za * std::conj(zb);
      }
  } else {
    const auto reduced = reduced_density(state, Bipartition(state.num_qubits(), (Mask{1} << i) | (Mask{1} << j)));
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) rho[a][b] = {reduced(a, b).real(), reduced(a, b).imag()};
  }
  const auto y = detail::spin_flip();
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      rho_conj[a][b] = std::conj(rho[a][b]);
      flip[a][b] = y[a][b].real();
    }

  const auto r = multiply(multiply(rho, flip), multiply(rho_conj, flip));
  const auto eig = hessenberg_qr_eigenvalues<Extended, 4>(r);

  ConcurrenceResult out;
  for (std::size_t k = 0; k < 4; ++k) out.lambdas[k] = static_cast<double>(std::sqrt(std::max<Extended>(0, eig[k].real())));
  std::sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>());
  out.value = std::max(0.0, out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3]);
  return out;
}

// tau_1 = 4 det rho_i = 2 (1 - Tr rho_i^2).
inline double tangle1(const PureState& state, int i) {
  detail::check_qubit(state, i);
  if (state.num_qubits() < 2) throw ArgumentError("tangle needs at least 2 qubits");
  return 2.0 * (1.0 - purity(state, Bipartition(state.num_qubits(), Mask{1} << i)).purity);
}

inline constexpr double kUndefinedRatioThreshold = 1e-12;

struct PairwiseTangle {
  double tau2 = 0.0;
  std::optional<double> ratio;  // tau2 / tau1; empty when tau1 < 1e-12
};

inline PairwiseTangle tangle2_and_R(const PureState& state, int i) {
  detail::check_qubit(state, i);
  if (state.num_qubits() < 2) throw ArgumentError("tangle needs at least 2 qubits");
  PairwiseTangle out;
  for (int j = 0; j < state.num_qubits(); ++j) {
    if (j == i) continue;
    const double c = concurrence(state, i, j).value;
    out.tau2 += c * c;
  }
  const double tau1 = tangle1(state, i);
  if (tau1 >= kUndefinedRatioThreshold) out.ratio = out.tau2 / tau1;
  return out;
}

// Per-qubit tangles plus all pairwise concurrences of one state.
struct TangleReport {
  int n = 0;
  double q = 0.0;
  std::vector<double> tau1;
  std::vector<double> tau2;
  std::vector<std::optional<double>> ratio;
  std::vector<double> concurrence;  // upper triangle, row-major: (0,1), (0,2), ..., (n-2,n-1)

  double pair(int i, int j) const {
    if (i > j) std::swap(i, j);
    const std::size_t row_start = static_cast<std::size_t>(i) * (2 * n - i - 1) / 2;
    return concurrence[row_start + static_cast<std::size_t>(j - i - 1)];
  }
};

inline TangleReport tangle_report(const PureState& state) {
  const int n = state.num_qubits();
  if (n < 2) throw ArgumentError("tangle report needs at least 2 qubits");
  TangleReport rep;
  rep.n = n;
  rep.q = q_measure(state);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  rep.concurrence.resize(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) { rep.concurrence[k] = concurrence(state, pairs[k].first, pairs[k].second).value; });
  rep.tau1.resize(n);
  rep.tau2.assign(n, 0.0);
  rep.ratio.resize(n);
  for (int i = 0; i < n; ++i) {
    rep.tau1[i] = tangle1(state, i);
    for (int j = 0; j < n; ++j)
      if (j != i) rep.tau2[i] += rep.pair(i, j) * rep.pair(i, j);
    if (rep.tau1[i] >= kUndefinedRatioThreshold) rep.ratio[i] = rep.tau2[i] / rep.tau1[i];
  }
  return rep;
}

}  // namespace entspec
