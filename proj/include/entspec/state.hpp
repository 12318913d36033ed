#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace entspec {

using Amplitude = std::complex<double>;

// Normalized pure state of n qubits. Basis index k = sum_j b_j 2^j, where b_j
// is the value of qubit j (qubit 0 is the least-significant bit).
class PureState {
 public:
  static constexpr int kMaxQubits = 26;
  static constexpr double kNormTolerance = 1e-12;

  PureState(int num_qubits, std::vector<Amplitude> amplitudes)
      : n_(num_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubit_count(n_);
    if (amplitudes_.size() != (std::size_t{1} << n_)) {
      throw ArgumentError("amplitude vector length " + std::to_string(amplitudes_.size()) +
                          " does not equal 2^" + std::to_string(n_));
    }
    const double norm2 = squared_norm(amplitudes_);
    if (!(std::abs(norm2 - 1.0) <= kNormTolerance)) {
      throw ArgumentError("state is not normalized: sum |z|^2 = " + std::to_string(norm2));
    }
  }

  // Rescales `amplitudes` to unit norm before construction.
  static PureState normalized(int num_qubits, std::vector<Amplitude> amplitudes) {
    const double norm = std::sqrt(squared_norm(amplitudes));
    if (!(norm > 0.0) || !std::isfinite(norm)) throw ArgumentError("cannot normalize a zero or non-finite vector");
    for (auto& z : amplitudes) z /= norm;
    return PureState(num_qubits, std::move(amplitudes));
  }

  static void check_qubit_count(int n) {
    if (n < 1) throw ArgumentError("qubit count must be at least 1");
    if (n > kMaxQubits) throw ArgumentError("qubit count " + std::to_string(n) + " exceeds the limit of 26");
  }

  int num_qubits() const { return n_; }
  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  const Amplitude& operator[](std::size_t k) const { return amplitudes_[k]; }

  friend bool operator==(const PureState&, const PureState&) = default;

 private:
  static double squared_norm(const std::vector<Amplitude>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return s;
  }

  int n_;
  std::vector<Amplitude> amplitudes_;
};

inline PureState make_basis(int n, std::uint64_t index) {
  PureState::check_qubit_count(n);
  const std::size_t dim = std::size_t{1} << n;
  if (index >= dim) throw ArgumentError("basis index " + std::to_string(index) + " out of range for " + std::to_string(n) + " qubits");
  std::vector<Amplitude> amps(dim);
  amps[index] = 1.0;
  return PureState(n, std::move(amps));
}

inline PureState make_ghz(int n) {
  if (n < 2) throw ArgumentError("GHZ state needs at least 2 qubits");
  PureState::check_qubit_count(n);
  std::vector<Amplitude> amps(std::size_t{1} << n);
  amps.front() = amps.back() = std::numbers::sqrt2 / 2.0;
  return PureState(n, std::move(amps));
}

inline PureState make_w(int n) {
  if (n < 2) throw ArgumentError("W state needs at least 2 qubits");
  PureState::check_qubit_count(n);
  std::vector<Amplitude> amps(std::size_t{1} << n);
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j) amps[std::size_t{1} << j] = a;
  return PureState(n, std::move(amps));
}

// One-dimensional cluster state with open ends. The amplitude of basis string b
// is 2^{-n/2} (-1)^{c(b)}, c(b) = #{k : b_k = 0 and b_{k+1} = 1}.
inline PureState make_cluster1d(int n) {
  if (n < 2) throw ArgumentError("cluster state needs at least 2 qubits");
  PureState::check_qubit_count(n);
  const std::size_t dim = std::size_t{1} << n;
  const double a = std::pow(2.0, -0.5 * n);
  const Mask inner = low_bits(n - 1);
  std::vector<Amplitude> amps(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const Mask b = static_cast<Mask>(k);
    const int flips = popcount(~b & (b >> 1) & inner);
    amps[k] = (flips & 1) ? -a : a;
  }
  return PureState(n, std::move(amps));
}

// Tensor product a (x) b; qubits of `a` keep positions 0..n_a-1, qubits of `b`
// move to n_a..n_a+n_b-1.
inline PureState make_product(const PureState& a, const PureState& b) {
  const int n = a.num_qubits() + b.num_qubits();
  if (n > PureState::kMaxQubits) throw ArgumentError("product state exceeds the 26-qubit limit");
  std::vector<Amplitude> amps(std::size_t{1} << n);
  const std::size_t da = a.dim();
  for (std::size_t hi = 0; hi < b.dim(); ++hi)
    for (std::size_t lo = 0; lo < da; ++lo) amps[hi * da + lo] = a[lo] * b[hi];
  return PureState::normalized(n, std::move(amps));
}

// Product of n/2 Bell pairs (|00>+|11>)/sqrt2 on qubits (0,1), (2,3), ...
inline PureState make_bell_pairs(int n) {
  if (n < 2 || n % 2 != 0) throw ArgumentError("Bell-pair product needs an even qubit count >= 2");
  PureState s = make_ghz(2);
  for (int k = 2; k < n; k += 2) s = make_product(s, make_ghz(2));
  return s;
}

// Applies the 2x2 unitary u = {u00, u01, u10, u11} (row-major) to `qubit`.
inline PureState apply_single_qubit(const PureState& s, int qubit, const std::array<Amplitude, 4>& u) {
  if (qubit < 0 || qubit >= s.num_qubits()) throw ArgumentError("qubit index out of range");
  std::vector<Amplitude> amps(s.amplitudes().begin(), s.amplitudes().end());
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t k = 0; k < amps.size(); ++k) {
    if (k & bit) continue;
    const Amplitude a0 = amps[k], a1 = amps[k | bit];
    amps[k] = u[0] * a0 + u[1] * a1;
    amps[k | bit] = u[2] * a0 + u[3] * a1;
  }
  return PureState::normalized(s.num_qubits(), std::move(amps));
}

// Relabels qubits: qubit j of `s` becomes qubit perm[j] of the result.
inline PureState permute_qubits(const PureState& s, std::span<const int> perm) {
  const int n = s.num_qubits();
  if (static_cast<int>(perm.size()) != n) throw ArgumentError("permutation length does not match qubit count");
  Mask seen = 0;
  for (int p : perm) {
    if (p < 0 || p >= n || (seen >> p) & 1u) throw ArgumentError("not a permutation of the qubit labels");
    seen |= Mask{1} << p;
  }
  std::vector<Amplitude> amps(s.dim());
  for (std::size_t k = 0; k < s.dim(); ++k) {
    std::size_t target = 0;
    for (int j = 0; j < n; ++j)
      if ((k >> j) & 1u) target |= std::size_t{1} << perm[j];
    amps[target] = s[k];
  }
  return PureState(n, std::move(amps));
}

// ---------------------------------------------------------------------------
// Random ensembles

enum class Ensemble {
  haar,          // complex Gaussian vector, normalized
  phase_sphere,  // moduli uniform on the real sphere, independent uniform phases
};

inline std::string to_string(Ensemble e) { return e == Ensemble::haar ? "haar" : "phase-sphere"; }

struct EnsembleSpec {
  Ensemble kind = Ensemble::haar;
  int n = 1;
  std::uint64_t seed = 0;
};

// Sample number `index` of the ensemble. Randomness is drawn from a stream
// keyed by (spec.seed, index) only.
inline PureState sample_state(const EnsembleSpec& spec, std::uint64_t index) {
  PureState::check_qubit_count(spec.n);
  const std::size_t dim = std::size_t{1} << spec.n;
  auto engine = make_sample_engine(spec.seed, index);
  std::normal_distribution<double> normal;
  std::vector<Amplitude> amps(dim);
  if (spec.kind == Ensemble::haar) {
    for (auto& z : amps) {
      const double re = normal(engine);
      const double im = normal(engine);
      z = {re, im};
    }
    return PureState::normalized(spec.n, std::move(amps));
  }
  std::vector<double> moduli(dim);
  double norm2 = 0.0;
  for (auto& r : moduli) {
    r = std::abs(normal(engine));
    norm2 += r * r;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  for (std::size_t k = 0; k < dim; ++k) amps[k] = std::polar(moduli[k] * inv, phase(engine));
  return PureState::normalized(spec.n, std::move(amps));
}

inline std::vector<PureState> sample_ensemble(const EnsembleSpec& spec, std::size_t count, std::uint64_t first_index = 0) {
  PureState::check_qubit_count(spec.n);
  std::vector<PureState> out(count, make_basis(spec.n, 0));
  parallel_for(count, [&](std::size_t i) { out[i] = sample_state(spec, first_index + i); });
  return out;
}

inline std::vector<PureState> sample_haar(const EnsembleSpec& spec, std::size_t count) {
  if (spec.kind != Ensemble::haar) throw ArgumentError("sample_haar requires a haar ensemble spec");
  return sample_ensemble(spec, count);
}

inline std::vector<PureState> sample_phase_sphere(const EnsembleSpec& spec, std::size_t count) {
  if (spec.kind != Ensemble::phase_sphere) throw ArgumentError("sample_phase_sphere requires a phase-sphere ensemble spec");
  return sample_ensemble(spec, count);
}

}  // namespace entspec
