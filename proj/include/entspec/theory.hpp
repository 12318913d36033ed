#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "purity.hpp"
#include "state.hpp"

namespace entspec {

// Exact even moments of the uniform measure on the real unit sphere S^{N-1}:
//   E[prod_i x_i^{2 m_i}] = prod_i (2 m_i - 1)!! / prod_{j<M} (N + 2j),  M = sum m_i.
inline double sphere_moment(double dim, const std::vector<int>& exponents) {
  if (dim < 2) throw ArgumentError("sphere moments need N >= 2");
  int total = 0;
  double numerator = 1.0;
  for (int m : exponents) {
    if (m < 0) throw ArgumentError("moment exponents must be non-negative");
    for (int k = 2 * m - 1; k > 1; k -= 2) numerator *= k;
    total += m;
  }
  if (total < 1) throw ArgumentError("moment order must be at least 1");
  double denominator = 1.0;
  for (int j = 0; j < total; ++j) denominator *= dim + 2.0 * j;
  return numerator / denominator;
}

enum class MomentSource {
  exact_sphere,         // closed-form moments of the uniform sphere
  factorized_gaussian,  // independent moduli with E[r^{2m}] = (2m-1)!!/N^m
  delta,                // r_k^2 = 1/N for every k
};

inline std::string to_string(MomentSource s) {
  switch (s) {
    case MomentSource::exact_sphere: return "exact-sphere";
    case MomentSource::factorized_gaussian: return "factorized-gaussian";
    case MomentSource::delta: return "delta";
  }
  return "";
}

// Moments of the moduli r_k entering the mean and variance of the purity.
// Subscripts name the powers of distinct moduli, e.g. r1111 = E[r1^2 r2^2 r3^2 r4^2].
struct MomentProvider {
  double dim = 0;  // N
  MomentSource source = MomentSource::exact_sphere;
  double r11 = 0;    // E[r1^2 r2^2]
  double r2 = 0;     // E[r1^4]
  double r1111 = 0;  // E[r1^2 r2^2 r3^2 r4^2]
  double r112 = 0;   // E[r1^2 r2^2 r3^4]
  double r22 = 0;    // E[r1^4 r2^4]
  double r13 = 0;    // E[r1^2 r2^6]
  double r4 = 0;     // E[r1^8]

  static MomentProvider exact_sphere(double dim) {
    return {dim,
            MomentSource::exact_sphere,
            sphere_moment(dim, {1, 1}),
            sphere_moment(dim, {2}),
            sphere_moment(dim, {1, 1, 1, 1}),
            sphere_moment(dim, {1, 1, 2}),
            sphere_moment(dim, {2, 2}),
            sphere_moment(dim, {1, 3}),
            sphere_moment(dim, {4})};
  }

  static MomentProvider factorized_gaussian(double dim) {
    const double n2 = dim * dim, n4 = n2 * n2;
    return {dim, MomentSource::factorized_gaussian, 1 / n2, 3 / n2, 1 / n4, 3 / n4, 9 / n4, 15 / n4, 105 / n4};
  }

  static MomentProvider delta(double dim) {
    const double n2 = dim * dim, n4 = n2 * n2;
    return {dim, MomentSource::delta, 1 / n2, 1 / n2, 1 / n4, 1 / n4, 1 / n4, 1 / n4, 1 / n4};
  }

  static MomentProvider make(MomentSource source, double dim) {
    switch (source) {
      case MomentSource::exact_sphere: return exact_sphere(dim);
      case MomentSource::factorized_gaussian: return factorized_gaussian(dim);
      case MomentSource::delta: return delta(dim);
    }
    return delta(dim);
  }
};

// Gaussian law of the purity of a random state across a fixed cut.
struct GaussianModel {
  double mu = 0.0;
  double sigma2 = 0.0;
  double sigma() const { return std::sqrt(sigma2); }
};

struct PurityMomentTerms {
  double mean = 0.0;         // E[M] = E[pi]
  double mean_x2 = 0.0;      // E[X^2]
  double mean_m2 = 0.0;      // E[M^2]
};

// Mean, E[X^2] and E[M^2] of the purity for independent uniform phases,
// written term by term as a polynomial in N_A, N_B with the provider's moments.
inline PurityMomentTerms purity_moment_terms(double dim_a, double dim_b, const MomentProvider& m) {
  const double dim = dim_a * dim_b;
  if (std::abs(dim - m.dim) > 0.5) throw ArgumentError("N_A * N_B does not match the moment provider dimension");
  const double sum = dim_a + dim_b;
  PurityMomentTerms t;
  t.mean = dim * (sum - 2) * m.r11 + dim * m.r2;
  t.mean_x2 = 2 * dim * (dim_a - 1) * (dim_b - 1) * m.r1111;
  t.mean_m2 = dim * (sum - 2) * ((sum) * (dim - 4) - 2 * (dim - 5)) * m.r1111
            + 2 * dim * (sum - 2) * (dim + 2 * dim_a + 2 * dim_b - 8) * m.r112
            + dim * (dim + 2 * dim_a + 2 * dim_b - 5) * m.r22
            + 4 * dim * (sum - 2) * m.r13
            + dim * m.r4;
  return t;
}

inline GaussianModel exact_moments(double dim_a, double dim_b, const MomentProvider& moments) {
  const auto t = purity_moment_terms(dim_a, dim_b, moments);
  return {t.mean, t.mean_x2 + t.mean_m2 - t.mean * t.mean};
}

// Large-N limit: mu = (N_A + N_B - 1)/N, sigma^2 = 2/N^2.
inline GaussianModel asymptotic_model(double dim_a, double dim_b) {
  if (dim_a < 2 || dim_b < 2) throw ArgumentError("asymptotic model needs N_A, N_B >= 2");
  const double dim = dim_a * dim_b;
  return {(dim_a + dim_b - 1) / dim, 2.0 / (dim * dim)};
}

inline double purity_pdf(const GaussianModel& model, double x) {
  if (!(model.sigma2 > 0)) throw ArgumentError("Gaussian model needs a positive variance");
  const double d = x - model.mu;
  return std::exp(-d * d / (2 * model.sigma2)) / std::sqrt(2 * std::numbers::pi * model.sigma2);
}

// Density of N_AB = 1/pi_AB: p(y) = f(1/y) / y^2.
inline double participation_pdf(const GaussianModel& model, double y) {
  if (!(y > 0)) throw ArgumentError("participation number must be positive");
  return purity_pdf(model, 1.0 / y) / (y * y);
}

// N_AB of the n-qubit W state across a cut with n_A qubits in A.
inline double w_participation(int n, int n_a) {
  if (n_a < 1 || n_a >= n) throw ArgumentError("invalid W-state split");
  const double a = n_a, b = n - n_a;
  return static_cast<double>(n) * n / (a * a + b * b);
}

struct XMSplit {
  double x = 0.0;  // phase-carrying cross terms
  double m = 0.0;  // modulus-only terms
};

// Splits the purity into X (j != j' and l != l') and M (the rest) by summing
// over the polar form of the amplitudes. Reference routine; n <= 12.
inline XMSplit xm_split(const PureState& state, const Bipartition& part) {
  detail::check_matching(state, part);
  if (state.num_qubits() > 12) throw ArgumentError("X/M split is limited to 12 qubits");
  const auto a_off = submask_offsets(part.mask());
  const auto b_off = submask_offsets(part.complement_mask());
  const std::size_t na = a_off.size(), nb = b_off.size();
  std::vector<double> r(na * nb), phi(na * nb);
  for (std::size_t j = 0; j < na; ++j)
    for (std::size_t l = 0; l < nb; ++l) {
      const auto z = state[a_off[j] | b_off[l]];
      r[j * nb + l] = std::abs(z);
      phi[j * nb + l] = std::arg(z);
    }
  auto R = [&](std::size_t j, std::size_t l) { return r[j * nb + l]; };
  auto P = [&](std::size_t j, std::size_t l) { return phi[j * nb + l]; };

  XMSplit out;
  for (std::size_t j = 0; j < na; ++j)
    for (std::size_t jp = 0; jp < na; ++jp) {
      if (jp == j) continue;
      for (std::size_t l = 0; l < nb; ++l)
        for (std::size_t lp = 0; lp < nb; ++lp) {
          if (lp == l) continue;
          const double mod = R(j, l) * R(jp, l) * R(jp, lp) * R(j, lp);
          if (mod == 0.0) continue;
          out.x += mod * std::cos(P(j, l) - P(jp, l) + P(jp, lp) - P(j, lp));
        }
    }
  for (std::size_t j = 0; j < na; ++j)
    for (std::size_t jp = 0; jp < na; ++jp) {
      if (jp == j) continue;
      for (std::size_t l = 0; l < nb; ++l) out.m += R(j, l) * R(j, l) * R(jp, l) * R(jp, l);
    }
  for (std::size_t j = 0; j < na; ++j)
    for (std::size_t l = 0; l < nb; ++l)
      for (std::size_t lp = 0; lp < nb; ++lp) {
        if (lp == l) continue;
        out.m += R(j, l) * R(j, l) * R(j, lp) * R(j, lp);
      }
  for (double rk : r) out.m += rk * rk * rk * rk;
  return out;
}

// Folded marginal density of one modulus of a uniform point on S^{N-1}:
//   (2/sqrt(pi)) Gamma(N/2)/Gamma((N-1)/2) (1 - r^2)^{(N-3)/2}.
inline double marginal_amplitude_pdf(double dim, double r) {
  if (dim < 4) throw ArgumentError("marginal amplitude density needs N >= 4");
  if (!(r >= 0.0 && r <= 1.0)) throw ArgumentError("modulus must lie in [0, 1]");
  const double one_minus = 1.0 - r * r;
  if (one_minus <= 0.0) return 0.0;
  const double log_norm = std::log(2.0) - 0.5 * std::log(std::numbers::pi) + std::lgamma(0.5 * dim) - std::lgamma(0.5 * (dim - 1));
  return std::exp(log_norm + 0.5 * (dim - 3) * std::log(one_minus));
}

// Large-N Gaussian limit of marginal_amplitude_pdf: 2 sqrt(N/2pi) exp(-N r^2 / 2).
inline double marginal_amplitude_pdf_asymptotic(double dim, double r) {
  return 2.0 * std::sqrt(dim / (2 * std::numbers::pi)) * std::exp(-0.5 * dim * r * r);
}

// sigma/mu of the asymptotic model: sqrt(2)/(N_A + N_B - 1).
inline double concentration_ratio(double dim_a, double dim_b) {
  if (dim_a < 2 || dim_b < 2) throw ArgumentError("concentration ratio needs N_A, N_B >= 2");
  return std::numbers::sqrt2 / (dim_a + dim_b - 1);
}

}  // namespace entspec
