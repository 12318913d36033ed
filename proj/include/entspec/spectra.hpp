#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "bits.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "purity.hpp"
#include "state.hpp"

namespace entspec {

enum class FamilyKind {
  balanced,        // n_A = floor(n/2)
  all_sizes,       // every mask except 0 and the full mask
  fixed_size,      // n_A = subsystem_size
  max_unbalanced,  // n_A = 1
};

// A set of bipartitions. Complements are not merged: for even n the balanced
// family holds every unordered cut twice and has C(n, n/2) members.
struct BipartitionFamily {
  int n = 2;
  FamilyKind kind = FamilyKind::balanced;
  int subsystem_size = 0;  // fixed_size only

  static BipartitionFamily balanced(int n) { return {n, FamilyKind::balanced, 0}; }
  static BipartitionFamily all_sizes(int n) { return {n, FamilyKind::all_sizes, 0}; }
  static BipartitionFamily fixed_size(int n, int n_a) { return {n, FamilyKind::fixed_size, n_a}; }
  static BipartitionFamily max_unbalanced(int n) { return {n, FamilyKind::max_unbalanced, 0}; }

  void validate() const {
    if (n < 2) throw ArgumentError("a bipartition family needs at least 2 qubits");
    PureState::check_qubit_count(n);
    if (kind == FamilyKind::fixed_size && (subsystem_size < 1 || subsystem_size >= n))
      throw ArgumentError("fixed subsystem size must lie in [1, n-1]");
  }

  // Popcount of every mask in the family, or -1 for all sizes.
  int mask_popcount() const {
    switch (kind) {
      case FamilyKind::balanced: return n / 2;
      case FamilyKind::fixed_size: return subsystem_size;
      case FamilyKind::max_unbalanced: return 1;
      case FamilyKind::all_sizes: return -1;
    }
    return -1;
  }

  std::uint64_t size() const {
    const int k = mask_popcount();
    return k < 0 ? (std::uint64_t{1} << n) - 2 : binomial(n, k);
  }

  std::string name() const {
    switch (kind) {
      case FamilyKind::balanced: return "balanced";
      case FamilyKind::all_sizes: return "all";
      case FamilyKind::fixed_size: return "size:" + std::to_string(subsystem_size);
      case FamilyKind::max_unbalanced: return "max-unbalanced";
    }
    return "";
  }
};

// Masks of the family in ascending numeric order.
inline std::vector<Bipartition> enumerate_masks(const BipartitionFamily& family) {
  family.validate();
  std::vector<Bipartition> out;
  out.reserve(family.size());
  const int k = family.mask_popcount();
  const Mask full = low_bits(family.n);
  if (k < 0) {
    for (Mask m = 1; m < full; ++m) out.emplace_back(family.n, m);
    return out;
  }
  // Gosper's hack walks the k-subsets in increasing order.
  Mask m = low_bits(k);
  while (m <= full) {
    out.emplace_back(family.n, m);
    const Mask low = m & (~m + 1);
    const Mask ripple = m + low;
    if (ripple == 0) break;
    m = ripple | (((m ^ ripple) >> 2) / low);
  }
  return out;
}

struct DistributionEntry {
  Bipartition part;
  PurityResult result;
};

struct DistributionSummary {
  double mean = 0.0;
  double var_population = 0.0;
  double var_sample = 0.0;  // NaN when count == 1
  double std_population = 0.0;
  double std_sample = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

// Participation numbers over a bipartition family, p(N_AB) in empirical form.
struct EntanglementDistribution {
  BipartitionFamily family;
  std::vector<DistributionEntry> entries;
  double mean_participation = 0.0;
  double var_population = 0.0;
  double var_sample = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;

  std::vector<double> participations() const {
    std::vector<double> v;
    v.reserve(entries.size());
    for (const auto& e : entries) v.push_back(e.result.participation);
    return v;
  }
  std::vector<double> purities() const {
    std::vector<double> v;
    v.reserve(entries.size());
    for (const auto& e : entries) v.push_back(e.result.purity);
    return v;
  }
};

// Two-pass mean and variance of arbitrary values.
inline DistributionSummary summarize_values(const std::vector<double>& values) {
  if (values.empty()) throw ArgumentError("cannot summarize an empty distribution");
  DistributionSummary s;
  s.count = values.size();
  const double n = static_cast<double>(s.count);
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.var_population = ss / n;
  s.var_sample = s.count > 1 ? ss / (n - 1.0) : std::numeric_limits<double>::quiet_NaN();
  s.std_population = std::sqrt(s.var_population);
  s.std_sample = std::sqrt(s.var_sample);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

inline DistributionSummary summarize(const EntanglementDistribution& dist) { return summarize_values(dist.participations()); }

inline EntanglementDistribution make_distribution(const BipartitionFamily& family, std::vector<DistributionEntry> entries) {
  EntanglementDistribution d{family, std::move(entries)};
  if (d.entries.empty()) return d;
  const auto s = summarize(d);
  d.mean_participation = s.mean;
  d.var_population = s.var_population;
  d.var_sample = s.var_sample;
  d.min = s.min;
  d.max = s.max;
  d.count = s.count;
  return d;
}

// Evaluates purity over every mask of the family. Masks are split across
// workers; entries stay in canonical (ascending mask) order.
inline EntanglementDistribution compute_distribution(const PureState& state, const BipartitionFamily& family) {
  if (family.n != state.num_qubits()) throw ArgumentError("family qubit count does not match the state");
  const auto parts = enumerate_masks(family);
  std::vector<PurityResult> results(parts.size());
  parallel_for(parts.size(), [&](std::size_t i) { results[i] = purity(state, parts[i]); });
  std::vector<DistributionEntry> entries;
  entries.reserve(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) entries.push_back({parts[i], results[i]});
  return make_distribution(family, std::move(entries));
}

// ---------------------------------------------------------------------------
// Histograms

struct Binning {
  std::size_t bins = 50;           // equal-width bins for continuous data
  std::size_t max_discrete = 32;   // at most this many distinct values -> exact bars
  double distinct_tolerance = 1e-9;
};

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
  double density = 0.0;

  double center() const { return 0.5 * (lower + upper); }
  double width() const { return upper - lower; }
};

struct Histogram {
  bool discrete = false;
  std::vector<HistogramBin> bins;  // ascending, non-overlapping

  double mass() const {
    double m = 0.0;
    for (const auto& b : bins) m += b.density * b.width();
    return m;
  }
};

inline Histogram histogram_of(std::vector<double> values, const Binning& binning = {}) {
  if (values.empty()) throw ArgumentError("cannot histogram an empty distribution");
  if (binning.bins == 0) throw ArgumentError("bin count must be positive");
  std::sort(values.begin(), values.end());
  const double total = static_cast<double>(values.size());

  struct Group {
    double sum = 0.0;
    double first = 0.0;
    std::size_t count = 0;
  };
  std::vector<Group> groups;
  for (double v : values) {
    if (groups.empty() || v - groups.back().first > binning.distinct_tolerance) groups.push_back({0.0, v, 0});
    groups.back().sum += v;
    ++groups.back().count;
  }

  Histogram h;
  if (groups.size() <= binning.max_discrete) {
    h.discrete = true;
    // bars of equal width: the smallest gap between distinct values, at most 1
    double width = 1.0;
    for (std::size_t i = 1; i < groups.size(); ++i) {
      const double gap = groups[i].sum / groups[i].count - groups[i - 1].sum / groups[i - 1].count;
      width = std::min(width, gap);
    }
    for (const auto& g : groups) {
      const double c = g.sum / static_cast<double>(g.count);
      h.bins.push_back({c - 0.5 * width, c + 0.5 * width, g.count, static_cast<double>(g.count) / (total * width)});
    }
    return h;
  }

  const double lo = values.front(), hi = values.back();
  const double width = (hi - lo) / static_cast<double>(binning.bins);
  h.bins.resize(binning.bins);
  for (std::size_t i = 0; i < binning.bins; ++i) {
    h.bins[i].lower = lo + width * static_cast<double>(i);
    h.bins[i].upper = i + 1 == binning.bins ? hi : lo + width * static_cast<double>(i + 1);
  }
  for (double v : values) {
    auto idx = static_cast<std::size_t>((v - lo) / width);
    if (idx >= binning.bins) idx = binning.bins - 1;
    ++h.bins[idx].count;
  }
  for (auto& b : h.bins) b.density = static_cast<double>(b.count) / (total * b.width());
  return h;
}

inline Histogram histogram(const EntanglementDistribution& dist, const Binning& binning = {}) {
  return histogram_of(dist.participations(), binning);
}

}  // namespace entspec
