#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "measures.hpp"
#include "spectra.hpp"
#include "state.hpp"

namespace entspec::io {

using json = nlohmann::ordered_json;

// Full double precision, 17 significant digits.
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_mask(Mask m) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%x", static_cast<unsigned>(m));
  return buf;
}

// ---- state file: {"n": int, "amplitudes": [[re, im], ...]}

inline json state_to_json(const PureState& s) {
  json amps = json::array();
  for (const auto& z : s.amplitudes()) amps.push_back({z.real(), z.imag()});
  return {{"n", s.num_qubits()}, {"amplitudes", std::move(amps)}};
}

inline PureState state_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    const auto& raw = j.at("amplitudes");
    if (!raw.is_array()) throw ArgumentError("state file: amplitudes must be an array");
    std::vector<Amplitude> amps;
    amps.reserve(raw.size());
    for (const auto& pair : raw) {
      if (!pair.is_array() || pair.size() != 2) throw ArgumentError("state file: each amplitude must be [re, im]");
      amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return PureState(n, std::move(amps));
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("state file: ") + e.what());
  }
}

inline void write_state(std::ostream& os, const PureState& s) { os << state_to_json(s).dump() << '\n'; }

inline PureState read_state(std::istream& is) {
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("state file: ") + e.what());
  }
  return state_from_json(j);
}

// ---- spectrum CSV: mask_hex,n_A,purity,participation

inline void write_spectrum_csv(std::ostream& os, const EntanglementDistribution& dist) {
  os << "mask_hex,n_A,purity,participation\n";
  for (const auto& e : dist.entries) {
    os << format_mask(e.part.mask()) << ',' << e.part.size_a() << ',' << format_double(e.result.purity) << ','
       << format_double(e.result.participation) << '\n';
  }
}

// ---- summary JSON

inline json summary_to_json(const EntanglementDistribution& dist) {
  auto nullable = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  return {{"n", dist.family.n},
          {"family", dist.family.name()},
          {"count", dist.count},
          {"mean_participation", dist.mean_participation},
          {"var_population", dist.var_population},
          {"var_sample", nullable(dist.var_sample)},
          {"min", dist.min},
          {"max", dist.max}};
}

// ---- histogram TSV: bin_center<TAB>density<TAB>count

inline void write_histogram_tsv(std::ostream& os, const Histogram& h) {
  for (const auto& b : h.bins) os << format_double(b.center()) << '\t' << format_double(b.density) << '\t' << b.count << '\n';
}

// ---- theory curve TSV: x<TAB>density

inline void write_curve_tsv(std::ostream& os, const std::vector<std::pair<double, double>>& curve) {
  for (const auto& [x, y] : curve) os << format_double(x) << '\t' << format_double(y) << '\n';
}

// ---- measures JSON

inline json measures_to_json(const TangleReport& rep) {
  json ratio = json::array();
  for (const auto& r : rep.ratio) ratio.push_back(r ? json(*r) : json(nullptr));
  return {{"n", rep.n}, {"Q", rep.q}, {"tau1", rep.tau1}, {"tau2", rep.tau2}, {"R", std::move(ratio)}, {"concurrence", rep.concurrence}};
}

}  // namespace entspec::io
