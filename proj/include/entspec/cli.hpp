#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "error.hpp"
#include "io.hpp"
#include "measures.hpp"
#include "purity.hpp"
#include "spectra.hpp"
#include "state.hpp"
#include "theory.hpp"

namespace entspec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitArgument = 2;
inline constexpr int kExitNumerical = 3;

// Where a subcommand gets its state from: a named constructor or a state file.
struct StateSource {
  std::string kind;
  int n = 0;
  std::uint64_t index = 0;         // basis
  std::optional<std::uint64_t> seed;  // haar, phase-sphere
  std::uint64_t sample_index = 0;
  std::string file;
};

struct RunConfig {
  std::string subcommand;
  StateSource source;
  std::string family = "balanced";
  std::string mask;
  std::string format;
  std::string output;
  std::size_t bins = 50;
  // sample
  std::string ensemble = "haar";
  int n = 0;
  std::size_t count = 0;
  std::optional<std::uint64_t> seed;
  // theory
  std::optional<int> n_a;
  std::string pdf = "participation";
  std::string model = "asymptotic";
  std::size_t points = 401;
  std::optional<double> range_from, range_to;
  // table1
  int nmin = 5, nmax = 12;
  std::optional<std::uint64_t> haar_seed;
};

inline Mask parse_mask(const std::string& text) {
  std::string digits = text;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) digits = digits.substr(2);
  if (digits.empty() || digits.size() > 8 || digits.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos)
    throw ArgumentError("bad mask '" + text + "': expected hexadecimal such as 0x3");
  return static_cast<Mask>(std::stoul(digits, nullptr, 16));
}

inline BipartitionFamily parse_family(const std::string& text, int n) {
  if (text == "balanced") return BipartitionFamily::balanced(n);
  if (text == "all") return BipartitionFamily::all_sizes(n);
  if (text == "max-unbalanced") return BipartitionFamily::max_unbalanced(n);
  if (text.rfind("size:", 0) == 0) {
    try {
      return BipartitionFamily::fixed_size(n, std::stoi(text.substr(5)));
    } catch (const std::logic_error&) {
    }
  }
  throw ArgumentError("unknown family '" + text + "': use balanced, all, max-unbalanced or size:K");
}

inline Ensemble parse_ensemble(const std::string& text) {
  if (text == "haar") return Ensemble::haar;
  if (text == "phase-sphere") return Ensemble::phase_sphere;
  throw ArgumentError("unknown ensemble '" + text + "'");
}

inline PureState load_state(const StateSource& src) {
  if (!src.file.empty()) {
    if (!src.kind.empty()) throw ArgumentError("give either --state or --kind, not both");
    std::ifstream in(src.file);
    if (!in) throw ArgumentError("cannot open state file '" + src.file + "'");
    return io::read_state(in);
  }
  if (src.kind.empty()) throw ArgumentError("a state source is required: --kind K --n N or --state FILE");
  if (src.n < 1) throw ArgumentError("--n is required with --kind");
  if (src.kind == "basis") return make_basis(src.n, src.index);
  if (src.kind == "ghz") return make_ghz(src.n);
  if (src.kind == "w") return make_w(src.n);
  if (src.kind == "cluster") return make_cluster1d(src.n);
  if (src.kind == "bell-pairs") return make_bell_pairs(src.n);
  if (src.kind == "haar" || src.kind == "phase-sphere") {
    if (!src.seed) throw ArgumentError("--seed is required for random states");
    return sample_state({parse_ensemble(src.kind), src.n, *src.seed}, src.sample_index);
  }
  throw ArgumentError("unknown state kind '" + src.kind + "'");
}

namespace detail {

inline void add_state_options(CLI::App* sub, StateSource& src) {
  sub->add_option("--kind", src.kind, "basis | ghz | w | cluster | bell-pairs | haar | phase-sphere");
  sub->add_option("--n", src.n, "qubit count");
  sub->add_option("--index", src.index, "basis index (kind basis)");
  sub->add_option("--seed", src.seed, "ensemble seed (kind haar, phase-sphere)");
  sub->add_option("--sample-index", src.sample_index, "sample number within the seeded ensemble");
  sub->add_option("--state", src.file, "state JSON file");
}

// Writes through `sink` either to the file given by --output or to `out`.
template <typename Sink>
void emit(const std::string& path, std::ostream& out, Sink&& sink) {
  if (path.empty() || path == "-") {
    sink(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ArgumentError("cannot open output file '" + path + "'");
  sink(file);
  if (!file) throw ArgumentError("failed writing output file '" + path + "'");
}

inline std::vector<std::pair<double, double>> theory_curve(const RunConfig& cfg) {
  if (cfg.n < 2) throw ArgumentError("--n must be at least 2");
  const int n_a = cfg.n_a.value_or(cfg.n / 2);
  if (n_a < 1 || n_a >= cfg.n) throw ArgumentError("--nA must lie in [1, n-1]");
  const double dim_a = std::ldexp(1.0, n_a), dim_b = std::ldexp(1.0, cfg.n - n_a);
  GaussianModel model;
  if (cfg.model == "asymptotic") {
    model = asymptotic_model(dim_a, dim_b);
  } else {
    MomentSource src;
    if (cfg.model == "exact-sphere") src = MomentSource::exact_sphere;
    else if (cfg.model == "factorized-gaussian") src = MomentSource::factorized_gaussian;
    else if (cfg.model == "delta") src = MomentSource::delta;
    else throw ArgumentError("unknown model '" + cfg.model + "'");
    model = exact_moments(dim_a, dim_b, MomentProvider::make(src, dim_a * dim_b));
  }
  if (!(model.sigma2 > 0)) throw NumericalError("model variance is not positive");
  if (cfg.points < 2) throw ArgumentError("--points must be at least 2");

  const double s = model.sigma();
  const bool participation = cfg.pdf == "participation";
  if (!participation && cfg.pdf != "purity") throw ArgumentError("unknown pdf '" + cfg.pdf + "'");
  double lo, hi;
  if (participation) {
    lo = 1.0 / (model.mu + 8 * s);
    hi = model.mu - 8 * s > 0 ? 1.0 / (model.mu - 8 * s) : 2.0 / model.mu;
  } else {
    lo = model.mu - 8 * s;
    hi = model.mu + 8 * s;
  }
  lo = cfg.range_from.value_or(lo);
  hi = cfg.range_to.value_or(hi);
  if (!(hi > lo)) throw ArgumentError("empty plotting range");
  if (participation && lo <= 0) throw ArgumentError("participation range must be positive");

  std::vector<std::pair<double, double>> curve;
  curve.reserve(cfg.points);
  for (std::size_t i = 0; i < cfg.points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(cfg.points - 1);
    curve.emplace_back(x, participation ? participation_pdf(model, x) : purity_pdf(model, x));
  }
  return curve;
}

inline void run_sample(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.seed) throw ArgumentError("--seed is required for sampling");
  if (cfg.n < 2) throw ArgumentError("--n must be at least 2");
  if (cfg.count == 0) throw ArgumentError("--count must be positive");
  const EnsembleSpec spec{parse_ensemble(cfg.ensemble), cfg.n, *cfg.seed};
  const bool per_mask = !cfg.mask.empty();
  const std::string format = cfg.format.empty() ? "csv" : cfg.format;
  if (format != "csv" && format != "json") throw ArgumentError("sample supports --format csv or json");

  std::optional<Bipartition> part;
  std::optional<BipartitionFamily> family;
  if (per_mask) part.emplace(cfg.n, parse_mask(cfg.mask));
  else family = parse_family(cfg.family, cfg.n);
  if (family) family->validate();

  // one row per sample: purity and participation on the mask, or the family summary
  std::vector<DistributionSummary> family_rows(per_mask ? 0 : cfg.count);
  std::vector<PurityResult> mask_rows(per_mask ? cfg.count : 0);
  std::vector<double> family_mean_purity(per_mask ? 0 : cfg.count);
  parallel_for(cfg.count, [&](std::size_t i) {
    const auto state = sample_state(spec, i);
    if (per_mask) {
      mask_rows[i] = purity(state, *part);
    } else {
      const auto dist = compute_distribution(state, *family);
      family_rows[i] = summarize(dist);
      const auto p = dist.purities();
      family_mean_purity[i] = std::accumulate(p.begin(), p.end(), 0.0) / static_cast<double>(p.size());
    }
  });

  std::vector<double> purities, participations;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    purities.push_back(per_mask ? mask_rows[i].purity : family_mean_purity[i]);
    participations.push_back(per_mask ? mask_rows[i].participation : family_rows[i].mean);
  }

  if (format == "csv") {
    if (per_mask) {
      out << "sample,purity,participation\n";
      for (std::size_t i = 0; i < cfg.count; ++i)
        out << i << ',' << io::format_double(mask_rows[i].purity) << ',' << io::format_double(mask_rows[i].participation) << '\n';
    } else {
      out << "sample,mean_participation,var_population,var_sample,min,max\n";
      for (std::size_t i = 0; i < cfg.count; ++i) {
        const auto& s = family_rows[i];
        out << i << ',' << io::format_double(s.mean) << ',' << io::format_double(s.var_population) << ','
            << io::format_double(s.var_sample) << ',' << io::format_double(s.min) << ',' << io::format_double(s.max) << '\n';
      }
    }
    return;
  }
  const auto ps = summarize_values(purities);
  const auto ns = summarize_values(participations);
  auto nullable = [](double x) { return std::isfinite(x) ? io::json(x) : io::json(nullptr); };
  io::json j = {{"n", cfg.n},
                {"ensemble", to_string(spec.kind)},
                {"seed", *cfg.seed},
                {"count", cfg.count},
                {"target", per_mask ? io::format_mask(part->mask()) : family->name()},
                {"mean_purity", ps.mean},
                {"var_purity", nullable(ps.var_sample)},
                {"mean_participation", ns.mean},
                {"var_participation", nullable(ns.var_sample)}};
  out << j.dump(2) << '\n';
}

inline void run_table1(const RunConfig& cfg, std::ostream& out) {
  if (cfg.nmin < 2 || cfg.nmax < cfg.nmin || cfg.nmax > PureState::kMaxQubits)
    throw ArgumentError("need 2 <= nmin <= nmax <= 26");
  out << "n,ghz,w,cluster,random";
  if (cfg.haar_seed) out << ",haar";
  out << '\n';
  for (int n = cfg.nmin; n <= cfg.nmax; ++n) {
    const auto family = BipartitionFamily::balanced(n);
    const int n_a = n / 2;
    const auto random = asymptotic_model(std::ldexp(1.0, n_a), std::ldexp(1.0, n - n_a));
    out << n << ',' << io::format_double(compute_distribution(make_ghz(n), family).mean_participation) << ','
        << io::format_double(compute_distribution(make_w(n), family).mean_participation) << ','
        << io::format_double(compute_distribution(make_cluster1d(n), family).mean_participation) << ','
        << io::format_double(1.0 / random.mu);
    if (cfg.haar_seed) {
      const auto state = sample_state({Ensemble::haar, n, *cfg.haar_seed}, 0);
      out << ',' << io::format_double(compute_distribution(state, family).mean_participation);
    }
    out << '\n';
  }
}

inline void dispatch(const RunConfig& cfg, std::ostream& out) {
  const std::string& cmd = cfg.subcommand;
  if (cmd == "state") {
    const auto s = load_state(cfg.source);
    emit(cfg.output, out, [&](std::ostream& os) { io::write_state(os, s); });
  } else if (cmd == "purity") {
    const auto s = load_state(cfg.source);
    const Bipartition part(s.num_qubits(), parse_mask(cfg.mask));
    const auto r = purity(s, part);
    io::json j = {{"n", s.num_qubits()},
                  {"mask", io::format_mask(part.mask())},
                  {"n_A", part.size_a()},
                  {"purity", r.purity},
                  {"participation", r.participation},
                  {"effective_spins", r.effective_spins}};
    emit(cfg.output, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  } else if (cmd == "spectrum") {
    const auto s = load_state(cfg.source);
    const auto dist = compute_distribution(s, parse_family(cfg.family, s.num_qubits()));
    const std::string format = cfg.format.empty() ? "csv" : cfg.format;
    emit(cfg.output, out, [&](std::ostream& os) {
      if (format == "csv") io::write_spectrum_csv(os, dist);
      else if (format == "json") os << io::summary_to_json(dist).dump(2) << '\n';
      else io::write_histogram_tsv(os, histogram(dist, Binning{cfg.bins}));
    });
  } else if (cmd == "sample") {
    std::ostringstream buffer;
    run_sample(cfg, buffer);
    emit(cfg.output, out, [&](std::ostream& os) { os << buffer.str(); });
  } else if (cmd == "theory") {
    const auto curve = theory_curve(cfg);
    emit(cfg.output, out, [&](std::ostream& os) { io::write_curve_tsv(os, curve); });
  } else if (cmd == "measures") {
    const auto s = load_state(cfg.source);
    const auto rep = tangle_report(s);
    emit(cfg.output, out, [&](std::ostream& os) { os << io::measures_to_json(rep).dump(2) << '\n'; });
  } else if (cmd == "table1") {
    std::ostringstream buffer;
    run_table1(cfg, buffer);
    emit(cfg.output, out, [&](std::ostream& os) { os << buffer.str(); });
  } else {
    throw ArgumentError("unknown subcommand");
  }
}

}  // namespace detail

// Parses `args` (without the program name) and runs the chosen subcommand.
// Returns 0 on success, 2 on argument errors, 3 on numerical failure.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bipartite purity distributions of multi-qubit pure states", "entspec"};
  app.require_subcommand(1);
  RunConfig cfg;
  const std::vector<std::string> formats = {"csv", "json", "tsv"};

  auto* state = app.add_subcommand("state", "write a state file");
  detail::add_state_options(state, cfg.source);

  auto* pur = app.add_subcommand("purity", "purity and participation number for one bipartition");
  detail::add_state_options(pur, cfg.source);
  pur->add_option("--mask", cfg.mask, "hex mask of subsystem A, e.g. 0x3")->required();

  auto* spec = app.add_subcommand("spectrum", "participation numbers over a bipartition family");
  detail::add_state_options(spec, cfg.source);
  spec->add_option("--family", cfg.family, "balanced | all | max-unbalanced | size:K");
  spec->add_option("--format", cfg.format, "csv (rows), json (summary), tsv (histogram)")->check(CLI::IsMember(formats));
  spec->add_option("--bins", cfg.bins, "equal-width bins for continuous histograms")->check(CLI::PositiveNumber);

  auto* sample = app.add_subcommand("sample", "random-state Monte Carlo");
  sample->add_option("--ensemble", cfg.ensemble, "haar | phase-sphere");
  sample->add_option("--n", cfg.n, "qubit count")->required();
  sample->add_option("--count", cfg.count, "number of samples")->required();
  sample->add_option("--seed", cfg.seed, "ensemble seed")->required();
  auto* sample_mask = sample->add_option("--mask", cfg.mask, "per-sample purity on this mask");
  sample->add_option("--family", cfg.family, "per-sample spectrum summary over this family")->excludes(sample_mask);
  sample->add_option("--format", cfg.format, "csv (rows) or json (summary)")->check(CLI::IsMember(formats));

  auto* theory = app.add_subcommand("theory", "Gaussian purity or participation-number density curve");
  theory->add_option("--n", cfg.n, "qubit count")->required();
  theory->add_option("--nA", cfg.n_a, "qubits in A (default floor(n/2))");
  theory->add_option("--pdf", cfg.pdf, "purity | participation");
  theory->add_option("--model", cfg.model, "asymptotic | exact-sphere | factorized-gaussian | delta");
  theory->add_option("--points", cfg.points, "number of grid points");
  theory->add_option("--from", cfg.range_from, "range start (default: mean -/+ 8 sigma)");
  theory->add_option("--to", cfg.range_to, "range end");

  auto* meas = app.add_subcommand("measures", "Q, concurrences, tangles and R");
  detail::add_state_options(meas, cfg.source);

  auto* table = app.add_subcommand("table1", "mean participation of GHZ, W, cluster and random states");
  table->add_option("--nmin", cfg.nmin, "smallest n");
  table->add_option("--nmax", cfg.nmax, "largest n");
  table->add_option("--haar-seed", cfg.haar_seed, "add a column from one Haar sample per n");

  for (auto* sub : {state, pur, spec, sample, theory, meas, table}) sub->add_option("-o,--output", cfg.output, "output path (default stdout)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitArgument;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    detail::dispatch(cfg, out);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitArgument;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitArgument;
  }
  return kExitOk;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace entspec::cli
