// Acceptance checks 1-7. Prints one PASS/FAIL line per criterion, with the
// individual failed checks listed underneath, and exits nonzero on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <entspec/entspec.hpp>

#include "oracles.hpp"

using namespace entspec;

namespace {

class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)) {}

  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }

  void near(double got, double want, double tol, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof buf, ": got %.10g, want %.10g, tol %.3g", got, want, tol);
    check(std::abs(got - want) <= tol, what + buf);
  }

  bool report() const {
    std::printf("[%s] %s (%zu checks)\n", failures_.empty() ? "PASS" : "FAIL", title_.c_str(), checks_);
    for (const auto& f : failures_) std::printf("       failed: %s\n", f.c_str());
    std::fflush(stdout);
    return failures_.empty();
  }

 private:
  std::string title_;
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
};

std::string at_n(const char* what, int n) { return std::string(what) + " n=" + std::to_string(n); }

struct Sample {
  double mean = 0, var = 0, mean_se = 0, var_se = 0;
};

Sample sample_moments(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  Sample s;
  for (double v : x) s.mean += v;
  s.mean /= n;
  double m2 = 0, m4 = 0;
  for (double v : x) {
    const double d = (v - s.mean) * (v - s.mean);
    m2 += d;
    m4 += d * d;
  }
  m2 /= n;
  m4 /= n;
  s.var = m2 * n / (n - 1);
  s.mean_se = std::sqrt(m2 / n);
  s.var_se = std::sqrt((m4 - m2 * m2) / n);
  return s;
}

bool criterion1() {
  Criterion c("C1 mean participation of GHZ, W, cluster and random states, n=5..12");
  const double w_table[] = {1.923, 2, 1.96, 2, 1.976, 2, 1.984, 2};
  const double cluster_table[] = {3.6, 5.4, 6.171, 8.743, 10.349, 14.206, 17.176, 23.156};
  const double random_table[] = {2.909, 4.267, 5.565, 8.258, 10.894, 16.254, 21.558, 32.252};
  const auto start = std::chrono::steady_clock::now();
  for (int n = 5; n <= 12; ++n) {
    const auto family = BipartitionFamily::balanced(n);
    const int k = n - 5;
    const double a = n / 2, b = n - n / 2;
    c.near(compute_distribution(make_ghz(n), family).mean_participation, 2.0, 1e-9, at_n("GHZ mean", n));
    const double w = compute_distribution(make_w(n), family).mean_participation;
    c.near(w, double(n) * n / (a * a + b * b), 1e-9, at_n("W mean vs n^2/(nA^2+nB^2)", n));
    c.near(w, w_table[k], 5e-4, at_n("W mean vs tabulated", n));
    c.near(compute_distribution(make_cluster1d(n), family).mean_participation, cluster_table[k], 5e-4,
           at_n("cluster mean vs tabulated", n));
    const double dim_a = std::ldexp(1.0, n / 2), dim_b = std::ldexp(1.0, n - n / 2);
    c.near(1.0 / asymptotic_model(dim_a, dim_b).mu, random_table[k], 5e-4, at_n("random N/(N_A+N_B-1) vs tabulated", n));
    c.near(dim_a * dim_b / (dim_a + dim_b - 1), random_table[k], 5e-4, at_n("random closed form vs tabulated", n));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.check(seconds < 60.0, "runtime " + std::to_string(seconds) + " s < 60 s");
  return c.report();
}

bool criterion2() {
  Criterion c("C2 three-qubit exact distributions");
  const auto family = BipartitionFamily::balanced(3);
  for (double v : compute_distribution(make_basis(3, 0b110), family).participations()) c.near(v, 1.0, 1e-10, "factorized state");
  for (double v : compute_distribution(make_ghz(3), family).participations()) c.near(v, 2.0, 1e-10, "GHZ(3)");

  // (|000> + |110>)/sqrt2, qubit 0 written leftmost
  std::vector<Amplitude> amps(8);
  amps[0] = amps[0b011] = 1.0 / std::sqrt(2.0);
  const auto h = histogram(compute_distribution(PureState(3, amps), family));
  c.check(h.discrete && h.bins.size() == 2, "(|000>+|110>)/sqrt2 gives two bars");
  if (h.bins.size() == 2) {
    c.near(h.bins[0].center(), 1.0, 1e-10, "first bar at N=1");
    c.near(h.bins[1].center(), 2.0, 1e-10, "second bar at N=2");
    c.near(h.bins[0].count / 3.0, 1.0 / 3.0, 1e-10, "weight at N=1");
    c.near(h.bins[1].count / 3.0, 2.0 / 3.0, 1e-10, "weight at N=2");
  }
  return c.report();
}

bool criterion3() {
  Criterion c("C3 Bell x Bell over balanced bipartitions");
  const auto bell = make_bell_pairs(4);
  const auto d = compute_distribution(bell, BipartitionFamily::balanced(4));
  const auto s = summarize(d);
  c.check(d.count == 6, "six balanced bipartitions");
  c.near(s.mean, 3.0, 1e-12, "mean participation");
  c.near(s.std_sample, 1.549, 0.01, "Bessel-corrected standard deviation");
  c.near(q_measure(bell), 1.0, 1e-10, "Q(Bell x Bell)");
  c.near(q_measure(make_ghz(4)), 1.0, 1e-10, "Q(GHZ(4))");
  c.near(q_measure(bell), q_measure(make_ghz(4)), 1e-10, "Q(Bell x Bell) = Q(GHZ(4))");
  return c.report();
}

bool criterion4() {
  Criterion c("C4 random-state statistics");
  constexpr int kN = 10;
  const double dim = 1024.0, mu = 63.0 / 1024.0;
  const Bipartition part(kN, 0x1F);
  const auto states = sample_haar({Ensemble::haar, kN, 20240601}, 1000);
  std::vector<double> p;
  for (const auto& s : states) p.push_back(purity(s, part).purity);
  const auto m = sample_moments(p);
  c.check(std::abs(m.mean - mu) / mu <= 0.05, "n=10 mean purity within 5% of 63/1024: got " + std::to_string(m.mean));
  const double var_ref = 2.0 / (dim * dim);
  c.check(m.var >= var_ref / 2 && m.var <= var_ref * 2, "n=10 purity variance within factor 2 of 2/N^2: got " + std::to_string(m.var));

  const auto single = sample_state({Ensemble::haar, 12, 777}, 0);
  const auto d = compute_distribution(single, BipartitionFamily::balanced(12));
  c.check(d.count == 924, "924 balanced masks at n=12");
  c.check(std::abs(d.mean_participation - 32.252) / 32.252 <= 0.05, "n=12 mean participation within 5% of 32.252: got " + std::to_string(d.mean_participation));
  const auto ps = summarize_values(d.purities());
  c.check(std::sqrt(ps.var_population) / ps.mean <= 0.05, "n=12 purity sigma/mu <= 0.05: got " + std::to_string(std::sqrt(ps.var_population) / ps.mean));
  return c.report();
}

bool criterion5() {
  Criterion c("C5 moment formulas vs phase-sphere Monte Carlo, delta provider");
  struct Case {
    int n;
    Mask mask;
  };
  for (const auto [n, mask] : {Case{3, 0b001}, Case{4, 0b0011}, Case{5, 0b00011}}) {
    const Bipartition part(n, mask);
    const auto states = sample_phase_sphere({Ensemble::phase_sphere, n, 5000u + n}, 100000);
    std::vector<double> p;
    p.reserve(states.size());
    for (const auto& s : states) p.push_back(purity(s, part).purity);
    const auto mc = sample_moments(p);
    const double da = double(part.dim_a()), db = double(part.dim_b());
    const auto model = exact_moments(da, db, MomentProvider::exact_sphere(da * db));
    const std::string tag = "N=" + std::to_string(int(da * db));
    c.near(mc.mean, model.mu, 3 * mc.mean_se, tag + " mean within 3 standard errors");
    c.near(mc.var, model.sigma2, 3 * mc.var_se, tag + " variance within 3 standard errors");
  }
  int pairs = 0;
  for (int na = 1; na <= 5; ++na)
    for (int nb = 1; nb <= 4; ++nb) {
      const double da = std::ldexp(1.0, na), db = std::ldexp(1.0, nb);
      const double want = (da + db - 1) / (da * db);
      c.near(exact_moments(da, db, MomentProvider::delta(da * db)).mu, want, 1e-14 * want,
             "delta provider mean, N_A=" + std::to_string(int(da)) + " N_B=" + std::to_string(int(db)));
      ++pairs;
    }
  c.check(pairs == 20, "20 (N_A, N_B) pairs");
  return c.report();
}

bool criterion6() {
  Criterion c("C6 concurrence and tangles");
  c.near(concurrence(make_ghz(2), 0, 1).value, 1.0, 1e-9, "C(Bell)");
  c.near(concurrence(make_ghz(3), 0, 1).value, 0.0, 1e-9, "C(GHZ(3) pair)");
  c.near(concurrence(make_w(3), 0, 1).value, 2.0 / 3.0, 1e-9, "C(W(3) pair)");
  c.near(tangle1(make_w(3), 0), 8.0 / 9.0, 1e-10, "tau1(W(3))");

  for (const auto& s : sample_haar({Ensemble::haar, 6, 606}, 100)) {
    const auto rep = tangle_report(s);
    for (int i = 0; i < 6; ++i) c.check(rep.tau1[i] >= rep.tau2[i] - 1e-10, "CKW tau1 >= tau2 - 1e-10 at n=6");
  }

  double tau1 = 0, tau2 = 0;
  const auto states = sample_haar({Ensemble::haar, 10, 1010}, 200);
  for (const auto& s : states) {
    const auto rep = tangle_report(s);
    for (int i = 0; i < 10; ++i) {
      tau1 += rep.tau1[i];
      tau2 += rep.tau2[i];
    }
  }
  tau1 /= 2000.0;
  tau2 /= 2000.0;
  c.near(tau1, 1.0 - 1.0 / 512.0, 0.005, "n=10 mean tau1");
  c.check(tau2 <= 0.02, "n=10 mean tau2 <= 0.02: got " + std::to_string(tau2));
  return c.report();
}

bool criterion7() {
  Criterion c("C7 property suites");
  std::mt19937_64 rng(77);
  for (int n = 2; n <= 8; ++n) {
    std::vector<PureState> states = sample_haar({Ensemble::haar, n, 700u + n}, 10);
    states.push_back(make_ghz(n));
    states.push_back(make_w(n));
    states.push_back(make_cluster1d(n));
    states.push_back(make_basis(n, 1));
    for (const auto& s : states) {
      std::uniform_int_distribution<int> pick(0, n - 1);
      const auto rotated = apply_single_qubit(s, pick(rng), oracle::random_unitary2(rng));
      for (Mask m = 1; m < low_bits(n); ++m) {
        const Bipartition part(n, m);
        const auto r = purity(s, part);
        const double cap = double(std::min(part.dim_a(), part.dim_b()));
        c.check(r.participation >= 1.0 && r.participation <= cap, at_n("1 <= N_AB <= min(N_A, N_B)", n));
        c.check(std::abs(r.purity - purity(s, complement(part)).purity) <= 1e-12, at_n("complement symmetry 1e-12", n));
        c.check(std::abs(r.purity - purity(rotated, part).purity) <= 1e-10, at_n("local-unitary invariance 1e-10", n));
        if (n <= 6) {
          c.check(std::abs(r.purity - purity_quadruple_sum(s, part)) <= 1e-10, at_n("Gram vs quadruple sum 1e-10", n));
          const auto xm = xm_split(s, part);
          c.check(std::abs(xm.x + xm.m - r.purity) <= 1e-10, at_n("X + M = purity 1e-10", n));
        }
      }
    }
  }

  for (int n = 5; n <= 12; ++n) {
    const auto model = asymptotic_model(std::ldexp(1.0, n / 2), std::ldexp(1.0, n - n / 2));
    const double s = model.sigma();
    const double f_mass = oracle::simpson([&](double x) { return purity_pdf(model, x); }, model.mu - 8 * s, model.mu + 8 * s);
    c.near(f_mass, 1.0, 1e-6, at_n("purity pdf mass", n));
    if (model.mu - 8 * s > 0) {
      const double p_mass = oracle::simpson([&](double y) { return participation_pdf(model, y); }, 1 / (model.mu + 8 * s),
                                            1 / (model.mu - 8 * s));
      c.near(p_mass, 1.0, 1e-6, at_n("participation pdf mass", n));
    }
  }

  for (int n = 3; n <= 10; ++n)
    for (const auto& s : {make_cluster1d(n), make_w(n), sample_state({Ensemble::haar, n, 31}, 0)})
      for (const auto& fam : {BipartitionFamily::balanced(n), BipartitionFamily::all_sizes(n)})
        c.near(histogram(compute_distribution(s, fam)).mass(), 1.0, 1e-9, at_n("histogram mass", n));

  std::mt19937_64 mrng(404);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = oracle::random_matrix4(mrng);
    const double dist = oracle::multiset_distance(eig4(m), oracle::quartic_roots(oracle::char_poly(m)));
    c.check(dist <= 1e-8, "eig4 vs quartic oracle 1e-8, trial " + std::to_string(trial));
  }
  return c.report();
}

}  // namespace

int main() {
  bool ok = true;
  for (auto criterion : {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7}) ok = criterion() && ok;
  std::printf("%s\n", ok ? "all acceptance criteria passed" : "some acceptance criteria failed");
  return ok ? 0 : 1;
}
