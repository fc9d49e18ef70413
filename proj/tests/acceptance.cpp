// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "condsense/families.hpp"
#include "condsense/harness.hpp"
#include "condsense/monotonicity.hpp"
#include "condsense/paircond_identity.hpp"
#include "condsense/primitives.hpp"
#include "condsense/tolerant_identity.hpp"
#include "condsense/tolerant_uniformity.hpp"
#include "condsense/truth.hpp"

using namespace condsense;

namespace {

Distribution uniform_dense(std::size_t n) {
  return Distribution::from_weights(std::vector<double>(n, 1.0));
}

Distribution zipf(std::size_t n, double s) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 1.0 / std::pow(static_cast<double>(i + 1), s);
  return Distribution::from_weights(std::move(w));
}

Distribution rzipf(std::size_t n, double s) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 1.0 / std::pow(static_cast<double>(n - i), s);
  return Distribution::from_weights(std::move(w));
}

Distribution random_simplex(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed));
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(n);
  for (auto& v : w) v = e(rng);
  return Distribution::from_weights(std::move(w));
}

Distribution random_monotone(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed ^ 0x6d6f6e6fULL));
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(n);
  for (auto& v : w) v = e(rng);
  std::sort(w.begin(), w.end(), std::greater<>());
  return Distribution::from_weights(std::move(w));
}

// reference rotated one step: D(i) = D*(i mod N + 1)
Distribution prefix_shift(const Distribution& d) {
  std::size_t n = d.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = d.mass(i % n + 1);
  return Distribution::from_weights(std::move(w));
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  auto n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct Gate {
  int failures = 0;
  void report(int idx, const std::string& name, bool ok, const std::string& detail) {
    std::printf("criterion-%d %s: %s (%s)\n", idx, name.c_str(),
                ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

// ---------------------------------------------------------------------------

bool exact_oracle_suite(std::string& detail) {
  std::ostringstream why;
  bool ok = true;

  // total variation identities
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto a = random_simplex(40, 100 + s);
    auto b = random_simplex(40, 200 + s);
    auto c = random_simplex(40, 300 + s);
    double t = exact_tv(a, b);
    if (t < 0.0 || t > 1.0) ok = false;
    if (std::fabs(t - exact_tv(b, a)) > 1e-12) ok = false;
    if (std::fabs(t - tv_positive_part(a, b)) > 1e-12) ok = false;
    if (std::fabs(t - tv_positive_part(b, a)) > 1e-12) ok = false;
    if (std::fabs(1.0 - t - overlap(a, b)) > 1e-12) ok = false;
    if (exact_tv(a, a) > 1e-12) ok = false;
    if (exact_tv(a, c) > t + exact_tv(b, c) + 1e-12) ok = false;
  }
  if (!ok) why << "tv identities; ";

  // flattening a monotone distribution moves it by at most eps/4
  const double eps_b = 0.2;
  bool birge = true;
  auto dec_b = oblivious_decomposition(500, eps_b / 4.0);
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto d = random_monotone(500, s);
    if (exact_tv(d, flatten(d, dec_b)) > eps_b / 4.0 + 1e-12) birge = false;
  }
  if (!birge) why << "flattening bound; ";
  ok = ok && birge;

  // reductions of monotone distributions lie in the per-step growth class,
  // and flattening is idempotent
  bool redid = true;
  auto dec_r = oblivious_decomposition(500, 0.25);
  auto caps = ratio_caps(dec_r);
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto d = random_monotone(500, 40 + s);
    if (exact_dist_to_expo(reduced(d, dec_r), caps).optimum > 1e-7) redid = false;
    auto f = flatten(d, dec_r);
    if (exact_tv(f, flatten(f, dec_r)) > 1e-7) redid = false;
  }
  if (!redid) why << "reduction identity; ";
  ok = ok && redid;

  // growth-class witness: the sampled violation indicator has expectation at
  // least alpha * distance / 2 on LP-certified far instances
  const double alpha_w = 0.1;
  int found = 0;
  bool witness = true;
  for (std::uint64_t s = 0; found < 20 && s < 200; ++s) {
    auto q = random_simplex(50, 500 + s);
    auto lp = exact_dist_to_expo(q, alpha_w);
    if (lp.optimum < 0.05) continue;
    ++found;
    if (expo_witness_expectation(q, alpha_w) < alpha_w * lp.optimum / 2.0 - 1e-12)
      witness = false;
  }
  if (found < 20) witness = false;
  if (!witness) why << "growth witness; ";
  ok = ok && witness;

  // pairwise-probability gap: with a near-uniform reference the expected
  // pair deviation is at least distance / 16
  bool pairs = true;
  for (std::uint64_t s = 0; s < 20; ++s) {
    std::mt19937_64 rng(splitmix64(700 + s));
    std::vector<double> w(50);
    for (auto& v : w)
      v = 1.0 + 0.1 * std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    auto pstar = Distribution::from_weights(std::move(w));
    auto p = random_simplex(50, 900 + s);
    double e = exact_tv(p, pstar);
    if (pair_expectation(p, pstar) < e / 16.0 - 1e-12) pairs = false;
  }
  if (!pairs) why << "pair expectation; ";
  ok = ok && pairs;

  // tilted staircase family sits at exactly eps/2 from its reference
  bool appa = true;
  for (std::uint64_t s = 0; s < 5; ++s) {
    std::mt19937_64 rng(splitmix64(1100 + s));
    std::vector<int> bits(3);
    for (auto& b : bits) b = static_cast<int>(rng() & 1u);
    auto [member, ref] = appendix_a(3, 4, 0.4, bits);
    if (std::fabs(exact_tv(member, ref) - 0.2) > 1e-12) appa = false;
  }
  if (!appa) why << "staircase distance; ";
  ok = ok && appa;

  detail = ok ? "tv, flattening, reduction, witnesses, staircase" : why.str();
  return ok;
}

bool tu_accuracy(std::string& detail) {
  Config cfg;
  const double eps = 0.1;
  const double tol = cfg.c_tu * eps;
  const std::size_t N = 500;
  std::vector<std::pair<std::string, Distribution>> fams;
  fams.emplace_back("uniform", uniform_dense(N));
  {
    std::mt19937_64 rng(splitmix64(77));
    std::vector<int> bits(N / 2);
    for (auto& b : bits) b = static_cast<int>(rng() & 1u);
    fams.emplace_back("paninski", paninski(N / 2, 0.4, bits));
  }
  {
    std::vector<double> w(N, 0.0);
    for (std::size_t i = 0; i < N / 2; ++i) w[i] = 1.0;
    fams.emplace_back("half", Distribution::from_weights(std::move(w)));
  }
  for (std::uint64_t s = 0; s < 5; ++s)
    fams.emplace_back("simplex" + std::to_string(s), random_simplex(N, 7000 + s));

  std::ostringstream why;
  bool ok = true;
  auto u = uniform_dense(N);
  for (const auto& [name, d] : fams) {
    double truth = exact_tv(d, u);
    int good = 0;
    for (std::uint64_t t = 0; t < 60; ++t) {
      OracleHandle h(d, 1 + t);
      if (std::fabs(tolerant_unif(h, eps, cfg) - truth) <= tol) ++good;
    }
    if (good < 40) {
      ok = false;
      why << name << "=" << good << "/60; ";
    }
  }
  detail = ok ? "8 families, >=40/60 within 0.3 each" : why.str();
  return ok;
}

bool tu_scaling(std::string& detail) {
  Config cfg;
  auto d = uniform_dense(500);
  std::vector<double> epss{0.2, 0.1, 0.05, 0.025};
  std::vector<double> meds;
  for (double e : epss) {
    std::vector<double> q;
    for (std::uint64_t t = 0; t < 30; ++t) {
      OracleHandle h(d, 100 + t);
      tolerant_unif(h, e, cfg);
      q.push_back(static_cast<double>(h.ledger().total()));
    }
    meds.push_back(median(q));
  }
  double slope = loglog_slope(epss, meds);
  bool slope_ok = slope >= -2.5 && slope <= -1.5;

  std::vector<double> nmeds;
  for (std::size_t N : {std::size_t{100}, std::size_t{1000}, std::size_t{10000}}) {
    auto dn = uniform_dense(N);
    std::vector<double> q;
    for (std::uint64_t t = 0; t < 30; ++t) {
      OracleHandle h(dn, 200 + t);
      tolerant_unif(h, 0.1, cfg);
      q.push_back(static_cast<double>(h.ledger().total()));
    }
    nmeds.push_back(median(q));
  }
  double spread = *std::max_element(nmeds.begin(), nmeds.end()) /
                  *std::min_element(nmeds.begin(), nmeds.end());
  bool n_ok = spread <= 2.0;

  std::ostringstream s;
  s << "eps slope " << slope << ", N spread x" << spread;
  detail = s.str();
  return slope_ok && n_ok;
}

bool ti_accuracy(std::string& detail) {
  Config cfg;
  const double eps = 0.1;
  const double tol = cfg.c_ti * eps;
  const std::size_t N = 200;
  std::vector<Distribution> refs{zipf(N, 1.0), random_simplex(N, 4242)};
  auto u = uniform_dense(N);

  // 40 trials round-robin over the 6 (reference, target) pairs
  int good = 0;
  for (int t = 0; t < 40; ++t) {
    const Distribution& dstar = refs[t % 2];
    Distribution target;
    switch ((t / 2) % 3) {
      case 0: target = dstar; break;
      case 1: target = u; break;
      default: target = prefix_shift(dstar); break;
    }
    double truth = exact_tv(target, dstar);
    OracleHandle h(target, 3000 + t);
    double est = tolerant_id(h, dstar, eps, cfg);
    if (std::fabs(est - truth) <= tol) ++good;
  }
  bool acc_ok = good >= 27;

  std::vector<double> meds;
  for (std::size_t n : {std::size_t{100}, std::size_t{1000}, std::size_t{5000}}) {
    auto dstar = zipf(n, 1.0);
    std::vector<double> q;
    for (std::uint64_t t = 0; t < 3; ++t) {
      OracleHandle h(dstar, 500 + t);
      tolerant_id(h, dstar, eps, cfg);
      q.push_back(static_cast<double>(h.ledger().total()));
    }
    meds.push_back(median(q));
  }
  double spread = *std::max_element(meds.begin(), meds.end()) /
                  *std::min_element(meds.begin(), meds.end());
  bool n_ok = spread <= 2.0;

  std::ostringstream s;
  s << good << "/40 within 0.4, N spread x" << spread;
  detail = s.str();
  return acc_ok && n_ok;
}

bool monotone_gate(std::string& detail) {
  Config cfg;
  const double eps = 0.2;
  const std::size_t N = 2000;
  auto zp = zipf(N, 1.2);
  auto rz = rzipf(N, 1.2);
  if (monotone_farness_bound(rz) < 0.3) {
    detail = "reversed instance not certifiably far";
    return false;
  }
  int acc = 0, rej = 0;
  for (std::uint64_t t = 0; t < 60; ++t) {
    OracleHandle h(zp, 600 + t);
    if (test_monotone(h, eps, cfg).accept) ++acc;
  }
  for (std::uint64_t t = 0; t < 60; ++t) {
    OracleHandle h(rz, 700 + t);
    if (!test_monotone(h, eps, cfg).accept) ++rej;
  }
  std::ostringstream s;
  s << "accept " << acc << "/60, reject " << rej << "/60";
  detail = s.str();
  return acc >= 40 && rej >= 40;
}

bool pcid_gate(std::string& detail) {
  Config cfg;
  const double eps = 0.2;  // half the family tilt of 0.4
  int acc = 0, rej = 0;
  bool cond_clean = true;
  for (std::uint64_t t = 0; t < 60; ++t) {
    std::mt19937_64 rng(splitmix64(800 + t));
    std::vector<int> bits(3);
    for (auto& b : bits) b = static_cast<int>(rng() & 1u);
    auto [member, ref] = appendix_a(3, 4, 0.4, bits);
    {
      OracleHandle h(ref, 900 + t);
      if (pcond_id(h, ref, eps, cfg)) ++acc;
      if (h.ledger().cond_count != 0) cond_clean = false;
    }
    {
      OracleHandle h(member, 900 + t);
      if (!pcond_id(h, ref, eps, cfg)) ++rej;
      if (h.ledger().cond_count != 0) cond_clean = false;
    }
  }
  bool verdicts_ok = acc >= 40 && rej >= 40 && cond_clean;

  // query growth ~ sqrt(log N) on a block-compressed dyadic staircase
  std::vector<double> ratios;
  std::ostringstream s;
  s << "accept " << acc << "/60, reject " << rej << "/60";
  for (std::size_t N : {std::size_t{1000}, std::size_t{100000},
                        std::size_t{10000000}}) {
    const std::size_t L = 8, len = N / L;
    std::vector<Block> blocks;
    double total = 0.0;
    for (std::size_t j = 0; j < L; ++j)
      total += std::ldexp(1.0, -static_cast<int>(j)) * static_cast<double>(len);
    for (std::size_t j = 0; j < L; ++j)
      blocks.push_back({1 + j * len, len,
                        std::ldexp(1.0, -static_cast<int>(j)) / total});
    auto dstar = Distribution::from_blocks(std::move(blocks));
    std::vector<double> q;
    for (std::uint64_t t = 0; t < 5; ++t) {
      OracleHandle h(dstar, 950 + t);
      pcond_id(h, dstar, eps, cfg);
      q.push_back(static_cast<double>(h.ledger().total()));
    }
    ratios.push_back(median(q) / std::sqrt(std::log(static_cast<double>(N))));
  }
  double spread = *std::max_element(ratios.begin(), ratios.end()) /
                  *std::min_element(ratios.begin(), ratios.end());
  s << ", queries/sqrt(logN) spread x" << spread;
  detail = s.str();
  return verdicts_ok && spread <= 2.0;
}

bool primitive_gate(std::string& detail) {
  Config cfg;
  auto d = Distribution::from_weights({0.75, 0.25});
  int good = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    OracleHandle h(d, 10000 + t);
    SampPcondOracle o(h);
    CompareResult c = compare(o, 1, 2, 0.05, 0.05, cfg);
    if (c.in_window(3.0 * 0.95, 3.0 * 1.05)) ++good;
  }
  bool compare_ok = good >= 990;

  bool geom_ok = true;
  std::ostringstream s;
  s << "compare " << good << "/1000";
  for (double ratio : {0.25, 1.0, 4.0}) {
    auto dd = Distribution::from_weights({ratio, 1.0});
    OracleHandle h(dd, 12000 + static_cast<std::uint64_t>(ratio * 4));
    SampPcondOracle o(h);
    const std::uint64_t cap = geom_cap(std::max(ratio, 1.0), 0.1, cfg);
    const int M = 2000;
    double sum = 0.0, sumsq = 0.0;
    for (int t = 0; t < M; ++t) {
      auto g = static_cast<double>(geometric_count(o, 1, 2, cap));
      sum += g;
      sumsq += g * g;
    }
    double mean = sum / M;
    double se = std::sqrt((sumsq / M - mean * mean) / M);
    if (std::fabs(mean - ratio) > 2.0 * se) geom_ok = false;
    s << ", geom(" << ratio << ") " << mean << "+-" << 2.0 * se;
  }
  detail = s.str();
  return compare_ok && geom_ok;
}

bool determinism_gate(std::string& detail) {
  Config cfg;
  std::vector<SweepCell> grid{
      {FamilySpec::parse("uniform:n=100"), "tolerant-unif", 0.2},
      {FamilySpec::parse("zipf:n=50;s=1"), "tolerant-id", 0.2},
      {FamilySpec::parse("zipf:n=200;s=1.2"), "monotone", 0.25},
      {FamilySpec::parse("appendixa:r=2;k=4;eps=0.4;seed=2"), "paircond-id", 0.2},
  };
  auto render = [&]() {
    auto rows = run_sweep(grid, 2, 31, cfg);
    std::ostringstream out;
    out << csv_header() << '\n';
    for (const auto& r : rows) out << csv_row(r) << '\n';
    return out.str();
  };
  std::string a = render();
  std::string b = render();
  detail = a == b ? std::to_string(a.size()) + " bytes, identical re-run"
                  : "re-run differs";
  return a == b;
}

}  // namespace

int main() {
  Gate g;
  std::string d;
  g.report(1, "exact-oracle-suite", exact_oracle_suite(d), d);
  g.report(2, "tolerant-unif-accuracy", tu_accuracy(d), d);
  g.report(3, "tolerant-unif-scaling", tu_scaling(d), d);
  g.report(4, "tolerant-id-accuracy", ti_accuracy(d), d);
  g.report(5, "monotone-verdicts", monotone_gate(d), d);
  g.report(6, "paircond-id", pcid_gate(d), d);
  g.report(7, "primitive-concentration", primitive_gate(d), d);
  g.report(8, "sweep-determinism", determinism_gate(d), d);
  return g.failures;
}
