#include "condsense/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "condsense/monotonicity.hpp"
#include "condsense/paircond_identity.hpp"
#include "condsense/tolerant_identity.hpp"
#include "condsense/tolerant_uniformity.hpp"
#include "condsense/truth.hpp"

namespace condsense {

namespace {

constexpr std::size_t kExactCap = 200;

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

Distribution uniform_over(std::size_t n) {
  return Distribution::from_blocks({{1, n, 1.0 / static_cast<double>(n)}});
}

}  // namespace

TrialReport run_trial(const FamilySpec& spec, const std::string& algorithm,
                      double eps, std::uint64_t seed, const Config& cfg,
                      const Distribution* dstar_override) {
  TrialReport rep;
  rep.algorithm = algorithm;
  rep.family = spec.name();
  rep.eps = eps;
  rep.seed = seed;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Instance inst = generate(spec);
    rep.n = inst.dist.size();
    OracleHandle h(inst.dist, seed);
    h.set_cache_capacity(static_cast<std::size_t>(cfg.lru_capacity));

    auto reference = [&]() -> Distribution {
      if (dstar_override) return *dstar_override;
      if (inst.dstar) return *inst.dstar;
      return uniform_over(inst.dist.size());
    };

    if (algorithm == "tolerant-unif") {
      double est = tolerant_unif(h, eps, cfg);
      rep.estimate = est;
      rep.output = fmt(est);
      if (rep.n <= kExactCap)
        rep.truth = exact_tv(inst.dist, uniform_over(rep.n));
    } else if (algorithm == "tolerant-id") {
      Distribution ref = reference();
      double est = tolerant_id(h, ref, eps, cfg);
      rep.estimate = est;
      rep.output = fmt(est);
      if (rep.n <= kExactCap) rep.truth = exact_tv(inst.dist, ref);
    } else if (algorithm == "monotone") {
      MonotoneResult res = test_monotone(h, eps, cfg);
      rep.verdict = res.accept;
      rep.output = res.accept ? "ACCEPT" : "REJECT";
      if (rep.n <= kExactCap) rep.truth = exact_dist_to_monotone(inst.dist).optimum;
    } else if (algorithm == "paircond-id") {
      Distribution ref = reference();
      bool ok = pcond_id(h, ref, eps, cfg);
      rep.verdict = ok;
      rep.output = ok ? "ACCEPT" : "REJECT";
      if (rep.n <= kExactCap) rep.truth = exact_tv(inst.dist, ref);
    } else {
      throw std::invalid_argument("unknown algorithm: " + algorithm);
    }
    rep.ledger = h.ledger();
  } catch (const std::exception& e) {
    rep.error = e.what();
  }
  rep.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

std::vector<TrialReport> run_sweep(const std::vector<SweepCell>& grid,
                                   int trials_per_cell, std::uint64_t base_seed,
                                   const Config& cfg) {
  if (grid.empty()) throw std::invalid_argument("empty sweep grid");
  std::vector<std::future<std::vector<TrialReport>>> cells;
  cells.reserve(grid.size());
  for (const SweepCell& cell : grid) {
    cells.push_back(std::async(std::launch::async, [&cfg, cell, trials_per_cell,
                                                    base_seed]() {
      std::vector<TrialReport> out;
      out.reserve(trials_per_cell);
      for (int t = 0; t < trials_per_cell; ++t) {
        TrialReport r =
            run_trial(cell.spec, cell.algorithm, cell.eps, base_seed + t, cfg);
        r.wall_ms = 0;  // sweeps stay byte-identical across re-runs
        out.push_back(std::move(r));
      }
      return out;
    }));
  }
  std::vector<TrialReport> rows;
  for (auto& f : cells) {
    auto part = f.get();
    rows.insert(rows.end(), std::make_move_iterator(part.begin()),
                std::make_move_iterator(part.end()));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const TrialReport& a, const TrialReport& b) {
                     return std::tie(a.algorithm, a.family, a.eps, a.seed) <
                            std::tie(b.algorithm, b.family, b.eps, b.seed);
                   });
  return rows;
}

std::string csv_header() {
  return "algorithm,family,N,eps,seed,output,truth,samp,cond,pcond,wall_ms,error";
}

std::string csv_row(const TrialReport& r) {
  std::ostringstream out;
  out << r.algorithm << ',' << r.family << ',' << r.n << ',' << fmt(r.eps) << ','
      << r.seed << ',' << r.output << ',';
  if (r.truth) out << fmt(*r.truth);
  out << ',' << r.ledger.samp_count << ',' << r.ledger.cond_count << ','
      << r.ledger.pcond_count << ',' << r.wall_ms << ',' << r.error;
  return out.str();
}

void write_csv(const std::vector<TrialReport>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << csv_header() << '\n';
  for (const TrialReport& r : rows) out << csv_row(r) << '\n';
}

double amplify_median(const std::vector<TrialReport>& reports) {
  std::vector<double> vals;
  for (const TrialReport& r : reports) {
    if (!r.estimate) throw std::invalid_argument("median needs estimate reports");
    vals.push_back(*r.estimate);
  }
  if (vals.empty()) throw std::invalid_argument("median of nothing");
  std::sort(vals.begin(), vals.end());
  std::size_t m = vals.size() / 2;
  if (vals.size() % 2 == 1) return vals[m];
  return 0.5 * (vals[m - 1] + vals[m]);
}

}  // namespace condsense
