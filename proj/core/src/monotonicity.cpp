#include "condsense/monotonicity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "condsense/primitives.hpp"
#include "condsense/tolerant_uniformity.hpp"

namespace condsense {

Elem Decomposition::interval_of(Elem e) const {
  // first interval whose upper end reaches e
  std::size_t lo = 0, hi = intervals.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (intervals[mid].second >= e) hi = mid; else lo = mid + 1;
  }
  return static_cast<Elem>(lo + 1);
}

Decomposition oblivious_decomposition(std::size_t N, double alpha) {
  if (N == 0 || alpha <= 0.0) throw std::invalid_argument("bad decomposition");
  Decomposition dec;
  std::size_t start = 1;
  for (int j = 1; start <= N; ++j) {
    auto len = static_cast<std::size_t>(std::floor(std::pow(1.0 + alpha, j)));
    if (len < 1) len = 1;
    std::size_t end = std::min(N, start + len - 1);
    dec.intervals.emplace_back(static_cast<Elem>(start), static_cast<Elem>(end));
    start = end + 1;
  }
  return dec;
}

std::vector<double> ratio_caps(const Decomposition& dec) {
  std::vector<double> r;
  r.reserve(dec.k() > 0 ? dec.k() - 1 : 0);
  for (std::size_t j = 0; j + 1 < dec.k(); ++j) {
    auto len = [&](std::size_t i) {
      return static_cast<double>(dec.intervals[i].second -
                                 dec.intervals[i].first + 1);
    };
    r.push_back(len(j + 1) / len(j));
  }
  return r;
}

Distribution flatten(const Distribution& d, const Decomposition& dec) {
  std::vector<double> w(d.size());
  for (const auto& [lo, hi] : dec.intervals) {
    double avg = d.range_mass(lo, hi) / static_cast<double>(hi - lo + 1);
    for (Elem i = lo; i <= hi; ++i) w[i - 1] = avg;
  }
  return Distribution::from_weights(std::move(w));
}

Distribution reduced(const Distribution& d, const Decomposition& dec) {
  std::vector<double> w(dec.k());
  for (std::size_t j = 0; j < dec.k(); ++j)
    w[j] = d.range_mass(dec.intervals[j].first, dec.intervals[j].second);
  return Distribution::from_weights(std::move(w));
}

ReducedOracle::ReducedOracle(OracleHandle& h, const Decomposition& dec)
    : h_(h), dec_(dec) {
  sets_.reserve(dec_.k());
  for (const auto& [lo, hi] : dec_.intervals) {
    std::vector<Elem> s;
    s.reserve(hi - lo + 1);
    for (Elem i = lo; i <= hi; ++i) s.push_back(i);
    sets_.push_back(std::move(s));
  }
}

Elem ReducedOracle::draw() { return dec_.interval_of(h_.samp()); }

Elem ReducedOracle::pair(Elem a, Elem b) {
  std::vector<Elem> u = sets_[a - 1];
  u.insert(u.end(), sets_[b - 1].begin(), sets_[b - 1].end());
  return dec_.interval_of(h_.cond(u));
}

std::uint64_t ReducedOracle::pair_count(Elem a, Elem b, std::uint64_t k) {
  return h_.cond_split_count(sets_[a - 1], sets_[b - 1], k);
}

std::uint64_t ReducedOracle::pair_runlength(Elem num, Elem den, std::uint64_t cap) {
  return h_.cond_split_runlength(sets_[num - 1], sets_[den - 1], cap);
}

double dist_to_flat(OracleHandle& h, const Decomposition& dec, double eps,
                    const Config& cfg) {
  const std::uint64_t R = reps(cfg.dtf_samples_mult, 1.0 / (eps * eps));
  const double inner_eps = eps / cfg.dtf_inner_eps_div;
  double s = 0.0;
  for (std::uint64_t r = 0; r < R; ++r) {
    Elem j = dec.interval_of(h.samp());
    auto [lo, hi] = dec.intervals[j - 1];
    IntervalOracle o(h, lo, hi);
    s += tolerant_unif(o, inner_eps, cfg) / static_cast<double>(R);
  }
  return s;
}

bool expo_tester(OracleHandle& h, const Decomposition& dec, double eps,
                 const Config& cfg) {
  ReducedOracle o(h, dec);
  const std::vector<double> caps = ratio_caps(dec);
  const double lne = std::log(1.0 / eps);
  auto levels = dyadic_levels(eps, cfg.expo_tau_floor_mult * eps * eps,
                              cfg.expo_prod_floor_mult * eps * eps / lne);
  for (const DyadicLevel& lv : levels) {
    const std::uint64_t R = reps(cfg.expo_R_mult, lne / lv.beta);
    for (std::uint64_t r = 0; r < R; ++r) {
      Elem i = o.draw();
      if (i == 1) continue;
      CompareResult c = compare(o, i, i - 1, lv.alpha / 3.0, eps, cfg);
      // the non-increasing bound for this pair is the length ratio, which is
      // 1 + alpha only up to integer rounding of the interval lengths
      if (c.at_least(caps[i - 2] * (1.0 + 0.75 * lv.alpha))) return false;
    }
  }
  return true;
}

MonotoneResult test_monotone(OracleHandle& h, double eps, const Config& cfg) {
  if (eps <= 0.0 || eps >= 0.5) throw std::invalid_argument("bad eps");
  const double alpha = eps / 4.0;
  Decomposition dec = oblivious_decomposition(h.n(), alpha);
  MonotoneResult res;
  res.flat_dist = dist_to_flat(h, dec, eps, cfg);
  res.expo_ok = res.flat_dist <= eps / 2.0 && expo_tester(h, dec, eps, cfg);
  res.accept = res.flat_dist <= eps / 2.0 && res.expo_ok;
  return res;
}

}  // namespace condsense
