#include "condsense/paircond_identity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "condsense/primitives.hpp"

namespace condsense {

namespace {

// k such that 2^-k < p <= 2^-(k-1), with the boundary nudged back into the
// window after the floating-point log
int dyadic_index(double p) {
  int k = static_cast<int>(std::floor(-std::log2(p))) + 1;
  while (std::ldexp(1.0, -k) >= p) ++k;
  while (k > 1 && std::ldexp(1.0, -(k - 1)) < p) --k;
  return k;
}

std::uint64_t marginal_samples(int K, double eps, const Config& cfg) {
  return reps(cfg.vv_mult,
              std::sqrt(static_cast<double>(K + 1)) / ((eps / 10.0) * (eps / 10.0)));
}

}  // namespace

BucketPartition bucket_partition(const Distribution& dstar, double eps) {
  if (eps <= 0.0 || eps > 0.5) throw std::invalid_argument("bad eps");
  const std::size_t N = dstar.size();
  BucketPartition part;
  part.K = static_cast<int>(
      std::ceil(std::log2(10.0 * static_cast<double>(N) / eps)));
  part.ranges.assign(part.K + 1, {});
  part.ref_mass.assign(part.K + 1, 0.0);
  part.sizes.assign(part.K + 1, 0);

  // walk runs of equal reference mass so block-compressed references stay
  // compressed in the partition
  std::size_t i = 1;
  while (i <= N) {
    double p = dstar.mass(i);
    std::size_t j = i;
    while (j < N && dstar.mass(j + 1) == p) ++j;
    int k = p <= 0.0 ? part.K + 1 : std::min(dyadic_index(p), part.K + 1);
    auto& r = part.ranges[k - 1];
    if (!r.empty() && r.back().second + 1 == i) {
      r.back().second = static_cast<Elem>(j);
    } else {
      r.emplace_back(static_cast<Elem>(i), static_cast<Elem>(j));
    }
    part.ref_mass[k - 1] += p * static_cast<double>(j - i + 1);
    part.sizes[k - 1] += j - i + 1;
    i = j + 1;
  }
  return part;
}

int bucket_of(const BucketPartition& part, const Distribution& dstar, Elem i) {
  double p = dstar.mass(i);
  if (p <= 0.0) return part.K + 1;
  return std::min(dyadic_index(p), part.K + 1);
}

bool small_support_identity(const std::vector<int>& samples,
                            const std::vector<double>& sstar, double eps,
                            const Config& cfg) {
  const int K = static_cast<int>(sstar.size()) - 1;
  const std::uint64_t want = marginal_samples(K, eps, cfg);
  if (samples.size() != want)
    throw std::invalid_argument("marginal test fed the wrong sample count");

  auto stat = [&](const std::vector<std::uint64_t>& counts) {
    double chi = 0.0;
    for (std::size_t k = 0; k < sstar.size(); ++k) {
      double e = static_cast<double>(want) * sstar[k];
      if (e <= 0.0) {
        if (counts[k] > 0) chi += 1e18;  // mass where the reference has none
        continue;
      }
      double d = static_cast<double>(counts[k]) - e;
      chi += d * d / e;
    }
    return chi;
  };

  std::vector<std::uint64_t> counts(sstar.size(), 0);
  for (int s : samples) {
    if (s < 1 || s > static_cast<int>(sstar.size()))
      throw std::invalid_argument("bucket index out of range");
    ++counts[s - 1];
  }

  // null cutoff by simulation at a pinned seed, cached per marginal
  static std::map<std::pair<std::vector<double>, std::uint64_t>, double> cache;
  auto key = std::make_pair(sstar, want);
  auto it = cache.find(key);
  double cutoff;
  if (it != cache.end()) {
    cutoff = it->second;
  } else {
    std::mt19937_64 rng(0xca11b7a7edULL);
    const int sims = static_cast<int>(cfg.vv_null_sims);
    std::vector<double> stats(sims);
    std::vector<std::uint64_t> c(sstar.size());
    for (int s = 0; s < sims; ++s) {
      std::uint64_t left = want;
      double rest = 1.0;
      for (std::size_t k = 0; k < sstar.size(); ++k) {
        double p = rest > 0.0 ? std::min(1.0, sstar[k] / rest) : 0.0;
        std::uint64_t x = 0;
        if (left > 0 && p > 0.0) {
          if (p >= 1.0) x = left;
          else x = std::binomial_distribution<std::uint64_t>(left, p)(rng);
        }
        c[k] = x;
        left -= x;
        rest -= sstar[k];
      }
      stats[s] = stat(c);
    }
    std::sort(stats.begin(), stats.end());
    auto q = static_cast<std::size_t>(cfg.vv_quantile * (sims - 1));
    cutoff = stats[q];
    cache[key] = cutoff;
  }
  return stat(counts) <= cutoff;
}

namespace {

// uniform element of a bucket; algorithm-side randomness over the known
// reference, no oracle charge
Elem uniform_in_bucket(const BucketPartition& part, int k, std::mt19937_64& rng) {
  std::uint64_t pick =
      std::uniform_int_distribution<std::uint64_t>(0, part.sizes[k - 1] - 1)(rng);
  for (const auto& [lo, hi] : part.ranges[k - 1]) {
    std::uint64_t len = hi - lo + 1;
    if (pick < len) return static_cast<Elem>(lo + pick);
    pick -= len;
  }
  throw std::logic_error("bucket size out of sync");
}

}  // namespace

bool pcond_id(OracleHandle& h, const Distribution& dstar, double eps,
              const Config& cfg, PcondIdTrace* trace) {
  if (eps <= 0.0 || eps > 0.5) throw std::invalid_argument("bad eps");
  if (dstar.size() != h.n()) throw DistError("domain size mismatch");

  BucketPartition part = bucket_partition(dstar, eps);
  const std::uint64_t S = marginal_samples(part.K, eps, cfg);
  std::vector<int> samples;
  samples.reserve(S);
  for (std::uint64_t s = 0; s < S; ++s)
    samples.push_back(bucket_of(part, dstar, h.samp()));
  bool marginal = small_support_identity(samples, part.ref_mass, eps, cfg);
  if (trace) trace->marginal_ok = marginal;
  if (!marginal) return false;

  const double lne = std::log(1.0 / eps);
  auto levels = dyadic_levels(eps, cfg.pcid_alpha_floor_mult * eps,
                              cfg.pcid_prod_floor_mult * eps / lne);
  for (const DyadicLevel& lv : levels) {
    const std::uint64_t R = reps(cfg.pcid_R_mult, lne / lv.beta);
    const std::uint64_t m = reps(cfg.pcid_pair_mult, lne / (lv.alpha * lv.alpha));
    for (std::uint64_t r = 0; r < R; ++r) {
      Elem i = h.samp();
      int k = bucket_of(part, dstar, i);
      if (k > part.K || part.sizes[k - 1] <= 1) continue;
      Elem j = uniform_in_bucket(part, k, h.rng());
      if (j == i) continue;
      double c = static_cast<double>(h.pcond_count(i, j, m)) /
                 static_cast<double>(m);
      double expected = dstar.mass(i) / (dstar.mass(i) + dstar.mass(j));
      if (trace) ++trace->pair_checks;
      if (std::fabs(c - expected) >= 2.0 * lv.alpha / 3.0) return false;
    }
  }
  return true;
}

}  // namespace condsense
