#pragma once

#include <utility>
#include <vector>

#include "condsense/config.hpp"
#include "condsense/oracle.hpp"

namespace condsense {

// Tests whether the target is close to non-increasing using SAMP plus COND
// on interval unions. The domain is cut obliviously into intervals of
// geometrically growing length; closeness then splits into flatness within
// intervals and a growth condition across them.

struct Decomposition {
  std::vector<std::pair<Elem, Elem>> intervals;  // inclusive, tiling [1, N]

  std::size_t k() const { return intervals.size(); }
  Elem interval_of(Elem e) const;  // 1-based interval index
};

// interval lengths floor((1+alpha)^j), the last clipped to the domain
Decomposition oblivious_decomposition(std::size_t N, double alpha);

// consecutive length ratios |I_{j+1}| / |I_j|; these bound the adjacent
// reduced-mass ratios of any non-increasing distribution, and exceed
// 1 + alpha where integer rounding makes the lengths jump
std::vector<double> ratio_caps(const Decomposition& dec);

// mass spread evenly within each interval; same domain
Distribution flatten(const Distribution& d, const Decomposition& dec);

// one point per interval carrying its mass
Distribution reduced(const Distribution& d, const Decomposition& dec);

// PairOracle over the intervals: draw = SAMP mapped to its interval, pair
// draws realized with COND on the union of the two intervals.
class ReducedOracle : public PairOracle {
 public:
  ReducedOracle(OracleHandle& h, const Decomposition& dec);
  std::size_t n() const override { return sets_.size(); }
  Elem draw() override;
  Elem pair(Elem a, Elem b) override;
  std::uint64_t pair_count(Elem a, Elem b, std::uint64_t k) override;
  std::uint64_t pair_runlength(Elem num, Elem den, std::uint64_t cap) override;
  std::mt19937_64& rng() override { return h_.rng(); }

 private:
  OracleHandle& h_;
  Decomposition dec_;
  std::vector<std::vector<Elem>> sets_;
};

// average distance from uniform of the conditional distribution within the
// interval of a sampled element
double dist_to_flat(OracleHandle& h, const Decomposition& dec, double eps,
                    const Config& cfg);

// checks the across-interval growth condition on the reduced distribution;
// false means an adjacent mass ratio confidently above its length-ratio cap
// was found
bool expo_tester(OracleHandle& h, const Decomposition& dec, double eps,
                 const Config& cfg);

struct MonotoneResult {
  bool accept = false;
  double flat_dist = 0.0;
  bool expo_ok = false;
};

MonotoneResult test_monotone(OracleHandle& h, double eps, const Config& cfg);

}  // namespace condsense
