#pragma once

#include <cstdint>
#include <vector>

#include "condsense/config.hpp"
#include "condsense/oracle.hpp"

namespace condsense {

// Ratio estimate D(x)/D(y). The infinite case (y never returned) is a tag,
// not a float; arithmetic callers must branch on it.
struct CompareResult {
  double alpha = 0.0;
  bool infinite = false;
  std::uint64_t reps_used = 0;

  bool in_window(double lo, double hi) const {
    return !infinite && alpha > lo && alpha < hi;
  }
  bool at_least(double v) const { return infinite || alpha >= v; }
  bool at_most(double v) const { return !infinite && alpha <= v; }
};

// Estimates D(x)/D(y) from repeated pair draws: k = mult * gamma^-2 * ln(1/eps)
// draws, returns c/(k-c) where c counts x-returns.
CompareResult compare(PairOracle& o, Elem x, Elem y, double gamma, double eps,
                      const Config& cfg);

// Counts numerator-returns before the first denominator-return under
// repeated pair draws; the count and the number of draws are both capped.
// The uncapped count has mean D(num)/D(den).
std::uint64_t geometric_count(PairOracle& o, Elem num, Elem den, std::uint64_t cap);

std::uint64_t geom_cap(double scale, double eps, const Config& cfg);

struct DyadicLevel {
  double alpha;  // 2^-a
  double beta;   // 2^-b
  int a;
  int b;
};

// All dyadic pairs (2^-a, 2^-b) with 2^-a >= alpha_floor and product
// >= product_floor, in decreasing-alpha then decreasing-beta order.
std::vector<DyadicLevel> dyadic_levels(double eps, double alpha_floor,
                                       double product_floor);

// round(mult * value) with a floor, shared by all repetition-count formulas
std::uint64_t reps(double mult, double value, double floor_count = 1.0);

}  // namespace condsense
