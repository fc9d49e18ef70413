#include "condsense/primitives.hpp"

#include <cmath>
#include <stdexcept>

namespace condsense {

std::uint64_t reps(double mult, double value, double floor_count) {
  double v = std::round(mult * value);
  if (v < floor_count) v = floor_count;
  return static_cast<std::uint64_t>(v);
}

CompareResult compare(PairOracle& o, Elem x, Elem y, double gamma, double eps,
                      const Config& cfg) {
  if (gamma <= 0.0 || gamma >= 1.0) throw std::invalid_argument("compare: bad gamma");
  if (x == y) throw std::invalid_argument("compare: x == y");
  std::uint64_t k =
      reps(cfg.compare_reps_mult, std::log(1.0 / eps) / (gamma * gamma), 2.0);
  std::uint64_t c = o.pair_count(x, y, k);
  CompareResult r;
  r.reps_used = k;
  if (c == k) {
    r.infinite = true;
  } else {
    r.alpha = static_cast<double>(c) / static_cast<double>(k - c);
  }
  return r;
}

std::uint64_t geometric_count(PairOracle& o, Elem num, Elem den, std::uint64_t cap) {
  if (cap < 1) throw std::invalid_argument("geometric_count: cap < 1");
  return o.pair_runlength(num, den, cap);
}

std::uint64_t geom_cap(double scale, double eps, const Config& cfg) {
  double s = scale > 1.0 ? scale : 1.0;
  double v = std::ceil(cfg.geom_cap_mult * s * std::log(1.0 / eps));
  return v < 2.0 ? 2 : static_cast<std::uint64_t>(v);
}

std::vector<DyadicLevel> dyadic_levels(double eps, double alpha_floor,
                                       double product_floor) {
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("dyadic_levels: bad eps");
  if (alpha_floor <= 0.0 || product_floor <= 0.0)
    throw std::invalid_argument("dyadic_levels: floors must be positive");
  std::vector<DyadicLevel> out;
  double alpha = 1.0;
  for (int a = 0; alpha >= alpha_floor; ++a, alpha /= 2.0) {
    double beta = 1.0;
    for (int b = 0; alpha * beta >= product_floor; ++b, beta /= 2.0)
      out.push_back({alpha, beta, a, b});
  }
  if (out.empty()) throw std::invalid_argument("dyadic_levels: empty grid");
  return out;
}

}  // namespace condsense
