#pragma once

#include <vector>

#include "condsense/distribution.hpp"

namespace condsense {

// Exact brute-force ground truth for the quantities the samplers estimate.
// The LP-backed oracles are capped at domain size 200.

double exact_tv(const Distribution& d1, const Distribution& d2);

// the two one-sided forms of the same distance, for identity checks
double tv_positive_part(const Distribution& d1, const Distribution& d2);
double overlap(const Distribution& d1, const Distribution& d2);  // sum of min

double exact_min_sum(const Distribution& d1, const Distribution& d2, double c1,
                     double c2);

struct LPResult {
  double optimum = 0.0;
  Distribution witness;  // nearest member of the constraint class
};

// nearest non-increasing distribution in total variation
LPResult exact_dist_to_monotone(const Distribution& d);

// nearest distribution with p[k+1] <= (1+alpha) p[k] for all k
LPResult exact_dist_to_expo(const Distribution& q, double alpha);

// per-step form: p[k+1] <= ratios[k] * p[k]. Integer interval lengths make
// consecutive length ratios exceed 1+alpha near the small end, so the class
// induced by a decomposition needs its exact ratios, not a uniform cap.
LPResult exact_dist_to_expo(const Distribution& q,
                            const std::vector<double>& ratios);

// sum_i q_i * max(0, 1 - (1+alpha) q_{i-1} / q_i), first term defined 0
double expo_witness_expectation(const Distribution& q, double alpha);

// E over i ~ p, j uniform of |p_i/(p_i+p_j) - p*_i/(p*_i+p*_j)|, 0/0 -> 0
double pair_expectation(const Distribution& p, const Distribution& pstar);

// exact lower bound on the distance to the monotone class via suffix
// deficiencies: any non-increasing q puts at most L/N mass on a length-L
// suffix. Cheap at any N; used where the LP is out of reach.
double monotone_farness_bound(const Distribution& d);

// Small dense two-phase simplex. minimize c.x subject to row constraints,
// x >= 0. rel is one of '<', '>', '='.
struct LPRow {
  std::vector<double> a;
  char rel;
  double b;
};
std::vector<double> solve_lp(const std::vector<double>& c,
                             const std::vector<LPRow>& rows);

}  // namespace condsense
