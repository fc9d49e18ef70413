#pragma once

#include <utility>
#include <vector>

#include "condsense/config.hpp"
#include "condsense/oracle.hpp"
#include "condsense/primitives.hpp"

namespace condsense {

// Estimates the total variation distance to uniform using only natural
// samples and pairwise conditional draws. All stages run against the
// PairOracle surface so the same pipeline serves the full domain, interval
// restrictions, and block-level views.

struct AnchorEstimate {
  Elem x = 0;
  double d_hat = 0.0;        // coarse mass estimate, about a 1 +- 0.1 factor
  double d_tilde = 0.0;      // refined estimate, filled by single_element
  double gamma1_tilde = 0.0; // estimated acceptance mass under uniform
};

enum class Verdict : int { Minus = -1, Zero = 0, Plus = 1 };

// Anchor search: elements whose mass can be pinned to a constant factor by
// frequency-matching against references from the target and from uniform.
std::vector<AnchorEstimate> constant_approx(PairOracle& o, double eps,
                                            const Config& cfg);

// Three-way classification of z against the anchor: clearly lighter,
// comparable, clearly heavier.
Verdict oracle_classify(PairOracle& o, double eps, const AnchorEstimate& anchor,
                        Elem z, const Config& cfg);

struct SingleElementResult {
  double gamma1_tilde = 0.0;
  double d_tilde = 0.0;
  bool valid = false;  // false when no uniform reference was ever accepted
};
SingleElementResult single_element(PairOracle& o, double eps,
                                   const AnchorEstimate& anchor, const Config& cfg);

// Adaptive-precision mass estimate for z keyed to its distance from 1/n.
double z_estimate(PairOracle& o, double beta, const AnchorEstimate& anchor, Elem z,
                  double eps, const Config& cfg);

// Estimated sum of |D(i) - 1/n| over elements the classifier accepts.
// Refines the anchor in place.
double estimate_close_terms(PairOracle& o, double eps, AnchorEstimate& anchor,
                            const Config& cfg);

// Distance estimate given an anchor with coarse mass near 1/n.
double given_good_elt(PairOracle& o, double eps, const AnchorEstimate& anchor,
                      const Config& cfg);

struct TUTrace {
  int branch = 0;  // 1 empty-anchor, 2 good-anchor, 3 threshold scans
};

double tolerant_unif(PairOracle& o, double eps, const Config& cfg,
                     TUTrace* trace = nullptr);
double tolerant_unif(OracleHandle& h, double eps, const Config& cfg,
                     TUTrace* trace = nullptr);

}  // namespace condsense
