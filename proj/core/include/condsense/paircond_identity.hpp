#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "condsense/config.hpp"
#include "condsense/oracle.hpp"

namespace condsense {

// Non-tolerant identity test against a known reference using only SAMP and
// PAIRCOND. The domain is bucketed by dyadic windows of reference mass; a
// small-support test handles the bucket marginal and pairwise ratio checks
// handle the within-bucket shape.

struct BucketPartition {
  int K = 0;  // dyadic buckets 1..K plus a tail at K+1
  // contiguous index ranges per bucket; entry k-1 holds S_k, entry K the tail
  std::vector<std::vector<std::pair<Elem, Elem>>> ranges;
  std::vector<double> ref_mass;       // reference mass per bucket
  std::vector<std::uint64_t> sizes;   // element count per bucket
};

BucketPartition bucket_partition(const Distribution& dstar, double eps);

// bucket index in 1..K+1 for an element, from its reference mass
int bucket_of(const BucketPartition& part, const Distribution& dstar, Elem i);

// Identity test for the bucket marginal: Pearson statistic against the
// reference marginal, cutoff fixed by simulating the null at a pinned
// calibration seed (cached per process). Returns accept.
bool small_support_identity(const std::vector<int>& samples,
                            const std::vector<double>& sstar, double eps,
                            const Config& cfg);

struct PcondIdTrace {
  bool marginal_ok = false;
  int pair_checks = 0;
};

// accept iff no stage finds a discrepancy
bool pcond_id(OracleHandle& h, const Distribution& dstar, double eps,
              const Config& cfg, PcondIdTrace* trace = nullptr);

}  // namespace condsense
