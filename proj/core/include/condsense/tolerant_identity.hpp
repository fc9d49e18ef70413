#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "condsense/config.hpp"
#include "condsense/oracle.hpp"

namespace condsense {

// Estimates the total variation distance to a known reference distribution
// using full conditional access. The reference is kept sorted by ascending
// mass; every stage works on a "view": the target conditioned on a subset
// of the sorted domain, addressed by local indices 1..M.

struct SortedReference {
  Distribution dstar;            // masses ascending
  std::vector<Elem> perm;        // sorted index -> original index
  std::vector<Elem> inv;         // original index -> sorted index
};

SortedReference sort_reference(const Distribution& dstar);

// Prefix partition used to quotient [z] into blocks of comparable reference
// mass. Ranges are inclusive local index pairs; the last block is {z}.
struct GreedyPartition {
  std::vector<std::pair<Elem, Elem>> blocks;
  std::size_t k() const { return blocks.size(); }
};

GreedyPartition greedy_partition(const std::vector<double>& pstar, Elem z);
GreedyPartition greedy_partition(const SortedReference& ref, Elem z);

// Target conditioned on an ascending subset of the sorted domain.
class TiView {
 public:
  TiView(OracleHandle& h, const SortedReference& ref, std::vector<Elem> members);

  std::size_t size() const { return members_.size(); }
  double pstar(Elem local) const { return pstar_[local - 1]; }
  double pstar_prefix(Elem local) const;  // renormalized reference prefix mass
  const std::vector<Elem>& members() const { return members_; }
  OracleHandle& handle() const { return *h_; }

  // original-index element sets for conditioning
  std::vector<Elem> prefix_set(Elem z) const;
  std::vector<Elem> range_set(Elem lo, Elem hi) const;

 private:
  OracleHandle* h_;
  std::vector<Elem> members_;   // sorted-space ids, ascending
  std::vector<double> pstar_;   // renormalized reference masses
  std::vector<double> pstar_cum_;
  std::vector<Elem> orig_;      // original index per local position
  friend class BlockOracle;
};

// PairOracle over the blocks of a greedy partition of a view prefix.
// Natural draws and pair draws are both realized with COND on the
// underlying target.
class BlockOracle : public PairOracle {
 public:
  BlockOracle(const TiView& view, const GreedyPartition& part);
  std::size_t n() const override { return sets_.size(); }
  Elem draw() override;
  Elem pair(Elem a, Elem b) override;
  std::uint64_t pair_count(Elem a, Elem b, std::uint64_t k) override;
  std::uint64_t pair_runlength(Elem num, Elem den, std::uint64_t cap) override;
  std::mt19937_64& rng() override;

 private:
  Elem locate(Elem original) const;
  const TiView* view_;
  GreedyPartition part_;
  std::vector<std::vector<Elem>> sets_;  // original-index elements per block
  std::vector<Elem> union_set_;          // the whole prefix
  std::unordered_map<Elem, Elem> block_of_;
};

// fraction of the view's mass on the local prefix [z]
double est1(const TiView& view, double eps, double delta, Elem z, const Config& cfg);

// block index with pinnable mass plus its refined relative mass estimate
std::pair<Elem, double> est2(BlockOracle& q, double eps, double delta,
                             const Config& cfg);

// ratio of the last block's mass to block j's
double est3(BlockOracle& q, double eps, double delta, Elem j, const Config& cfg);

struct EstOutcome {
  bool shortcut = false;  // the weighted mass below z is negligible
  Elem prefix_end = 0;    // set when shortcut
  double x = 0.0;         // estimate of c1 P(z) / P*(z) otherwise
};

EstOutcome est(const TiView& view, double eps, double delta, Elem z, double c1,
               double c2, const Config& cfg);

struct PDResult {
  std::vector<Elem> s_local;  // local indices of the resolved set
  double estimate = 0.0;      // its weighted min-sum
};

PDResult partial_determining(const TiView& view, double eps, double c1, double c2,
                             const Config& cfg);

struct TITrace {
  std::vector<double> c1_track;
  std::vector<double> c2_track;
};

double tolerant_id(OracleHandle& h, const Distribution& dstar, double eps,
                   const Config& cfg, TITrace* trace = nullptr);

}  // namespace condsense
