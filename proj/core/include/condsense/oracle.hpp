#pragma once

#include <cstdint>
#include <list>
#include <memory>
#include <random>
#include <unordered_map>
#include <vector>

#include "condsense/distribution.hpp"

namespace condsense {

struct QueryLedger {
  std::uint64_t samp_count = 0;
  std::uint64_t cond_count = 0;
  std::uint64_t pcond_count = 0;
  std::uint64_t total() const { return samp_count + cond_count + pcond_count; }
};

std::uint64_t splitmix64(std::uint64_t x);

// Simulated SAMP/COND/PAIRCOND access to a fixed target distribution with
// exact per-oracle call accounting.
//
// Besides the three single-call oracles there are batched forms that draw
// the aggregate outcome of a fixed pattern of repeated calls in one shot
// (binomial for "how many of k pair calls returned x", geometric for "how
// many x's before the first y"). They are distributed identically to the
// call-by-call loop and charge the ledger the number of calls the loop
// would have made.
class OracleHandle {
 public:
  OracleHandle(const Distribution& target, std::uint64_t master_seed,
               std::uint64_t ordinal = 0);

  std::size_t n() const { return target_.size(); }
  const Distribution& target() const { return target_; }

  Elem samp();
  Elem cond(const std::vector<Elem>& S);
  Elem pcond(Elem x, Elem y);

  // number of x-returns among k pcond(x, y) calls; charges k pcond calls
  std::uint64_t pcond_count(Elem x, Elem y, std::uint64_t k);
  // number of num-returns before the first den-return, capped; the loop
  // stops after cap calls either way
  std::uint64_t pcond_runlength(Elem num, Elem den, std::uint64_t cap);

  // same two patterns for cond(A u B) draws classified by membership in A;
  // A and B must be disjoint
  std::uint64_t cond_split_count(const std::vector<Elem>& A,
                                 const std::vector<Elem>& B, std::uint64_t k);
  std::uint64_t cond_split_runlength(const std::vector<Elem>& A,
                                     const std::vector<Elem>& B, std::uint64_t cap);

  // number of k natural samples landing in S; charges k samp calls
  std::uint64_t samp_member_count(const std::vector<Elem>& S, std::uint64_t k);

  QueryLedger& ledger() { return ledger_; }
  const QueryLedger& ledger() const { return ledger_; }
  std::mt19937_64& rng() { return rng_; }
  double uniform01();

  void set_cache_capacity(std::size_t cap);

 private:
  struct CachedSet {
    double total = 0.0;
    std::vector<double> cum;  // size |S|+1
  };
  const CachedSet& lookup(const std::vector<Elem>& S);
  double set_mass(const std::vector<Elem>& S);
  std::uint64_t binomial(std::uint64_t k, double p);
  std::uint64_t runlength(double p_num, double p_den, std::uint64_t cap,
                          std::uint64_t& calls);

  const Distribution& target_;
  QueryLedger ledger_;
  std::mt19937_64 rng_;
  std::size_t cache_cap_ = 64;
  std::list<std::pair<std::uint64_t, CachedSet>> lru_;
  std::unordered_map<std::uint64_t, decltype(lru_)::iterator> cache_;
};

// The sampling surface shared by the estimation primitives: one "natural"
// sample plus two-element conditional draws, over some domain 1..n. The
// pair calls may be backed by PAIRCOND or by COND on small unions; ledger
// charging follows the backing oracle.
class PairOracle {
 public:
  virtual ~PairOracle() = default;
  virtual std::size_t n() const = 0;
  virtual Elem draw() = 0;
  virtual Elem pair(Elem x, Elem y) = 0;
  virtual std::uint64_t pair_count(Elem x, Elem y, std::uint64_t k) = 0;
  virtual std::uint64_t pair_runlength(Elem num, Elem den, std::uint64_t cap) = 0;
  virtual std::mt19937_64& rng() = 0;
  double uniform01();
};

// Full-domain view: draw = SAMP, pair = PAIRCOND.
class SampPcondOracle : public PairOracle {
 public:
  explicit SampPcondOracle(OracleHandle& h) : h_(h) {}
  std::size_t n() const override { return h_.n(); }
  Elem draw() override { return h_.samp(); }
  Elem pair(Elem x, Elem y) override { return h_.pcond(x, y); }
  std::uint64_t pair_count(Elem x, Elem y, std::uint64_t k) override {
    return h_.pcond_count(x, y, k);
  }
  std::uint64_t pair_runlength(Elem num, Elem den, std::uint64_t cap) override {
    return h_.pcond_runlength(num, den, cap);
  }
  std::mt19937_64& rng() override { return h_.rng(); }

 private:
  OracleHandle& h_;
};

// View of the target conditioned on a contiguous interval [lo, hi], with
// local indices 1..(hi-lo+1). draw = COND(interval), pair = PAIRCOND.
class IntervalOracle : public PairOracle {
 public:
  IntervalOracle(OracleHandle& h, Elem lo, Elem hi);
  std::size_t n() const override { return interval_.size(); }
  Elem draw() override;
  Elem pair(Elem x, Elem y) override;
  std::uint64_t pair_count(Elem x, Elem y, std::uint64_t k) override;
  std::uint64_t pair_runlength(Elem num, Elem den, std::uint64_t cap) override;
  std::mt19937_64& rng() override { return h_.rng(); }

 private:
  OracleHandle& h_;
  Elem lo_;
  std::vector<Elem> interval_;
};

}  // namespace condsense
