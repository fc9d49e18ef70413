#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace condsense {

using Elem = std::uint32_t;  // 1-based element index

struct DistError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A run of consecutive elements sharing one per-element mass. Used to keep
// very large, mostly-flat reference distributions in memory.
struct Block {
  std::size_t start = 0;  // first element, 1-based
  std::size_t len = 0;
  double elt_mass = 0.0;
};

// Finite distribution over [N], stored either as a dense probability table
// with a prefix-sum index or as a sorted list of constant-mass blocks.
class Distribution {
 public:
  Distribution() = default;

  static Distribution from_weights(std::vector<double> weights);
  static Distribution from_blocks(std::vector<Block> blocks);
  static Distribution load_csv(const std::string& path);
  static Distribution load_json(const std::string& path);

  std::size_t size() const { return n_; }
  bool is_dense() const { return dense_; }

  double mass(std::size_t i) const;          // D(i), i in 1..N
  double prefix(std::size_t i) const;        // D([i]); prefix(0) == 0
  double range_mass(std::size_t lo, std::size_t hi) const;  // inclusive
  std::size_t quantile(double u) const;      // inverse CDF, u in [0,1)

  const std::vector<double>& probs() const;
  const std::vector<Block>& blocks() const;

 private:
  bool dense_ = true;
  std::size_t n_ = 0;
  std::vector<double> probs_;
  std::vector<double> cum_;          // cum_[i] = D([i]), size n_+1
  std::vector<Block> blocks_;
  std::vector<double> block_cum_;    // cumulative mass through each block
  void validate() const;
};

// Distribution conditioned on a set, re-indexed 1..|S| with a map back to
// the original indices.
struct Restriction {
  Distribution dist;
  std::vector<Elem> index_map;  // local i -> original index
};

Restriction restrict(const Distribution& d, const std::vector<Elem>& S);

}  // namespace condsense
