#include "condsense/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace condsense {

namespace {
constexpr double kSumTol = 1e-9;
}

Distribution Distribution::from_weights(std::vector<double> weights) {
  if (weights.empty()) throw DistError("empty weight vector");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w)) throw DistError("negative or non-finite weight");
    total += w;
  }
  if (total <= 0.0) throw DistError("all-zero weight vector");

  Distribution d;
  d.dense_ = true;
  d.n_ = weights.size();
  d.probs_.resize(d.n_);
  d.cum_.resize(d.n_ + 1);
  d.cum_[0] = 0.0;
  for (std::size_t i = 0; i < d.n_; ++i) {
    d.probs_[i] = weights[i] / total;
    d.cum_[i + 1] = d.cum_[i] + d.probs_[i];
  }
  // pin the tail exactly so quantile() cannot fall off the end
  d.cum_[d.n_] = 1.0;
  d.validate();
  return d;
}

Distribution Distribution::from_blocks(std::vector<Block> blocks) {
  if (blocks.empty()) throw DistError("empty block list");
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& a, const Block& b) { return a.start < b.start; });
  std::size_t next = 1;
  double total = 0.0;
  for (const Block& b : blocks) {
    if (b.start != next || b.len == 0) throw DistError("blocks must tile 1..N contiguously");
    if (b.elt_mass < 0.0 || !std::isfinite(b.elt_mass)) throw DistError("bad block mass");
    next = b.start + b.len;
    total += b.elt_mass * static_cast<double>(b.len);
  }
  if (total <= 0.0) throw DistError("all-zero block list");

  Distribution d;
  d.dense_ = false;
  d.n_ = next - 1;
  d.blocks_ = std::move(blocks);
  d.block_cum_.resize(d.blocks_.size() + 1);
  d.block_cum_[0] = 0.0;
  for (std::size_t k = 0; k < d.blocks_.size(); ++k) {
    d.blocks_[k].elt_mass /= total;
    d.block_cum_[k + 1] =
        d.block_cum_[k] + d.blocks_[k].elt_mass * static_cast<double>(d.blocks_[k].len);
  }
  d.block_cum_.back() = 1.0;
  return d;
}

void Distribution::validate() const {
  if (dense_ && std::fabs(cum_.back() - 1.0) > kSumTol)
    throw DistError("probabilities do not sum to 1");
}

double Distribution::mass(std::size_t i) const {
  if (i < 1 || i > n_) throw DistError("index out of range");
  if (dense_) return probs_[i - 1];
  // find the block containing i
  std::size_t lo = 0, hi = blocks_.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (blocks_[mid].start <= i) lo = mid; else hi = mid - 1;
  }
  return blocks_[lo].elt_mass;
}

double Distribution::prefix(std::size_t i) const {
  if (i == 0) return 0.0;
  if (i > n_) throw DistError("index out of range");
  if (dense_) return cum_[i];
  std::size_t lo = 0, hi = blocks_.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (blocks_[mid].start <= i) lo = mid; else hi = mid - 1;
  }
  const Block& b = blocks_[lo];
  return block_cum_[lo] + b.elt_mass * static_cast<double>(i - b.start + 1);
}

double Distribution::range_mass(std::size_t lo, std::size_t hi) const {
  if (lo < 1 || hi > n_ || lo > hi) throw DistError("bad range");
  return prefix(hi) - prefix(lo - 1);
}

std::size_t Distribution::quantile(double u) const {
  if (u < 0.0) u = 0.0;
  if (u >= 1.0) u = std::nextafter(1.0, 0.0);
  if (dense_) {
    // first i with cum_[i] > u
    std::size_t lo = 1, hi = n_;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (cum_[mid] > u) hi = mid; else lo = mid + 1;
    }
    return lo;
  }
  std::size_t lo = 0, hi = blocks_.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (block_cum_[mid + 1] > u) hi = mid; else lo = mid + 1;
  }
  const Block& b = blocks_[lo];
  double within = (u - block_cum_[lo]) / b.elt_mass;
  auto off = static_cast<std::size_t>(within);
  if (off >= b.len) off = b.len - 1;
  return b.start + off;
}

const std::vector<double>& Distribution::probs() const {
  if (!dense_) throw DistError("block-compressed distribution has no dense table");
  return probs_;
}

const std::vector<Block>& Distribution::blocks() const {
  if (dense_) throw DistError("dense distribution has no block list");
  return blocks_;
}

Distribution Distribution::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DistError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw DistError("empty file " + path);
  // header: index,prob
  std::vector<double> w;
  std::size_t expect = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string idx, prob;
    if (!std::getline(ss, idx, ',') || !std::getline(ss, prob, ','))
      throw DistError("malformed row in " + path);
    if (static_cast<std::size_t>(std::stoull(idx)) != expect)
      throw DistError("indices must be 1-based and contiguous in " + path);
    w.push_back(std::stod(prob));
    ++expect;
  }
  return from_weights(std::move(w));
}

Distribution Distribution::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DistError("cannot open " + path);
  nlohmann::json j;
  in >> j;
  if (!j.is_array()) throw DistError("expected a JSON array of reals in " + path);
  std::vector<double> w;
  for (const auto& v : j) w.push_back(v.get<double>());
  return from_weights(std::move(w));
}

Restriction restrict(const Distribution& d, const std::vector<Elem>& S) {
  if (S.empty()) throw DistError("empty restriction set");
  std::vector<double> w;
  w.reserve(S.size());
  double total = 0.0;
  for (Elem i : S) {
    double m = d.mass(i);
    w.push_back(m);
    total += m;
  }
  if (total <= 0.0) throw DistError("restriction to zero-mass set");
  Restriction r;
  r.dist = Distribution::from_weights(std::move(w));
  r.index_map = S;
  return r;
}

}  // namespace condsense
