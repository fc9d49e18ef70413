#include "condsense/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace condsense {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

OracleHandle::OracleHandle(const Distribution& target, std::uint64_t master_seed,
                           std::uint64_t ordinal)
    : target_(target), rng_(splitmix64(master_seed ^ ordinal)) {}

double OracleHandle::uniform01() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
}

void OracleHandle::set_cache_capacity(std::size_t cap) {
  cache_cap_ = cap == 0 ? 1 : cap;
  while (lru_.size() > cache_cap_) {
    cache_.erase(lru_.back().first);
    lru_.pop_back();
  }
}

Elem OracleHandle::samp() {
  ++ledger_.samp_count;
  return static_cast<Elem>(target_.quantile(uniform01()));
}

namespace {
std::uint64_t hash_set(const std::vector<Elem>& S) {
  std::uint64_t h = splitmix64(S.size());
  for (Elem e : S) h = splitmix64(h ^ e);
  return h;
}
}  // namespace

const OracleHandle::CachedSet& OracleHandle::lookup(const std::vector<Elem>& S) {
  std::uint64_t key = hash_set(S);
  auto it = cache_.find(key);
  if (it != cache_.end()) {
    lru_.splice(lru_.begin(), lru_, it->second);
    return it->second->second;
  }
  CachedSet cs;
  cs.cum.resize(S.size() + 1);
  cs.cum[0] = 0.0;
  for (std::size_t i = 0; i < S.size(); ++i)
    cs.cum[i + 1] = cs.cum[i] + target_.mass(S[i]);
  cs.total = cs.cum.back();
  lru_.emplace_front(key, std::move(cs));
  cache_[key] = lru_.begin();
  if (lru_.size() > cache_cap_) {
    cache_.erase(lru_.back().first);
    lru_.pop_back();
  }
  return lru_.front().second;
}

double OracleHandle::set_mass(const std::vector<Elem>& S) { return lookup(S).total; }

Elem OracleHandle::cond(const std::vector<Elem>& S) {
  if (S.empty()) throw DistError("cond on empty set");
  ++ledger_.cond_count;
  const CachedSet& cs = lookup(S);
  if (cs.total <= 0.0) throw DistError("cond on zero-mass set");
  double u = uniform01() * cs.total;
  // first i with cum[i] > u
  std::size_t lo = 1, hi = S.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (cs.cum[mid] > u) hi = mid; else lo = mid + 1;
  }
  return S[lo - 1];
}

Elem OracleHandle::pcond(Elem x, Elem y) {
  if (x == y) throw DistError("pcond needs distinct elements");
  ++ledger_.pcond_count;
  double mx = target_.mass(x), my = target_.mass(y);
  if (mx + my <= 0.0) throw DistError("pcond on zero-mass pair");
  return uniform01() * (mx + my) < mx ? x : y;
}

std::uint64_t OracleHandle::binomial(std::uint64_t k, double p) {
  if (k == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return k;
  std::binomial_distribution<std::uint64_t> bin(k, p);
  return bin(rng_);
}

std::uint64_t OracleHandle::runlength(double p_num, double p_den, std::uint64_t cap,
                                      std::uint64_t& calls) {
  // count num-hits before the first den-hit, never issuing more than cap calls
  if (cap == 0) { calls = 0; return 0; }
  double s = p_num + p_den;
  if (s <= 0.0) throw DistError("conditional draw over zero mass");
  double q = p_den / s;
  std::uint64_t g;
  if (q <= 0.0) {
    g = cap;  // never terminates, the cap is the only stop
  } else if (q >= 1.0) {
    g = 0;
  } else {
    std::geometric_distribution<std::uint64_t> geo(q);
    g = geo(rng_);
  }
  if (g >= cap) { calls = cap; return cap; }
  calls = g + 1;
  return g;
}

std::uint64_t OracleHandle::pcond_count(Elem x, Elem y, std::uint64_t k) {
  if (x == y) throw DistError("pcond needs distinct elements");
  double mx = target_.mass(x), my = target_.mass(y);
  if (mx + my <= 0.0) throw DistError("pcond on zero-mass pair");
  ledger_.pcond_count += k;
  return binomial(k, mx / (mx + my));
}

std::uint64_t OracleHandle::pcond_runlength(Elem num, Elem den, std::uint64_t cap) {
  if (num == den) throw DistError("pcond needs distinct elements");
  std::uint64_t calls = 0;
  std::uint64_t g = runlength(target_.mass(num), target_.mass(den), cap, calls);
  ledger_.pcond_count += calls;
  return g;
}

std::uint64_t OracleHandle::cond_split_count(const std::vector<Elem>& A,
                                             const std::vector<Elem>& B,
                                             std::uint64_t k) {
  double ma = set_mass(A), mb = set_mass(B);
  if (ma + mb <= 0.0) throw DistError("cond on zero-mass set");
  ledger_.cond_count += k;
  return binomial(k, ma / (ma + mb));
}

std::uint64_t OracleHandle::cond_split_runlength(const std::vector<Elem>& A,
                                                 const std::vector<Elem>& B,
                                                 std::uint64_t cap) {
  std::uint64_t calls = 0;
  std::uint64_t g = runlength(set_mass(A), set_mass(B), cap, calls);
  ledger_.cond_count += calls;
  return g;
}

std::uint64_t OracleHandle::samp_member_count(const std::vector<Elem>& S,
                                              std::uint64_t k) {
  ledger_.samp_count += k;
  return binomial(k, set_mass(S));
}

double PairOracle::uniform01() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng());
}

IntervalOracle::IntervalOracle(OracleHandle& h, Elem lo, Elem hi) : h_(h), lo_(lo) {
  if (lo < 1 || hi > h.n() || lo > hi) throw DistError("bad interval");
  interval_.reserve(hi - lo + 1);
  for (Elem i = lo; i <= hi; ++i) interval_.push_back(i);
}

Elem IntervalOracle::draw() { return h_.cond(interval_) - lo_ + 1; }

Elem IntervalOracle::pair(Elem x, Elem y) {
  return h_.pcond(x + lo_ - 1, y + lo_ - 1) - lo_ + 1;
}

std::uint64_t IntervalOracle::pair_count(Elem x, Elem y, std::uint64_t k) {
  return h_.pcond_count(x + lo_ - 1, y + lo_ - 1, k);
}

std::uint64_t IntervalOracle::pair_runlength(Elem num, Elem den, std::uint64_t cap) {
  return h_.pcond_runlength(num + lo_ - 1, den + lo_ - 1, cap);
}

}  // namespace condsense
