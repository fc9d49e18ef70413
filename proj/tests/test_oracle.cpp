#include <cmath>

#include "condsense/oracle.hpp"
#include "doctest.h"

using namespace condsense;

TEST_CASE("ledger exactness") {
  auto d = Distribution::from_weights({1, 2, 3, 4});
  OracleHandle h(d, 10);
  for (int i = 0; i < 7; ++i) h.samp();
  for (int i = 0; i < 5; ++i) h.cond({1, 3});
  for (int i = 0; i < 3; ++i) h.pcond(2, 4);
  h.pcond_count(2, 4, 11);
  h.cond_split_count({1}, {2}, 13);
  CHECK(h.ledger().samp_count == 7);
  CHECK(h.ledger().cond_count == 5 + 13);
  CHECK(h.ledger().pcond_count == 3 + 11);
  CHECK(h.ledger().total() == 7 + 18 + 14);
}

TEST_CASE("cond pair agrees with pcond") {
  auto d = Distribution::from_weights({0.3, 0.1, 0.6});
  OracleHandle h(d, 11);
  const int n = 100000;
  int a = 0, b = 0;
  for (int i = 0; i < n; ++i) {
    if (h.cond({1, 2}) == 1) ++a;
    if (h.pcond(1, 2) == 1) ++b;
  }
  // both are Binomial(n, 0.75); 3 sigma ~ 0.0041
  CHECK(std::fabs(a - b) / double(n) < 3.0 * 0.0041);
}

TEST_CASE("runlength cap charges the loop's calls") {
  auto d = Distribution::from_weights({1, 1});
  OracleHandle h(d, 12);
  std::uint64_t g = h.pcond_runlength(1, 2, 5);
  CHECK(g <= 5);
  // g < cap means the loop stopped at the first denominator: g+1 calls
  CHECK(h.ledger().pcond_count == (g < 5 ? g + 1 : 5));
}

TEST_CASE("restriction cache keeps answers consistent") {
  auto d = Distribution::from_weights({1, 2, 3, 4, 5, 6});
  OracleHandle h(d, 13);
  h.set_cache_capacity(2);
  // cycle through more sets than the capacity holds
  double acc = 0.0;
  const int n = 30000;
  for (int i = 0; i < n; ++i) {
    acc += h.cond({1, 2}) == 2 ? 1.0 : 0.0;
    h.cond({3, 4});
    h.cond({5, 6});
  }
  CHECK(acc / n == doctest::Approx(2.0 / 3).epsilon(0.02));
}

TEST_CASE("interval oracle local indexing") {
  auto d = Distribution::from_weights({0.1, 0.2, 0.3, 0.4});
  OracleHandle h(d, 14);
  IntervalOracle o(h, 3, 4);
  CHECK(o.n() == 2);
  const int n = 50000;
  int c1 = 0;
  for (int i = 0; i < n; ++i)
    if (o.draw() == 1) ++c1;
  CHECK(c1 / double(n) == doctest::Approx(3.0 / 7).epsilon(0.03));

  int p1 = 0;
  for (int i = 0; i < n; ++i)
    if (o.pair(1, 2) == 1) ++p1;
  CHECK(p1 / double(n) == doctest::Approx(3.0 / 7).epsilon(0.03));
  CHECK(h.ledger().cond_count == n);
  CHECK(h.ledger().pcond_count == n);

  CHECK_THROWS_AS(IntervalOracle(h, 3, 5), DistError);
}

TEST_CASE("batched and loop forms share one distribution") {
  auto d = Distribution::from_weights({0.2, 0.8});
  // compare empirical means of the batched count and an explicit loop
  OracleHandle h1(d, 15), h2(d, 16);
  const int reps = 4000, k = 25;
  double batched = 0.0, looped = 0.0;
  for (int r = 0; r < reps; ++r) {
    batched += double(h1.pcond_count(1, 2, k));
    int c = 0;
    for (int i = 0; i < k; ++i)
      if (h2.pcond(1, 2) == 1) ++c;
    looped += c;
  }
  CHECK(batched / reps == doctest::Approx(looped / reps).epsilon(0.02));
  CHECK(h1.ledger().pcond_count == h2.ledger().pcond_count);
}
