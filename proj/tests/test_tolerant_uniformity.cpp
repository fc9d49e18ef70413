#include <cmath>
#include <vector>

#include "condsense/tolerant_uniformity.hpp"
#include "doctest.h"

using namespace condsense;

namespace {

Distribution uniform(std::size_t n) {
  return Distribution::from_weights(std::vector<double>(n, 1.0));
}

AnchorEstimate exact_anchor(const Distribution& d, Elem x) {
  AnchorEstimate a;
  a.x = x;
  a.d_hat = d.mass(x);
  a.d_tilde = d.mass(x);
  return a;
}

}  // namespace

TEST_CASE("constant_approx pins near-uniform masses") {
  auto d = uniform(100);
  OracleHandle h(d, 21);
  SampPcondOracle o(h);
  Config cfg;
  auto anchors = constant_approx(o, 0.1, cfg);
  REQUIRE(!anchors.empty());
  for (const auto& a : anchors) {
    CHECK(a.d_hat >= 0.9 * 0.1 / 100.0);
    CHECK(a.d_hat <= 1.1 / (0.1 * 100.0));
    CHECK(a.d_hat == doctest::Approx(1.0 / 100).epsilon(0.35));
  }
}

TEST_CASE("constant_approx rejects a dominating point mass") {
  // the heavy element fails the upper mass window, the rest are never drawn
  std::vector<double> w(50, 1e-12);
  w[6] = 1.0;
  auto d = Distribution::from_weights(std::move(w));
  OracleHandle h(d, 22);
  SampPcondOracle o(h);
  Config cfg;
  CHECK(constant_approx(o, 0.1, cfg).empty());
}

TEST_CASE("oracle_classify three verdicts") {
  // anchor on a unit-weight element, one heavy and one light neighbor
  std::vector<double> w(10, 1.0);
  w[0] = 5.0;
  w[9] = 0.05;
  auto d = Distribution::from_weights(std::move(w));
  OracleHandle h(d, 23);
  SampPcondOracle o(h);
  Config cfg;
  AnchorEstimate a = exact_anchor(d, 2);
  CHECK(oracle_classify(o, 0.1, a, 1, cfg) == Verdict::Plus);
  CHECK(oracle_classify(o, 0.1, a, 3, cfg) == Verdict::Zero);
  CHECK(oracle_classify(o, 0.1, a, 2, cfg) == Verdict::Zero);
  CHECK(oracle_classify(o, 0.1, a, 10, cfg) == Verdict::Minus);

  AnchorEstimate bad = a;
  bad.d_hat = 10.0;  // outside the usable window
  CHECK_THROWS_AS(oracle_classify(o, 0.1, bad, 1, cfg), std::invalid_argument);
}

TEST_CASE("single_element refines the anchor on uniform") {
  auto d = uniform(40);
  OracleHandle h(d, 24);
  SampPcondOracle o(h);
  Config cfg;
  AnchorEstimate a = exact_anchor(d, 7);
  auto res = single_element(o, 0.1, a, cfg);
  REQUIRE(res.valid);
  CHECK(res.gamma1_tilde == doctest::Approx(1.0).epsilon(0.05));
  CHECK(res.d_tilde == doctest::Approx(1.0 / 40).epsilon(0.2));
}

TEST_CASE("z_estimate preconditions and boundary escapes") {
  auto d = uniform(100);
  OracleHandle h(d, 25);
  SampPcondOracle o(h);
  Config cfg;
  AnchorEstimate a = exact_anchor(d, 3);
  const double eps = 1e-4;  // beta validity needs eps <= 1/1600
  CHECK_THROWS_AS(z_estimate(o, eps / 2.0, a, 5, eps, cfg), std::invalid_argument);
  CHECK_THROWS_AS(z_estimate(o, 0.5, a, 5, eps, cfg), std::invalid_argument);
  AnchorEstimate unrefined = a;
  unrefined.d_tilde = 0.0;
  CHECK_THROWS_AS(z_estimate(o, 1.0 / 1600, unrefined, 5, eps, cfg),
                  std::invalid_argument);

  // on uniform the estimate never escapes the shrinking windows
  double est = z_estimate(o, 1.0 / 1600, a, 5, eps, cfg);
  CHECK(est * 100.0 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("z_estimate tracks a heavy element") {
  std::vector<double> w(100, 1.0);
  w[0] = 2.0;
  auto d = Distribution::from_weights(std::move(w));
  OracleHandle h(d, 26);
  SampPcondOracle o(h);
  Config cfg;
  AnchorEstimate a = exact_anchor(d, 50);
  double est = z_estimate(o, 1.0 / 1600, a, 1, 1e-4, cfg);
  CHECK(est == doctest::Approx(2.0 / 101).epsilon(0.15));
}

TEST_CASE("estimate_close_terms on uniform and on a small tilt") {
  Config cfg;
  {
    auto d = uniform(50);
    OracleHandle h(d, 27);
    SampPcondOracle o(h);
    AnchorEstimate a = exact_anchor(d, 11);
    // the refined anchor mass carries ~10% relative noise at K = 2/eps^2,
    // which shows up directly in the close-terms sum
    double w = estimate_close_terms(o, 0.1, a, cfg);
    CHECK(std::fabs(w) < 0.25);
    CHECK(a.gamma1_tilde > 0.9);  // refined in place
  }
  {
    // half the elements at (1+0.1)/n, half at (1-0.1)/n: the close terms sum
    // to sum |D(i) - 1/n| = 0.1
    std::vector<double> w(50, 1.1);
    for (std::size_t i = 25; i < 50; ++i) w[i] = 0.9;
    auto d = Distribution::from_weights(std::move(w));
    OracleHandle h(d, 28);
    SampPcondOracle o(h);
    AnchorEstimate a = exact_anchor(d, 30);
    double est = estimate_close_terms(o, 0.01, a, cfg);
    CHECK(est == doctest::Approx(0.1).epsilon(0.5));
  }
}

TEST_CASE("given_good_elt distances") {
  Config cfg;
  {
    auto d = uniform(60);
    OracleHandle h(d, 29);
    SampPcondOracle o(h);
    double v = given_good_elt(o, 0.1, exact_anchor(d, 4), cfg);
    CHECK(v <= 0.12);
  }
  {
    // alternating (1 +- 0.4)/n, exact distance 0.2
    std::vector<double> w(100);
    for (std::size_t i = 0; i < 100; ++i) w[i] = i % 2 ? 0.6 : 1.4;
    auto d = Distribution::from_weights(std::move(w));
    OracleHandle h(d, 30);
    SampPcondOracle o(h);
    double v = given_good_elt(o, 0.1, exact_anchor(d, 2), cfg);
    CHECK(v == doctest::Approx(0.2).epsilon(0.6));
  }
}

TEST_CASE("tolerant_unif branch coverage") {
  Config cfg;
  {
    auto d = uniform(80);
    OracleHandle h(d, 31);
    TUTrace tr;
    double v = tolerant_unif(h, 0.1, cfg, &tr);
    CHECK(tr.branch == 2);
    CHECK(v <= 0.15);
  }
  {
    std::vector<double> w(50, 1e-12);
    w[0] = 1.0;
    auto d = Distribution::from_weights(std::move(w));
    OracleHandle h(d, 32);
    TUTrace tr;
    double v = tolerant_unif(h, 0.1, cfg, &tr);
    CHECK(tr.branch == 1);
    CHECK(v == 1.0);
  }
  {
    // no anchor lands in the good window: light elements fall below the
    // search floor, heavy ones sit above 9/(5n)
    std::vector<double> w(100);
    for (std::size_t i = 0; i < 100; ++i) w[i] = i % 2 ? 0.05 : 1.95;
    auto d = Distribution::from_weights(std::move(w));
    OracleHandle h(d, 33);
    TUTrace tr;
    double v = tolerant_unif(h, 0.1, cfg, &tr);
    CHECK(tr.branch == 3);
    CHECK(v == doctest::Approx(0.475).epsilon(0.35));
  }
}

TEST_CASE("tolerant_unif input validation and totality") {
  Config cfg;
  auto d = uniform(4);
  OracleHandle h(d, 34);
  CHECK_THROWS_AS(tolerant_unif(h, 0.0, cfg), std::invalid_argument);
  CHECK_THROWS_AS(tolerant_unif(h, 0.5, cfg), std::invalid_argument);

  std::mt19937_64 rng(9);
  std::exponential_distribution<double> e(1.0);
  for (int t = 0; t < 4; ++t) {
    std::vector<double> w(60);
    for (auto& v : w) v = e(rng);
    auto dd = Distribution::from_weights(std::move(w));
    OracleHandle hh(dd, 100 + t);
    TUTrace tr;
    double v = tolerant_unif(hh, 0.1, cfg, &tr);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(tr.branch >= 1);
    CHECK(tr.branch <= 3);
  }
}
