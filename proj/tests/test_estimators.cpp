#include <doctest.h>

#include <cmath>
#include <random>

#include "syssamp/design.hpp"
#include "syssamp/error.hpp"
#include "syssamp/estimators.hpp"

using namespace syssamp;

namespace {

SampleRealization realization(std::vector<double> respondents, std::size_t n2,
                              std::vector<double> subsample, std::vector<double> x = {}) {
  SampleRealization r;
  r.y_respondents = std::move(respondents);
  r.y_subsample = std::move(subsample);
  for (std::size_t i = 0; i < r.y_respondents.size(); ++i) r.respondents.push_back(i + 1);
  for (std::size_t i = 0; i < n2; ++i) r.nonrespondents.push_back(100 + i);
  for (std::size_t i = 0; i < r.y_subsample.size(); ++i) r.subsample.push_back(100 + i);
  r.units = r.respondents;
  r.units.insert(r.units.end(), r.nonrespondents.begin(), r.nonrespondents.end());
  r.x_observed = std::move(x);
  return r;
}

}  // namespace

TEST_CASE("Hansen-Hurwitz mean") {
  CHECK(hh_mean(realization({2, 4}, 2, {4, 6})) == doctest::Approx(4.0));
  CHECK(hh_mean(realization({1, 2, 3, 4}, 0, {})) == doctest::Approx(2.5));
  CHECK(hh_mean(realization({3, 5, 10}, 0, {})) == doctest::Approx(6.0));
  CHECK(hh_mean(realization({}, 3, {7})) == doctest::Approx(7.0));
  CHECK_THROWS_AS(hh_mean(realization({}, 0, {})), DomainError);
  CHECK_THROWS_AS(hh_mean(realization({1}, 2, {})), DomainError);
}

TEST_CASE("auxiliary mean") {
  CHECK(aux_mean(realization({1, 1, 1}, 0, {}, {2, 4, 6})) == doctest::Approx(4.0));
  CHECK(aux_mean(realization({1, 1}, 0, {}, {3.25, 3.25})) == 3.25);
  CHECK_THROWS_AS(aux_mean(realization({1}, 0, {}, {})), DomainError);
}

TEST_CASE("family hand examples") {
  CHECK(family_estimate(10, 5, 4, FamilyParams::ratio()) == doctest::Approx(8.0));
  CHECK(family_estimate(10, 5, 4, FamilyParams::product()) == doctest::Approx(12.5));
  CHECK(ratio_estimate(10, 5, 4) == doctest::Approx(8.0));
  CHECK(product_estimate(10, 5, 4) == doctest::Approx(12.5));
  CHECK(ratio_estimate(10, 4, 4) == 10);
  CHECK(product_estimate(10, 4, 4) == 10);
}

TEST_CASE("alpha = 0 returns ybar* for any a, b, g") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 1000; ++i) {
    FamilyParams p{u(rng), u(rng), 0.0, u(rng)};
    if (p.a == 0 || p.a * 3 + p.b == 0) continue;
    const double y = u(rng);
    CHECK(family_estimate(y, u(rng), 3, p) == y);
  }
}

TEST_CASE("classical estimators are family members") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> pos(0.1, 1000);
  for (int i = 0; i < 10000; ++i) {
    const double y = pos(rng), x = pos(rng), X = pos(rng);
    REQUIRE(ratio_estimate(y, x, X) == family_estimate(y, x, X, FamilyParams::ratio()));
    const double prod = family_estimate(y, x, X, FamilyParams::product());
    REQUIRE(std::abs(product_estimate(y, x, X) - prod) <= 1e-15 * std::abs(prod));
  }
}

TEST_CASE("equivariance") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> pos(0.5, 50), coef(0.1, 3);
  for (int i = 0; i < 1000; ++i) {
    const double y = pos(rng), x = pos(rng), X = pos(rng), c = coef(rng);
    FamilyParams p{1, 0, coef(rng) / 3, coef(rng) - 1.5};  // alpha < 1 keeps the base positive
    const double base = family_estimate(y, x, X, p);
    CHECK(family_estimate(c * y, x, X, p) == doctest::Approx(c * base).epsilon(1e-12));
    CHECK(family_estimate(y, c * x, c * X, p) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("family is continuous in alpha away from the pole") {
  FamilyParams p{2, 1, 0, 1.5};
  double prev = family_estimate(10, 6, 5, p);
  for (int i = 1; i <= 1000; ++i) {
    p.alpha = i * 1e-3;
    const double cur = family_estimate(10, 6, 5, p);
    CHECK(std::abs(cur - prev) < 0.01);
    prev = cur;
  }
}

TEST_CASE("family domain errors") {
  FamilyParams p{1, 0, 1, 1};
  CHECK_THROWS_AS(family_estimate(1, 0, 4, p), SingularityError);
  CHECK_THROWS_AS(ratio_estimate(1, 0, 4), SingularityError);
  CHECK_THROWS_AS(product_estimate(1, 1, 0), SingularityError);
  // base (aX+b)/(a x+b) negative with a fractional exponent
  FamilyParams frac{1, 0, 1, 0.5};
  CHECK_THROWS_AS(family_estimate(1, -2, 4, frac), DomainError);
  // an integral exponent is fine
  CHECK(family_estimate(1, -2, 4, FamilyParams{1, 0, 1, 2}) == doctest::Approx(4.0));
  CHECK_THROWS_AS(FamilyParams({0, 1, 1, 1}).validate(3), DomainError);
  CHECK_THROWS_AS(FamilyParams({1, -3, 1, 1}).validate(3), DomainError);
  CHECK_NOTHROW(FamilyParams({2, 1, 1, 1}).validate(3));
}
