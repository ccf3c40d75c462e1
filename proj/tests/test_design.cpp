#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "syssamp/design.hpp"
#include "syssamp/error.hpp"
#include "syssamp/population.hpp"

using namespace syssamp;
using Units = std::vector<std::size_t>;

TEST_CASE("enumeration examples") {
  CHECK(enumerate_samples(SystematicDesign(6, 3, 2)) == std::vector<Units>{{1, 3, 5}, {2, 4, 6}});
  CHECK(enumerate_samples(SystematicDesign(4, 2, 2)) == std::vector<Units>{{1, 3}, {2, 4}});
  auto murthy = enumerate_samples(SystematicDesign(176, 16, 11));
  REQUIRE(murthy.size() == 11);
  for (const auto& s : murthy) CHECK(s.size() == 16);
  CHECK(murthy[0][1] == 12);
  CHECK(murthy[10].back() == 176);
}

TEST_CASE("samples partition the population") {
  for (std::size_t N : {12u, 30u, 176u}) {
    for (std::size_t n : valid_sample_sizes(N)) {
      SystematicDesign d = SystematicDesign::for_sample_size(N, n);
      std::set<std::size_t> seen;
      std::size_t count = 0;
      for (const auto& s : enumerate_samples(d)) {
        count += s.size();
        seen.insert(s.begin(), s.end());
      }
      CHECK(count == N);
      CHECK(seen.size() == N);
      CHECK(*seen.begin() == 1);
      CHECK(*seen.rbegin() == N);
    }
  }
}

TEST_CASE("design validation") {
  CHECK_THROWS_AS(SystematicDesign(10, 3, 3), DesignError);
  CHECK_THROWS_AS(SystematicDesign(4, 1, 4), DesignError);
  CHECK_THROWS_AS(SystematicDesign(4, 2, 2).sample_units(3), DesignError);
  CHECK(SystematicDesign::for_sample_size(12, 12).interval() == 1);
  CHECK(valid_sample_sizes(12) == Units{2, 3, 4, 6, 12});
  try {
    SystematicDesign::for_sample_size(176, 15);
    FAIL("expected DesignError");
  } catch (const DesignError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("16 (k = 11)") != std::string::npos);
    CHECK(msg.find("22 (k = 8)") != std::string::npos);
  }
}

TEST_CASE("draws") {
  SUBCASE("k = 1 always gives 1") {
    Rng rng(1);
    SystematicDesign d(5, 5, 1);
    for (int i = 0; i < 100; ++i) CHECK(draw_sample(d, rng) == 1);
  }
  SUBCASE("uniform over 11 starts") {
    Rng rng(2024);
    SystematicDesign d(176, 16, 11);
    const int R = 100000;
    std::vector<int> freq(12, 0);
    for (int i = 0; i < R; ++i) ++freq.at(draw_sample(d, rng));
    const double p = 1.0 / 11;
    const double se = std::sqrt(p * (1 - p) / R);
    CHECK(freq[0] == 0);
    for (std::size_t i = 1; i <= 11; ++i) CHECK(std::abs(freq[i] / double(R) - p) <= 3 * se);
  }
  SUBCASE("same seed, same start") {
    SystematicDesign d(176, 16, 11);
    for (std::uint64_t s : {0ULL, 7ULL, ~0ULL}) {
      auto a = replicate_stream(s, 3), b = replicate_stream(s, 3);
      CHECK(draw_sample(d, a) == draw_sample(d, b));
    }
    auto a = replicate_stream(1, 0), b = replicate_stream(1, 1);
    CHECK(a() != b());
  }
}

TEST_CASE("follow-up size rounding") {
  auto l2 = NonResponseModel::bernoulli(0.2, 2.0);
  CHECK(l2.followup_size(0) == 0);
  CHECK(l2.followup_size(1) == 1);
  CHECK(l2.followup_size(3) == 2);
  CHECK(l2.followup_size(4) == 2);
  auto l1 = NonResponseModel::bernoulli(0.2, 1.0);
  for (std::size_t n2 = 1; n2 < 10; ++n2) CHECK(l1.followup_size(n2) == n2);
  CHECK(NonResponseModel::bernoulli(0.2, 100.0).followup_size(3) == 1);
}

TEST_CASE("fixed stratum validation") {
  CHECK_NOTHROW(NonResponseModel::fixed(0.25, 2, {1, 2}, 8));
  CHECK_THROWS_AS(NonResponseModel::fixed(0.25, 2, {1, 1}, 8), ConfigError);
  CHECK_THROWS_AS(NonResponseModel::fixed(0.25, 2, {1, 9}, 8), ConfigError);
  CHECK_THROWS_AS(NonResponseModel::fixed(0.25, 2, {1, 2, 3}, 8), ConfigError);
  CHECK_THROWS_AS(NonResponseModel::fixed(1.0, 2, {}, 8), ConfigError);
  CHECK_THROWS_AS(NonResponseModel::bernoulli(0.1, 0.5), ConfigError);
  auto nr = NonResponseModel::fixed(0.25, 2, {5, 2}, 8);
  CHECK(nr.stratum() == Units{2, 5});
  CHECK(nr.in_stratum(5));
  CHECK_FALSE(nr.in_stratum(3));
}

TEST_CASE("non-response examples") {
  FinitePopulation pop({1, 2, 3, 4, 5, 6, 7, 8}, {8, 7, 6, 5, 4, 3, 2, 1});
  Rng rng(9);
  SUBCASE("w2 = 0: everyone responds") {
    auto r = apply_nonresponse({1, 3, 5, 7}, pop, NonResponseModel::complete_response(), rng);
    CHECK(r.respondents == Units{1, 3, 5, 7});
    CHECK(r.subsample.empty());
    CHECK(r.y_respondents == std::vector<double>{1, 3, 5, 7});
  }
  SUBCASE("L = 1: every non-respondent is followed up") {
    auto nr = NonResponseModel::fixed(0.25, 1.0, {3, 7}, 8);
    auto r = apply_nonresponse({1, 3, 5, 7}, pop, nr, rng, 1);
    CHECK(r.sample_index == 1);
    CHECK(r.n2() == 2);
    CHECK(r.h2() == 2);
    CHECK(r.x_observed == std::vector<double>{8, 6, 4, 2});
  }
}

TEST_CASE("n = 16 with four stratum units and L = 2 gives h2 = 2") {
  std::vector<double> v(176);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = double(i);
  FinitePopulation pop(v, v);
  SystematicDesign d(176, 16, 11);
  // 18 units = round(0.1 * 176); four of them in the first sample.
  Units stratum{1, 12, 23, 34};
  for (std::size_t u = 2; stratum.size() < 18; u += 11) stratum.push_back(u);
  auto nr = NonResponseModel::fixed(0.1, 2.0, stratum, 176);
  Rng rng(4);
  auto r = apply_nonresponse(d.sample_units(1), pop, nr, rng);
  CHECK(r.n2() == 4);
  CHECK(r.h2() == 2);
  for (std::size_t u : r.subsample) CHECK(nr.in_stratum(u));
}

TEST_CASE("realization invariants and Bernoulli rate") {
  std::vector<double> y(240), x(240);
  for (std::size_t i = 0; i < 240; ++i) {
    y[i] = double(i % 17);
    x[i] = double(i);
  }
  FinitePopulation pop(y, x);
  SystematicDesign d(240, 12, 20);
  const double w2 = 0.3;
  auto nr = NonResponseModel::bernoulli(w2, 2.5);
  const int R = 20000;
  double sum = 0;
  for (int r = 0; r < R; ++r) {
    auto rng = replicate_stream(77, r);
    auto real = apply_nonresponse(d.sample_units(draw_sample(d, rng)), pop, nr, rng);
    REQUIRE(real.n1() + real.n2() == real.n());
    REQUIRE(real.y_respondents.size() + real.y_subsample.size() == real.n1() + real.h2());
    REQUIRE(real.h2() == nr.followup_size(real.n2()));
    sum += double(real.n2()) / double(real.n());
  }
  const double se = std::sqrt(w2 * (1 - w2) / (R * 12.0));
  CHECK(std::abs(sum / R - w2) <= 3 * se);
}

TEST_CASE("stratum builders") {
  SystematicDesign d(240, 12, 20);
  SUBCASE("balanced stratum holds multiples of L per sample") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(seed);
      auto s = balanced_stratum(d, 0.25, 2.0, rng);
      CHECK(s.size() == 60);
      CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
      auto nr = NonResponseModel::fixed(0.25, 2.0, s, 240);
      for (const auto& units : enumerate_samples(d)) {
        auto c = std::count_if(units.begin(), units.end(), [&](auto u) { return nr.in_stratum(u); });
        CHECK((c == 2 || c == 4));
      }
    }
  }
  SUBCASE("fractional L spreads counts evenly") {
    Rng rng(1);
    auto s = balanced_stratum(d, 0.3, 2.5, rng);
    auto nr = NonResponseModel::fixed(0.3, 2.5, s, 240);
    for (const auto& units : enumerate_samples(d)) {
      auto c = std::count_if(units.begin(), units.end(), [&](auto u) { return nr.in_stratum(u); });
      CHECK((c == 3 || c == 4));
    }
  }
  SUBCASE("random stratum has the right size") {
    Rng rng(3);
    auto s = random_stratum(d, 0.1, rng);
    CHECK(s.size() == 24);
    CHECK_NOTHROW(NonResponseModel::fixed(0.1, 3.0, s, 240));
  }
}
