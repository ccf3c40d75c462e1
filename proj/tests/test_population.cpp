#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "syssamp/design.hpp"
#include "syssamp/error.hpp"
#include "syssamp/population.hpp"

using namespace syssamp;

namespace {

std::vector<double> random_values(std::mt19937_64& rng, std::size_t count) {
  std::normal_distribution<double> z(50.0, 10.0);
  std::vector<double> v(count);
  for (auto& a : v) a = z(rng);
  return v;
}

}  // namespace

TEST_CASE("four-row file keeps file order") {
  std::istringstream in("vol,len\n10,1\n20,2\n30,3\n40,4\n");
  auto pop = load_population(in, "vol", "len");
  CHECK(pop.size() == 4);
  CHECK(pop.y() == std::vector<double>{10, 20, 30, 40});
  CHECK(pop.x() == std::vector<double>{1, 2, 3, 4});
  CHECK(pop.y_at(1) == 10);
  CHECK(pop.x_at(4) == 4);
}

TEST_CASE("tab-separated input, quoted headers, comments and BOM") {
  std::istringstream in("\xEF\xBB\xBF# made by hand\n\"y\"\t\"x\"\n1.5\t2\n\n+2.5\t-3e1\n");
  auto pop = load_population(in, "y", "x");
  CHECK(pop.y() == std::vector<double>{1.5, 2.5});
  CHECK(pop.x() == std::vector<double>{2, -30});
}

TEST_CASE("NA in row 3 is a parse error naming the row") {
  std::istringstream in("y,x\n1,1\n2,2\nNA,3\n4,4\n");
  try {
    load_population(in, "y", "x");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.row() == 3);
    CHECK(e.column() == "y");
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
  }
}

TEST_CASE("ingestion errors") {
  SUBCASE("missing column") {
    std::istringstream in("a,b\n1,2\n3,4\n");
    CHECK_THROWS_AS(load_population(in, "y", "x"), ConfigError);
  }
  SUBCASE("ragged row") {
    std::istringstream in("y,x\n1,2\n3\n");
    CHECK_THROWS_AS(load_population(in, "y", "x"), ParseError);
  }
  SUBCASE("too few rows") {
    std::istringstream in("y,x\n1,2\n");
    CHECK_THROWS_AS(load_population(in, "y", "x"), DomainError);
  }
  SUBCASE("infinite value") {
    std::istringstream in("y,x\n1,2\ninf,4\n");
    CHECK_THROWS_AS(load_population(in, "y", "x"), ParseError);
  }
  SUBCASE("empty input") {
    std::istringstream in("");
    CHECK_THROWS_AS(load_population(in, "y", "x"), ConfigError);
  }
  SUBCASE("mismatched vectors") {
    CHECK_THROWS_AS(FinitePopulation({1, 2, 3}, {1, 2}), DomainError);
  }
}

TEST_CASE("sorting by x is stable and carries y along") {
  FinitePopulation pop({1, 2, 3, 4}, {3, 1, 3, 0});
  auto s = sorted_by_x(pop);
  CHECK(s.x() == std::vector<double>{0, 1, 3, 3});
  CHECK(s.y() == std::vector<double>{4, 2, 1, 3});
  CHECK(s.fingerprint() != pop.fingerprint());
  CHECK(s.permuted(ascending_order(s.x())).fingerprint() == s.fingerprint());
}

TEST_CASE("intraclass hand examples") {
  SystematicDesign d(4, 2, 2);
  CHECK(intraclass_correlation(std::vector<double>{1, 2, 1, 2}, d) == doctest::Approx(1.0));

  const std::vector<double> v{1, 2, 3, 4};
  auto parts = oracle::intraclass(v, 2, 2);
  CHECK(parts.cross == doctest::Approx(-3.0));
  CHECK(parts.denominator == doctest::Approx(5.0));
  CHECK(intraclass_correlation(v, d) == doctest::Approx(-0.6).epsilon(1e-15));
}

TEST_CASE("intraclass matches the double-sum oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> nd(2, 8), kd(1, 8);
    const std::size_t n = nd(rng), k = kd(rng);
    auto v = random_values(rng, n * k);
    SystematicDesign d(n * k, n, k);
    const double got = intraclass_correlation(v, d);
    CHECK(oracle::relative_gap(got, oracle::intraclass(v, n, k).value) < 1e-12);
    CHECK(static_cast<double>(n - 1) * got >= -1.0);
    CHECK(got <= 1.0);
  }
}

TEST_CASE("intraclass is invariant under affine maps") {
  std::mt19937_64 rng(5);
  SystematicDesign d(60, 6, 10);
  auto v = random_values(rng, 60);
  const double base = intraclass_correlation(v, d);
  for (double scale : {3.0, -0.25, 1e4}) {
    for (double shift : {0.0, -7.0, 1e3}) {
      std::vector<double> w(v.size());
      std::transform(v.begin(), v.end(), w.begin(),
                     [&](double a) { return scale * a + shift; });
      CHECK(intraclass_correlation(w, d) == doctest::Approx(base).epsilon(1e-10));
    }
  }
}

TEST_CASE("permuting whole samples leaves the intraclass value unchanged") {
  std::mt19937_64 rng(17);
  const std::size_t n = 5, k = 7;
  SystematicDesign d(n * k, n, k);
  auto v = random_values(rng, n * k);
  std::vector<std::size_t> blocks(k);
  std::iota(blocks.begin(), blocks.end(), std::size_t{0});
  std::shuffle(blocks.begin(), blocks.end(), rng);
  std::vector<double> w(v.size());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i + j * k] = v[blocks[i] + j * k];
  CHECK(intraclass_correlation(w, d) ==
        doctest::Approx(intraclass_correlation(v, d)).epsilon(1e-12));
}

TEST_CASE("intraclass errors") {
  SystematicDesign d(4, 2, 2);
  CHECK_THROWS_AS(intraclass_correlation(std::vector<double>{1, 2, 3}, d), DesignError);
  CHECK_THROWS_AS(intraclass_correlation(std::vector<double>{2, 2, 2, 2}, d),
                  DegenerateInputError);
}

TEST_CASE("moments of a small population") {
  FinitePopulation pop({1, 2, 3, 4, 5, 6}, {2, 4, 6, 8, 10, 12});
  SystematicDesign d(6, 3, 2);
  const std::size_t stratum[] = {1, 2, 6};
  auto m = compute_moments(pop, d, stratum);
  CHECK(m.mean_y == doctest::Approx(3.5));
  CHECK(m.mean_x == doctest::Approx(7.0));
  CHECK(m.s2_y == doctest::Approx(3.5));
  CHECK(m.s2_x == doctest::Approx(14.0));
  CHECK(m.rho == doctest::Approx(1.0));
  CHECK(m.cv_y == doctest::Approx(std::sqrt(3.5) / 3.5));
  CHECK(m.s2_y2 == doctest::Approx(mean_square(std::vector<double>{1, 2, 6})));
  CHECK(m.rho_y == doctest::Approx(oracle::intraclass(pop.y(), 3, 2).value));
  CHECK(m.rho_x == doctest::Approx(m.rho_y));

  auto scaled = compute_moments_scaled(pop, d, 0.75);
  CHECK(scaled.s2_y2 == doctest::Approx(0.75 * 3.5));

  const std::size_t one[] = {1};
  CHECK_THROWS_AS(compute_moments(pop, d, one), DomainError);
  const std::size_t bad[] = {1, 9};
  CHECK_THROWS_AS(compute_moments(pop, d, bad), ConfigError);
  CHECK_THROWS_AS(compute_moments_scaled(pop, SystematicDesign(4, 2, 2), 1.0), DesignError);
}

TEST_CASE("y = x gives rho = 1") {
  std::mt19937_64 rng(3);
  auto v = random_values(rng, 20);
  FinitePopulation pop(v, v);
  auto m = compute_moments_scaled(pop, SystematicDesign(20, 4, 5), 1.0);
  CHECK(m.rho == doctest::Approx(1.0));
  CHECK(m.rho_y == m.rho_x);
}

TEST_CASE("population concatenated with itself") {
  std::mt19937_64 rng(23);
  const std::size_t n = 4, k = 6, N = n * k;
  auto y = random_values(rng, N), x = random_values(rng, N);
  // Each systematic sample of the doubled population (k -> 2k) is a sample of
  // the original with its first half repeated in the second half's slots.
  std::vector<double> yy(y), xx(x);
  yy.insert(yy.end(), y.begin(), y.end());
  xx.insert(xx.end(), x.begin(), x.end());
  auto m = compute_moments_scaled(FinitePopulation(yy, xx), SystematicDesign(2 * N, n, 2 * k), 1);

  const double my = std::accumulate(y.begin(), y.end(), 0.0) / N;
  double ssy = 0;
  for (double a : y) ssy += (a - my) * (a - my);
  CHECK(std::abs(m.mean_y - my) < 1e-9);
  CHECK(std::abs(m.s2_y - 2 * ssy / (2 * N - 1)) < 1e-9);
  CHECK(std::abs(m.rho - correlation(y, x)) < 1e-9);
  CHECK(std::abs(m.rho_y - oracle::intraclass(yy, n, 2 * k).value) < 1e-9);
  CHECK(std::abs(m.rho_x - oracle::intraclass(xx, n, 2 * k).value) < 1e-9);
}

TEST_CASE("correlation of a constant is degenerate") {
  CHECK_THROWS_AS(correlation(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}),
                  DegenerateInputError);
  FinitePopulation pop({1, 2, 3, 4}, {5, 5, 5, 5});
  CHECK_THROWS_AS(compute_moments_scaled(pop, SystematicDesign(4, 2, 2), 1), DegenerateInputError);
}

TEST_CASE("fingerprint depends on content and order") {
  FinitePopulation a({1, 2}, {3, 4}), b({1, 2}, {3, 4}), c({2, 1}, {4, 3});
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint() != c.fingerprint());
}
