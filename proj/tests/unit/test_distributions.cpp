#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "ekac/distribution.hpp"
#include "ekac/errors.hpp"
#include "support/oracles.hpp"

using namespace ekac;

TEST_CASE("uniform has zero perturbation") {
  const auto d = PerturbedDistribution::uniform(1000);
  for (std::uint64_t i = 1; i <= 1000; ++i) CHECK(d.epsilon(i) == 0.0);
  CHECK(d.cdf(250) == 0.25);
  CHECK(d.cdf(1000) == 1.0);
}

TEST_CASE("harmonic pmf matches exact rationals") {
  const auto d = PerturbedDistribution::harmonic(10);
  const oracle::Rational h = oracle::harmonic(10);
  CHECK(h == oracle::Rational(7381, 2520));
  for (std::uint64_t i = 1; i <= 10; ++i) {
    const double exact = static_cast<double>(oracle::Rational(1, i) / h);
    CHECK(d.pmf(i) == doctest::Approx(exact).epsilon(1e-15));
  }
  CHECK(d.cdf(10) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("zipf validation and limits") {
  CHECK_THROWS_AS(PerturbedDistribution::zipf(10, 1.0), DomainError);
  CHECK_THROWS_AS(PerturbedDistribution::zipf(10, 0.5), DomainError);
  CHECK_THROWS_AS(PerturbedDistribution::uniform(0), UsageError);
  const auto d = PerturbedDistribution::zipf(2, 2.0);
  CHECK(d.pmf(1) == doctest::Approx(0.8));
  CHECK_THROWS_AS(d.pmf(3), UsageError);
  CHECK_THROWS_AS(d.pmf(0), UsageError);
}

TEST_CASE("sup distance zipf to harmonic") {
  const auto h2 = PerturbedDistribution::harmonic(2);
  CHECK(sup_distance(PerturbedDistribution::zipf(2, 2.0), h2) ==
        doctest::Approx(oracle::zipf_harmonic_distance(2, 2.0L)).epsilon(1e-12));
  CHECK(sup_distance(PerturbedDistribution::zipf(2, 1.1), h2) ==
        doctest::Approx(0.01523).epsilon(1e-3));
  CHECK_THROWS_AS(sup_distance(h2, PerturbedDistribution::harmonic(3)), UsageError);
}

TEST_CASE("custom tables renormalize and reject bad entries") {
  const auto d = PerturbedDistribution::custom({0.5, 0.25, 0.25 + 5e-10});
  CHECK(d.renormalization_adjustment() == doctest::Approx(5e-10));
  CHECK(d.cdf(3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(PerturbedDistribution::custom({0.5, 0.6, -0.1}), ValidationError);
  CHECK_THROWS_AS(PerturbedDistribution::custom({0.5, 0.4}), ValidationError);
  CHECK_THROWS_AS(PerturbedDistribution::custom({}), ValidationError);
}

TEST_CASE("csv round trip") {
  const auto d = PerturbedDistribution::zipf(500, 1.3);
  std::stringstream buffer;
  write_table_csv(buffer, d);
  const auto back = read_table_csv(buffer);
  REQUIRE(back.n() == d.n());
  for (std::uint64_t i = 1; i <= d.n(); ++i) CHECK(std::fabs(back.pmf(i) - d.pmf(i)) <= 1e-12);
}

TEST_CASE("csv errors name the line") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_table_csv(in);
  };
  CHECK_THROWS_AS(parse("1,0.5\n2,0.5\n"), ValidationError);
  try {
    parse("i,probability\n1,0.5\n3,0.5\n");
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("i,probability\n1,abc\n"), ValidationError);
}

TEST_CASE("sampler is seeded and follows the pmf") {
  const auto d = PerturbedDistribution::harmonic(20);
  SampleStream a(d, 99), b(d, 99);
  CHECK(a.sample(1000) == b.sample(1000));
  SampleStream s(d, 1);
  std::map<std::uint64_t, int> counts;
  const int draws = 200000;
  for (int k = 0; k < draws; ++k) ++counts[s.next()];
  for (std::uint64_t i = 1; i <= 20; ++i) {
    const double p = d.pmf(i);
    const double se = std::sqrt(p * (1 - p) / draws);
    CHECK(std::fabs(counts[i] / double(draws) - p) < 5 * se);
  }
  SampleStream u(PerturbedDistribution::uniform(6), 3);
  for (int k = 0; k < 1000; ++k) {
    const auto x = u.next();
    CHECK(x >= 1);
    CHECK(x <= 6);
  }
}
