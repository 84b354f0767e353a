#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ekac/errors.hpp"
#include "ekac/primes.hpp"
#include "ekac/statistics.hpp"
#include "support/oracles.hpp"

using namespace ekac;

TEST_CASE("omega distribution under uniform") {
  const auto od = omega_distribution(PerturbedDistribution::uniform(10));
  // ω over 1..10: 0,1,1,1,1,2,1,1,1,2
  REQUIRE(od.mass.size() >= 3);
  CHECK(od.counts[0] == 1);
  CHECK(od.counts[1] == 7);
  CHECK(od.counts[2] == 2);
  CHECK(od.mean() == 1.1);
  CHECK(od.total() == 1.0);
}

TEST_CASE("omega distribution under harmonic matches direct sum") {
  const std::uint64_t n = 500;
  const auto d = PerturbedDistribution::harmonic(n);
  const auto od = omega_distribution(d);
  std::vector<long double> direct(od.mass.size(), 0);
  const long double h = static_cast<long double>(oracle::harmonic(n));
  for (std::uint64_t m = 1; m <= n; ++m) direct.at(oracle::omega(m)) += 1.0L / (m * h);
  for (std::size_t w = 0; w < direct.size(); ++w) {
    CHECK(od.mass[w] == doctest::Approx(static_cast<double>(direct[w])).epsilon(1e-13));
  }
}

TEST_CASE("ks statistic matches enumeration") {
  for (std::uint64_t n : {4, 100, 5000}) {
    const auto ks = ks_statistic(PerturbedDistribution::uniform(n));
    CHECK(ks.statistic == doctest::Approx(oracle::uniform_ks(n)).epsilon(1e-12));
  }
  CHECK(ks_statistic(PerturbedDistribution::uniform(4)).statistic ==
        doctest::Approx(0.6306).epsilon(1e-3));
  CHECK_THROWS_AS(ks_statistic(PerturbedDistribution::uniform(2)), DomainError);
}

TEST_CASE("normalized cdf is monotone and ends at one") {
  const auto cdf = normalized_cdf(PerturbedDistribution::harmonic(2000));
  double last = 0.0;
  for (const auto& pt : cdf.points) {
    CHECK(pt.F >= last);
    last = pt.F;
  }
  CHECK(last == doctest::Approx(1.0).epsilon(1e-14));
  const auto centered = normalized_cdf(PerturbedDistribution::harmonic(2000),
                                       Centering::empirical_mean);
  CHECK(centered.center != cdf.center);
}

TEST_CASE("truncated omega counts small primes only") {
  const TruncatedOmega g(100);  // α ≈ 20.4: primes 2..19
  CHECK(g.primes().size() == 8);
  CHECK(g(2 * 3 * 13) == 3);
  CHECK(g(2 * 23) == 1);
  CHECK(g(1) == 0);
  CHECK(g(97) == 0);
  CHECK_THROWS_AS(g(0), UsageError);
  CHECK_THROWS_AS(g(101), UsageError);
}

TEST_CASE("model moments match direct sums") {
  const auto m = model_sn(100, 3);
  const auto primes = oracle::primes_upto(20);
  long double b = 0, a2 = 0;
  for (auto p : primes) {
    b += 1.0L / p;
    a2 += 1.0L / p - 1.0L / (static_cast<long double>(p) * p);
  }
  CHECK(m.b_n == doctest::Approx(static_cast<double>(b)).epsilon(1e-14));
  CHECK(m.a_n_sq == doctest::Approx(static_cast<double>(a2)).epsilon(1e-14));
  CHECK(m.b_n == doctest::Approx(1.455478).epsilon(1e-6));
  CHECK(m.raw_moments[0] == 1.0);
  CHECK(m.raw_moments[1] == doctest::Approx(m.b_n).epsilon(1e-12));
  CHECK(m.raw_moments[2] == doctest::Approx(m.a_n_sq + m.b_n * m.b_n).epsilon(1e-12));
}

TEST_CASE("empirical moments match direct enumeration") {
  const std::uint64_t n = 3000;
  const auto d = PerturbedDistribution::harmonic(n);
  const auto emp = empirical_moments(d, 3);
  const double a = alpha(n);
  long double direct[4] = {0, 0, 0, 0};
  const long double h = static_cast<long double>(oracle::harmonic(n));
  for (std::uint64_t m = 1; m <= n; ++m) {
    unsigned g = 0;
    for (auto p : oracle::primes_upto(static_cast<std::uint64_t>(a))) g += m % p == 0;
    for (int r = 0; r < 4; ++r) direct[r] += std::pow(static_cast<long double>(g), r) / (m * h);
  }
  for (int r = 0; r < 4; ++r) {
    CHECK(emp[r] == doctest::Approx(static_cast<double>(direct[r])).epsilon(1e-12));
  }
  const auto gaps = moment_gaps(PerturbedDistribution::uniform(100), 2, 1.0);
  CHECK(gaps[0].gap == 0.0);
  CHECK(gaps[1].empirical == doctest::Approx(1.43));
  CHECK(gaps[1].gap == doctest::Approx(0.025478).epsilon(1e-5));
}

TEST_CASE("independence gap exact for uniform") {
  const auto g = independence_gap(PerturbedDistribution::uniform(7), PrimeTuple::of({2, 3}));
  CHECK(g.gap == doctest::Approx(1.0 / 49.0).epsilon(1e-15));
  CHECK(g.joint == doctest::Approx(1.0 / 7.0));
}

TEST_CASE("tail sum stays within its bound for harmonic") {
  const auto t = tail_sum(PerturbedDistribution::harmonic(5000), 1.0);
  CHECK(t.violations.empty());
  CHECK(t.primes > 0);
  CHECK(std::isfinite(t.value));
}

TEST_CASE("monte carlo ks agrees with exact within its band") {
  const auto d = PerturbedDistribution::uniform(2000);
  const auto exact = ks_statistic(d);
  const auto mc = monte_carlo_ks(d, 200000, 11);
  CHECK(std::fabs(mc.statistic - exact.statistic) <= mc.band);
  CHECK(monte_carlo_ks(d, 1000, 5).statistic == monte_carlo_ks(d, 1000, 5).statistic);
}

TEST_CASE("poisson-binomial pmf is consistent with its moments") {
  for (std::uint64_t n : {100ULL, 10000ULL, 1000000ULL}) {
    const auto m = model_sn(n, 2);
    CHECK(std::fabs(m.pmf_total - 1.0) <= 1e-12);
    CHECK(std::fabs(m.pmf_mean - m.b_n) <= 1e-10);
    CHECK(std::fabs(m.pmf_variance - m.a_n_sq) <= 1e-10);
  }
}
