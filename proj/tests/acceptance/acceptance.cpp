// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on failure.
// Usage: acceptance <path-to-ekac-cli> [--only N]

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "ekac/constraints.hpp"
#include "ekac/omega_window.hpp"
#include "ekac/primes.hpp"
#include "ekac/statistics.hpp"
#include "support/oracles.hpp"

using namespace ekac;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string g_cli;

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  CliRun r;
  const std::string cmd = g_cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome omega_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const OmegaTable table = omega_range(1, 100000);
  const double elapsed = seconds_since(t0);
  std::size_t mismatches = 0;
  for (std::uint64_t m = 1; m <= 100000; ++m) mismatches += table.at(m) != oracle::omega(m);
  return {mismatches == 0 && elapsed < 5.0,
          std::to_string(mismatches) + " mismatches, " + fmt("%.3f s", elapsed)};
}

Outcome omega_1400() {
  const unsigned w = omega_range(1400, 1400).at(1400);
  return {w == 3 && oracle::omega(1400) == 3, "omega(1400) = " + std::to_string(w)};
}

Outcome window_mean() {
  const WideInteger center = WideInteger::parse("514843556263457212366848");
  auto t0 = std::chrono::steady_clock::now();
  const OmegaWindow fast = omega_window(center, 10000);
  const double fast_s = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const OmegaWindow full = omega_window(center, 1000000);
  const double full_s = seconds_since(t0);
  const bool ok = std::fabs(full.mean - 4.27) <= 0.005 && full_s <= 3600 &&
                  std::fabs(fast.mean - 4.27) <= 0.05 && fast_s <= 120;
  return {ok, "radius 1e6 mean " + fmt("%.6f", full.mean) + fmt(" (%.1f s)", full_s) +
                  "; radius 1e4 mean " + fmt("%.6f", fast.mean) + fmt(" (%.1f s)", fast_s)};
}

Outcome example_upper_bounds() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t checked = 0, upper = 0, singles = 0, single_upper = 0;
  for (std::uint64_t n = 2; n <= 2000; ++n) {
    const auto d = PerturbedDistribution::harmonic(n);
    enumerate_prime_tuples(n, n, 4, ~std::size_t{0}, [&](const PrimeTuple& t) {
      const double T = partial_epsilon_sum(d, t).value;
      ++checked;
      upper += T * static_cast<double>(n) > 1.0;
    });
    if (n < 3) continue;  // no small/large split while log log n <= 0
    const double a = small_prime_threshold(n);
    for (auto p : primes_upto(n)) {
      if (static_cast<double>(p) <= a) continue;
      ++singles;
      const double T = partial_epsilon_sum(d, PrimeTuple::of({p})).value;
      single_upper += T * static_cast<double>(p) > 1.0;
    }
  }
  // The verifier must agree with the direct enumeration at the top end.
  const auto d = PerturbedDistribution::harmonic(2000);
  const auto six = check_small_tuple_bound(d, 1.0, 4);
  const auto five = check_large_prime_bound(d, 1.0);
  const double elapsed = seconds_since(t0);
  const bool ok = upper == 0 && single_upper == 0 && six.upper_violations == 0 &&
                  five.upper_violations == 0 && elapsed < 120;
  return {ok, std::to_string(checked) + " tuples, " + std::to_string(upper) +
                  " over 1/n; " + std::to_string(singles) + " large primes, " +
                  std::to_string(single_upper) + " over 1/p; " + fmt("%.1f s", elapsed)};
}

Outcome truth_telling() {
  const auto d = PerturbedDistribution::harmonic(10);
  const double exact = static_cast<double>(
      oracle::harmonic(5) / (2 * oracle::harmonic(10)) - oracle::Rational(1, 2));
  const auto report = check_small_tuple_bound(d, 1.0, 4);
  std::optional<double> T;
  for (const auto& w : report.witnesses) {
    if (w.primes == std::vector<std::uint64_t>{2} && w.side == "lower") T = w.value;
  }
  const bool ok = report.status == ConstraintStatus::fail && report.lower_violations > 0 &&
                  T && std::fabs(*T - exact) <= 1e-12 && std::fabs(*T + 0.1102158) <= 1e-6;
  return {ok, "status " + to_string(report.status) + ", T(2) = " +
                  (T ? fmt("%.7f", *T) : std::string("missing")) + ", oracle " +
                  fmt("%.7f", exact)};
}

Outcome uniform_degeneracy() {
  const auto d = PerturbedDistribution::uniform(1000);
  double max_eps = 0.0, max_T = 0.0;
  for (std::uint64_t i = 1; i <= d.n(); ++i) max_eps = std::max(max_eps, std::fabs(d.epsilon(i)));
  enumerate_prime_tuples(1000, 1000, 4, ~std::size_t{0}, [&](const PrimeTuple& t) {
    max_T = std::max(max_T, std::fabs(partial_epsilon_sum(d, t).value));
  });
  const auto c = infer_constants(d, 4);
  const bool ok = max_eps == 0.0 && max_T == 0.0 && c.C_min == 0.0 && c.D_min == 0.0;
  return {ok, "max|eps| " + fmt("%g", max_eps) + ", max|T| " + fmt("%g", max_T) +
                  ", C_min " + fmt("%g", c.C_min) + ", D_min " + fmt("%g", c.D_min)};
}

Outcome mean_identity() {
  const double m10 = omega_distribution(PerturbedDistribution::uniform(10)).mean();
  bool ok = m10 == 1.1;
  std::string detail = "n=10 mean " + fmt("%.17g", m10);
  for (std::uint64_t n : {1000ULL, 1000000ULL}) {
    const double mean = omega_distribution(PerturbedDistribution::uniform(n)).mean();
    oracle::Rational expected = 0;
    for (auto p : primes_upto(n)) expected += oracle::Rational(n / p, n);
    const double diff = std::fabs(mean - static_cast<double>(expected));
    ok = ok && diff <= 1e-12;
    detail += "; n=" + std::to_string(n) + " diff " + fmt("%.2e", diff);
  }
  return {ok, detail};
}

Outcome poisson_binomial() {
  bool ok = true;
  std::string detail;
  for (std::uint64_t n : {100ULL, 10000ULL, 1000000ULL}) {
    const auto m = model_sn(n, 2);
    ok = ok && std::fabs(m.pmf_total - 1.0) <= 1e-12 && std::fabs(m.pmf_mean - m.b_n) <= 1e-10 &&
         std::fabs(m.pmf_variance - m.a_n_sq) <= 1e-10;
  }
  long double b = 0, a2 = 0;
  for (auto p : oracle::primes_upto(static_cast<std::uint64_t>(alpha(100)))) {
    b += 1.0L / p;
    a2 += 1.0L / p - 1.0L / (static_cast<long double>(p) * p);
  }
  const auto m = model_sn(100, 2);
  ok = ok && std::fabs(m.b_n - 1.455478) <= 1e-6 && std::fabs(m.a_n_sq - 1.013548) <= 1e-6 &&
       std::fabs(m.b_n - static_cast<double>(b)) <= 1e-12 &&
       std::fabs(m.a_n_sq - static_cast<double>(a2)) <= 1e-12;
  detail = "b_100 " + fmt("%.7f", m.b_n) + ", a^2_100 " + fmt("%.7f", m.a_n_sq) +
           " (direct sum " + fmt("%.7f", static_cast<double>(a2)) + ", target 1.013548)";
  return {ok, detail};
}

Outcome moment_gap_bound() {
  bool ok = true;
  double worst = 0.0;
  for (std::uint64_t n : {10000ULL, 100000ULL, 1000000ULL}) {
    const auto reps = moment_gaps(PerturbedDistribution::uniform(n), 3, 0.5);
    const double a = alpha(n);
    for (unsigned r = 1; r <= 3; ++r) {
      const double bound = 0.5 * std::pow(a, r) / static_cast<double>(n) * (1 + 1e-9);
      ok = ok && reps[r].gap <= bound;
      worst = std::max(worst, reps[r].gap / bound);
    }
  }
  return {ok, "largest gap/bound ratio " + fmt("%.4f", worst)};
}

Outcome ks_trend() {
  const double k3 = ks_statistic(PerturbedDistribution::uniform(1000)).statistic;
  const double k6 = ks_statistic(PerturbedDistribution::uniform(1000000)).statistic;
  const double k4 = ks_statistic(PerturbedDistribution::uniform(4)).statistic;
  const double o3 = oracle::uniform_ks(1000);
  const double o6 = oracle::uniform_ks(1000000);
  const bool ok = k6 < k3 && std::fabs(k3 - o3) <= 1e-12 && std::fabs(k6 - o6) <= 1e-12 &&
                  std::fabs(k4 - 0.6306) <= 0.001 && std::fabs(k4 - oracle::uniform_ks(4)) <= 1e-12;
  return {ok, "KS(1e3) " + fmt("%.6f", k3) + ", KS(1e6) " + fmt("%.6f", k6) + ", KS(4) " +
                  fmt("%.6f", k4)};
}

Outcome mertens() {
  const double m10 = mertens_sum(10);
  const auto t0 = std::chrono::steady_clock::now();
  const double m6 = mertens_sum(1000000);
  const double elapsed = seconds_since(t0);
  const double o4 = mertens_sum(10000) - log_log(10000);
  const double o6 = m6 - log_log(1000000);
  const double exact4 = static_cast<double>(oracle::mertens(10000)) - log_log(10000);
  const bool ok = std::fabs(m10 - 247.0 / 210.0) <= 1e-12 && o4 >= 0.2 && o4 <= 0.35 &&
                  o6 >= 0.2 && o6 <= 0.35 && std::fabs(o4 - exact4) <= 1e-12 && elapsed < 10;
  return {ok, "S(10) " + fmt("%.12f", m10) + ", offsets " + fmt("%.6f", o4) + " / " +
                  fmt("%.6f", o6) + fmt(", %.3f s", elapsed)};
}

Outcome independence() {
  const auto t23 = PrimeTuple::of({2, 3});
  const double u = independence_gap(PerturbedDistribution::uniform(7), t23).gap;
  bool ok = std::fabs(u - 1.0 / 49.0) <= 1e-16;
  std::string detail = "uniform(7) gap " + fmt("%.9f", u) + "; harmonic gaps";
  double last = INFINITY;
  for (std::uint64_t n : {100ULL, 1000ULL, 10000ULL}) {
    const double g = independence_gap(PerturbedDistribution::harmonic(n), t23).gap;
    ok = ok && g < last;
    last = g;
    detail += " " + fmt("%.6f", g);
  }
  const double p2_small =
      std::fabs(divisibility_probability(PerturbedDistribution::harmonic(100), 2) - 0.5);
  const double p2_large =
      std::fabs(divisibility_probability(PerturbedDistribution::harmonic(100000), 2) - 0.5);
  ok = ok && p2_large < p2_small;
  detail += "; |P(A2)-1/2| " + fmt("%.6f", p2_small) + " -> " + fmt("%.6f", p2_large);
  return {ok, detail};
}

Outcome zipf_to_harmonic() {
  bool ok = true;
  std::string detail;
  for (std::uint64_t n : {100ULL, 1000ULL}) {
    const auto h = PerturbedDistribution::harmonic(n);
    double last = INFINITY;
    for (double s : {2.0, 1.5, 1.1, 1.01}) {
      const double d = sup_distance(PerturbedDistribution::zipf(n, s), h);
      ok = ok && d < last &&
           std::fabs(d - oracle::zipf_harmonic_distance(n, s)) <= 1e-12;
      last = d;
    }
  }
  const auto h2 = PerturbedDistribution::harmonic(2);
  const double d2 = sup_distance(PerturbedDistribution::zipf(2, 2.0), h2);
  const double d11 = sup_distance(PerturbedDistribution::zipf(2, 1.1), h2);
  ok = ok && std::fabs(d2 - 0.13333) <= 1e-5 && std::fabs(d11 - 0.01523) <= 1e-5;
  detail = "n=2: s=2 " + fmt("%.5f", d2) + ", s=1.1 " + fmt("%.5f", d11);
  return {ok, detail};
}

Outcome cli_determinism() {
  const std::vector<std::string> commands = {
      "omega --from 1 --to 100",
      "omega --center 514843556263457212366848 --radius 200 --quiet",
      "check --dist harmonic --n 1000 --kmax 3",
      "ekcdf --dist uniform --n 10000",
      "moments --dist uniform --n 1000 --r 3",
      "mertens --n 100000",
      "alpha --n 100",
      "independence --dist harmonic --n 1000 --primes 2,3",
      "dist --dist zipf --s 1.5 --n 50",
      "sample --dist harmonic --n 1000 --count 100 --seed 9",
  };
  std::size_t identical = 0;
  for (const auto& c : commands) {
    const CliRun a = run_cli(c), b = run_cli(c);
    identical += a.exit_code == 0 && !a.out.empty() && a.out == b.out;
  }
  const int pass_code = run_cli("check --dist uniform --n 1000 --strict").exit_code;
  const int usage_code = run_cli("check --dist uniform --n 1000 --constraints 9").exit_code;
  const int strict_code = run_cli("check --dist harmonic --n 10 --strict").exit_code;
  const bool ok = identical == commands.size() && pass_code == 0 && usage_code == 1 &&
                  strict_code == 2;
  return {ok, std::to_string(identical) + "/" + std::to_string(commands.size()) +
                  " byte-identical; exit codes " + std::to_string(pass_code) + "/" +
                  std::to_string(usage_code) + "/" + std::to_string(strict_code)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <ekac-cli> [--only N]\n");
    return 1;
  }
  g_cli = argv[1];
  int only = 0;
  if (argc == 4 && std::string(argv[2]) == "--only") only = std::stoi(argv[3]);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"omega oracle equivalence", omega_oracle},
      {"omega(1400) = 3", omega_1400},
      {"window mean near e^(e^4)", window_mean},
      {"harmonic upper bounds", example_upper_bounds},
      {"harmonic n=10 lower-bound violation", truth_telling},
      {"uniform degeneracy", uniform_degeneracy},
      {"mean identity", mean_identity},
      {"Poisson-binomial consistency", poisson_binomial},
      {"moment gap bound", moment_gap_bound},
      {"KS trend", ks_trend},
      {"Mertens sums", mertens},
      {"independence gaps", independence},
      {"zipf to harmonic", zipf_to_harmonic},
      {"CLI determinism and exit codes", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && only != static_cast<int>(i + 1)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
