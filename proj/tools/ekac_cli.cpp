// ekac: command-line front end for the ω-statistics library.
//
// Data goes to standard output (or --out); progress and errors go to standard
// error. Exit codes: 0 success, 1 usage or validation error, 2 constraint
// violation under --strict.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ekac/compensated_sum.hpp"
#include "ekac/constraints.hpp"
#include "ekac/distribution.hpp"
#include "ekac/errors.hpp"
#include "ekac/omega_window.hpp"
#include "ekac/primes.hpp"
#include "ekac/report_json.hpp"
#include "ekac/statistics.hpp"

namespace {

using ekac::DistributionKind;
using ekac::PerturbedDistribution;
using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitStrict = 2;

struct DistributionFlags {
  std::string kind = "uniform";
  std::uint64_t n = 0;
  double s = 0.0;
  std::string table;
};

struct RunConfig {
  DistributionFlags dist;
  int precision = 6;
  unsigned threads = 1;
  std::string out_path;
};

void add_distribution_flags(CLI::App* cmd, DistributionFlags& flags) {
  cmd->add_option("--dist", flags.kind, "uniform | harmonic | zipf | custom")
      ->check(CLI::IsMember({"uniform", "harmonic", "zipf", "custom"}));
  cmd->add_option("--n", flags.n, "support size");
  cmd->add_option("--s", flags.s, "zipf exponent (> 1)");
  cmd->add_option("--table", flags.table, "CSV file with columns i,probability");
}

PerturbedDistribution make_dist(const DistributionFlags& flags) {
  const DistributionKind kind = ekac::parse_distribution_kind(flags.kind);
  if (kind == DistributionKind::custom) {
    if (flags.table.empty()) {
      throw ekac::UsageError("--dist custom requires --table");
    }
    PerturbedDistribution d = ekac::read_table_csv_file(flags.table);
    if (flags.n != 0 && flags.n != d.n()) {
      throw ekac::UsageError("--n " + std::to_string(flags.n) +
                             " does not match the table length " +
                             std::to_string(d.n()));
    }
    return d;
  }
  if (!flags.table.empty()) {
    throw ekac::UsageError("--table is only valid with --dist custom");
  }
  if (flags.n == 0) {
    throw ekac::UsageError("--n is required");
  }
  if (kind == DistributionKind::zipf) {
    return PerturbedDistribution::zipf(flags.n, flags.s);
  }
  if (flags.s != 0.0) {
    throw ekac::UsageError("--s is only valid with --dist zipf");
  }
  return kind == DistributionKind::uniform
             ? PerturbedDistribution::uniform(flags.n)
             : PerturbedDistribution::harmonic(flags.n);
}

ekac::DistributionSpec make_spec(const PerturbedDistribution& dist) {
  ekac::DistributionSpec spec;
  spec.kind = dist.kind();
  spec.s = dist.s();
  if (dist.kind() == DistributionKind::custom) {
    auto table = std::make_shared<std::vector<double>>();
    table->reserve(dist.n());
    for (std::uint64_t i = 1; i <= dist.n(); ++i) {
      table->push_back(dist.pmf(i));
    }
    spec.table = std::move(table);
  }
  return spec;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text,
                                          const char* flag) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw ekac::UsageError(std::string(flag) + ": '" + text +
                             "' is not a comma-separated list of integers");
    }
    out.push_back(std::stoull(item));
  }
  if (out.empty()) {
    throw ekac::UsageError(std::string(flag) + " must not be empty");
  }
  return out;
}

std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

// Output sink: --out file if given, standard output otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) {
        throw ekac::UsageError("cannot open output file '" + path + "'");
      }
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void print_json(const RunConfig& cfg, const json& j) {
  Sink sink(cfg.out_path);
  sink.stream() << j.dump(2) << "\n";
}

// --- omega ----------------------------------------------------------------

struct OmegaArgs {
  std::optional<std::uint64_t> from, to;
  std::string center;
  std::optional<std::uint64_t> radius;
  std::uint64_t bound = 0;
  bool mean_only = false;
  bool quiet = false;
};

int run_omega(const RunConfig& cfg, const OmegaArgs& a) {
  const bool range_mode = a.from || a.to;
  const bool window_mode = !a.center.empty() || a.radius;
  if (range_mode == window_mode) {
    throw ekac::UsageError(
        "omega needs either --from/--to or --center/--radius");
  }
  Sink sink(cfg.out_path);
  std::ostream& out = sink.stream();
  if (range_mode) {
    if (!a.from || !a.to) {
      throw ekac::UsageError("--from and --to must be given together");
    }
    const ekac::OmegaTable table =
        ekac::omega_range(*a.from, *a.to, {cfg.threads});
    out << "m,omega\n";
    for (std::uint64_t m = table.lo;; ++m) {
      out << m << ',' << static_cast<unsigned>(table.at(m)) << '\n';
      if (m == table.hi) {
        break;
      }
    }
    return 0;
  }
  if (a.center.empty() || !a.radius) {
    throw ekac::UsageError("--center and --radius must be given together");
  }
  ekac::WindowOptions options;
  options.small_prime_bound = a.bound;
  options.parallelism.threads = cfg.threads;
  std::mutex progress_mutex;
  std::size_t last_percent = 0;
  if (!a.quiet) {
    options.progress = [&](std::size_t done, std::size_t total) {
      std::lock_guard lock(progress_mutex);
      const std::size_t percent = done * 100 / total;
      if (percent >= last_percent + 10 || done == total) {
        last_percent = percent;
        std::cerr << "omega window: " << done << "/" << total
                  << " integers classified\n";
      }
    };
  }
  const ekac::OmegaWindow w =
      ekac::omega_window(ekac::WideInteger::parse(a.center), *a.radius, options);
  if (!a.mean_only) {
    out << "m,omega\n";
    ekac::WideInteger m = w.lo;
    for (std::uint8_t c : w.counts) {
      out << m.to_string() << ',' << static_cast<unsigned>(c) << '\n';
      m = m + ekac::WideInteger(1);
    }
  }
  out << "# mean " << fixed(w.mean, cfg.precision) << '\n';
  return 0;
}

// --- check ----------------------------------------------------------------

struct CheckArgs {
  std::string constraints = "2,3,4,5,6";
  unsigned kmax = 3;
  double C = 1.0;
  double D = 1.0;
  bool strict = false;
  std::string nlist;
  std::vector<std::string> tuples;
  std::size_t budget = 2'000'000;
};

int run_check(const RunConfig& cfg, const CheckArgs& a) {
  const PerturbedDistribution dist = make_dist(cfg.dist);
  std::vector<std::string> ids;
  {
    std::stringstream ss(a.constraints);
    std::string id;
    while (std::getline(ss, id, ',')) {
      if (id != "2" && id != "3" && id != "4" && id != "5" && id != "5p" &&
          id != "6") {
        throw ekac::UsageError("unknown constraint '" + id +
                               "' (expected 2, 3, 4, 5, 5p or 6)");
      }
      ids.push_back(id);
    }
  }
  if (a.kmax == 0) {
    throw ekac::UsageError("--kmax must be at least 1");
  }
  ekac::VerifierOptions options;
  options.tuple_budget = a.budget;

  std::vector<ekac::ConstraintReport> reports;
  std::optional<std::vector<ekac::ConstraintReport>> axioms;
  for (const auto& id : ids) {
    if (id == "2") {
      std::vector<ekac::PrimeTuple> tuples;
      for (const auto& t : a.tuples) {
        tuples.push_back(ekac::PrimeTuple::of(parse_u64_list(t, "--tuple")));
      }
      std::vector<std::uint64_t> ns;
      if (!a.nlist.empty()) {
        ns = parse_u64_list(a.nlist, "--nlist");
      }
      reports.push_back(ekac::check_limit_constraint(make_spec(dist),
                                                     dist.n(), tuples, ns));
    } else if (id == "3" || id == "4") {
      if (!axioms) {
        axioms = ekac::check_axioms(dist);
      }
      reports.push_back((*axioms)[id == "3" ? 0 : 1]);
    } else if (id == "5") {
      reports.push_back(ekac::check_large_prime_bound(dist, a.C, options));
    } else if (id == "5p") {
      reports.push_back(
          ekac::check_small_tuple_proof_bound(dist, a.C, a.kmax, options));
    } else {
      reports.push_back(
          ekac::check_small_tuple_bound(dist, a.D, a.kmax, options));
    }
  }
  print_json(cfg, json(reports));
  if (a.strict) {
    for (const auto& r : reports) {
      if (r.status == ekac::ConstraintStatus::fail) {
        std::cerr << "strict: constraint " << r.constraint << " failed ("
                  << r.upper_violations << " upper, " << r.lower_violations
                  << " lower violations)\n";
        return kExitStrict;
      }
    }
  }
  return 0;
}

// --- ekcdf ----------------------------------------------------------------

struct EkcdfArgs {
  std::string format = "csv";
  std::string centering = "loglog";
  std::string summary_path;
};

int run_ekcdf(const RunConfig& cfg, const EkcdfArgs& a) {
  const PerturbedDistribution dist = make_dist(cfg.dist);
  const ekac::Centering centering = a.centering == "mean"
                                        ? ekac::Centering::empirical_mean
                                        : ekac::Centering::log_log;
  const ekac::NormalizedCdf cdf =
      ekac::normalized_cdf(dist, centering, {cfg.threads});
  const ekac::KsResult ks = ekac::ks_statistic(cdf);
  json summary = ks;
  summary["dist"] = dist.label();
  summary["center"] = cdf.center;
  summary["scale"] = cdf.scale;
  if (!a.summary_path.empty()) {
    std::ofstream f(a.summary_path);
    if (!f) {
      throw ekac::UsageError("cannot open summary file '" + a.summary_path + "'");
    }
    f << summary.dump(2) << "\n";
  }
  if (a.format == "json") {
    print_json(cfg, summary);
    return 0;
  }
  Sink sink(cfg.out_path);
  std::ostream& out = sink.stream();
  out << "x,F_n,Phi,gap\n";
  for (const auto& pt : cdf.points) {
    const double phi = ekac::normal_cdf(pt.x);
    out << fixed(pt.x, cfg.precision) << ',' << fixed(pt.F, cfg.precision) << ','
        << fixed(phi, cfg.precision) << ','
        << fixed(std::fabs(pt.F - phi), cfg.precision) << '\n';
  }
  return 0;
}

// --- dist / sample --------------------------------------------------------

struct DistArgs {
  std::optional<std::uint64_t> from, to;
  bool emit_table = false;
};

int run_dist(const RunConfig& cfg, const DistArgs& a) {
  const PerturbedDistribution dist = make_dist(cfg.dist);
  Sink sink(cfg.out_path);
  std::ostream& out = sink.stream();
  if (a.emit_table) {
    ekac::write_table_csv(out, dist);
    return 0;
  }
  const std::uint64_t lo = a.from.value_or(1);
  const std::uint64_t hi = a.to.value_or(dist.n());
  if (lo < 1 || hi > dist.n() || lo > hi) {
    throw ekac::UsageError("--from/--to must satisfy 1 <= from <= to <= n");
  }
  out << "i,probability,epsilon,cdf\n";
  ekac::CompensatedSum running(lo > 1 ? dist.cdf(lo - 1) : 0.0);
  for (std::uint64_t i = lo; i <= hi; ++i) {
    running += dist.pmf(i);
    out << i << ',' << fixed(dist.pmf(i), cfg.precision) << ','
        << fixed(dist.epsilon(i), cfg.precision) << ','
        << fixed(running.value(), cfg.precision) << '\n';
  }
  return 0;
}

struct SampleArgs {
  std::size_t count = 10;
  std::uint64_t seed = 42;
};

int run_sample(const RunConfig& cfg, const SampleArgs& a) {
  ekac::SampleStream stream(make_dist(cfg.dist), a.seed);
  Sink sink(cfg.out_path);
  std::ostream& out = sink.stream();
  for (std::size_t i = 0; i < a.count; ++i) {
    out << stream.next() << '\n';
  }
  return 0;
}

// --- moments / tail / independence / scalars ------------------------------

struct MomentsArgs {
  unsigned r = 3;
  double C = 1.0;
};

int run_moments(const RunConfig& cfg, const MomentsArgs& a) {
  const PerturbedDistribution dist = make_dist(cfg.dist);
  print_json(cfg, json(ekac::moment_gaps(dist, a.r, a.C, {cfg.threads})));
  return 0;
}

int run_tail(const RunConfig& cfg, double D) {
  print_json(cfg, json(ekac::tail_sum(make_dist(cfg.dist), D)));
  return 0;
}

int run_independence(const RunConfig& cfg, const std::string& primes) {
  const PerturbedDistribution dist = make_dist(cfg.dist);
  const auto tuple = ekac::PrimeTuple::of(parse_u64_list(primes, "--primes"));
  print_json(cfg, json(ekac::independence_gap(dist, tuple)));
  return 0;
}

int run_mertens(const RunConfig& cfg, std::uint64_t n) {
  const double sum = ekac::mertens_sum(n);
  json j{{"n", n}, {"sum", sum}};
  if (n >= 3) {
    j["loglog"] = ekac::log_log(n);
    j["offset"] = sum - ekac::log_log(n);
  }
  print_json(cfg, j);
  return 0;
}

int run_alpha(const RunConfig& cfg, std::uint64_t n) {
  const double a = ekac::alpha(n);
  const auto primes = ekac::primes_upto(static_cast<std::uint64_t>(a));
  print_json(cfg, json{{"n", n}, {"alpha", a}, {"primes_below", primes.size()}});
  return 0;
}

struct McArgs {
  std::size_t draws = 100000;
  std::uint64_t seed = 42;
  double confidence = 0.95;
};

int run_mcks(const RunConfig& cfg, const McArgs& a) {
  print_json(cfg, json(ekac::monte_carlo_ks(make_dist(cfg.dist), a.draws,
                                            a.seed, a.confidence)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ekac: distinct-prime-factor statistics under perturbed uniform distributions"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--precision", cfg.precision, "decimals in CSV/text output")
      ->check(CLI::Range(0, 15));
  app.add_option("--threads", cfg.threads, "worker threads for segment parallelism")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--out", cfg.out_path, "write data to this file instead of stdout");

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--precision", cfg.precision)->check(CLI::Range(0, 15));
    cmd->add_option("--threads", cfg.threads)->check(CLI::Range(1u, 256u));
    cmd->add_option("--out", cfg.out_path);
  };

  OmegaArgs omega_args;
  auto* omega = app.add_subcommand("omega", "ω(m) over a range or a window around a wide integer");
  omega->add_option("--from", omega_args.from);
  omega->add_option("--to", omega_args.to);
  omega->add_option("--center", omega_args.center, "decimal integer (up to 127 bits)");
  omega->add_option("--radius", omega_args.radius);
  omega->add_option("--bound", omega_args.bound, "small-prime sieve bound (0 = automatic)");
  omega->add_flag("--mean-only", omega_args.mean_only, "window mode: print only the mean");
  omega->add_flag("--quiet", omega_args.quiet, "suppress progress on stderr");
  add_common(omega);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "verify constraints 2-6 and infer constants");
  add_distribution_flags(check, cfg.dist);
  check->add_option("--constraints", check_args.constraints, "comma list of 2,3,4,5,5p,6");
  check->add_option("--kmax", check_args.kmax, "maximum tuple length for constraint 6");
  check->add_option("--C", check_args.C, "constant in the large-prime bound");
  check->add_option("--D", check_args.D, "constant in the small-tuple bound");
  check->add_flag("--strict", check_args.strict, "exit 2 on any failure");
  check->add_option("--nlist", check_args.nlist, "n values for constraint 2, e.g. 10,100,1000");
  check->add_option("--tuple", check_args.tuples, "prime tuple for constraint 2, e.g. 2,3 (repeatable)");
  check->add_option("--budget", check_args.budget, "maximum enumerated tuples");
  add_common(check);

  EkcdfArgs ekcdf_args;
  auto* ekcdf = app.add_subcommand("ekcdf", "normalized ω CDF against Φ and the KS distance");
  add_distribution_flags(ekcdf, cfg.dist);
  ekcdf->add_option("--format", ekcdf_args.format)->check(CLI::IsMember({"csv", "json"}));
  ekcdf->add_option("--centering", ekcdf_args.centering)->check(CLI::IsMember({"loglog", "mean"}));
  ekcdf->add_option("--summary", ekcdf_args.summary_path, "also write the JSON summary here");
  add_common(ekcdf);

  MomentsArgs moments_args;
  auto* moments = app.add_subcommand("moments", "E(S_n^r) against E_n(g_n^r) with the gap bound");
  add_distribution_flags(moments, cfg.dist);
  moments->add_option("--r", moments_args.r, "largest moment order");
  moments->add_option("--C", moments_args.C);
  add_common(moments);

  double tail_D = 1.0;
  auto* tail = app.add_subcommand("tail", "large-prime tail sum over (α_n, n]");
  add_distribution_flags(tail, cfg.dist);
  tail->add_option("--D", tail_D);
  add_common(tail);

  std::uint64_t scalar_n = 0;
  auto* mertens = app.add_subcommand("mertens", "Σ_{p<=n} 1/p");
  mertens->add_option("--n", scalar_n)->required();
  add_common(mertens);
  auto* alpha = app.add_subcommand("alpha", "α_n = n^(1/log log n)");
  alpha->add_option("--n", scalar_n)->required();
  add_common(alpha);

  std::string primes;
  auto* independence = app.add_subcommand("independence", "|P(∩A_p) − Π P(A_p)|");
  add_distribution_flags(independence, cfg.dist);
  independence->add_option("--primes", primes, "comma-separated distinct primes")->required();
  add_common(independence);

  DistArgs dist_args;
  auto* dist = app.add_subcommand("dist", "pmf / ε / CDF table, or an i,probability table");
  add_distribution_flags(dist, cfg.dist);
  dist->add_option("--from", dist_args.from);
  dist->add_option("--to", dist_args.to);
  dist->add_flag("--emit-table", dist_args.emit_table, "write i,probability (round-trip precision)");
  add_common(dist);

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "seeded inverse-transform draws");
  add_distribution_flags(sample, cfg.dist);
  sample->add_option("--count", sample_args.count);
  sample->add_option("--seed", sample_args.seed);
  add_common(sample);

  McArgs mc_args;
  auto* mcks = app.add_subcommand("mcks", "Monte Carlo KS estimate with a DKW band");
  add_distribution_flags(mcks, cfg.dist);
  mcks->add_option("--draws", mc_args.draws);
  mcks->add_option("--seed", mc_args.seed);
  mcks->add_option("--confidence", mc_args.confidence);
  add_common(mcks);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*omega) return run_omega(cfg, omega_args);
    if (*check) return run_check(cfg, check_args);
    if (*ekcdf) return run_ekcdf(cfg, ekcdf_args);
    if (*moments) return run_moments(cfg, moments_args);
    if (*tail) return run_tail(cfg, tail_D);
    if (*mertens) return run_mertens(cfg, scalar_n);
    if (*alpha) return run_alpha(cfg, scalar_n);
    if (*independence) return run_independence(cfg, primes);
    if (*dist) return run_dist(cfg, dist_args);
    if (*sample) return run_sample(cfg, sample_args);
    if (*mcks) return run_mcks(cfg, mc_args);
  } catch (const ekac::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
