#include "ekac/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ekac/compensated_sum.hpp"
#include "ekac/errors.hpp"
#include "ekac/factor.hpp"
#include "ekac/primes.hpp"

namespace ekac {

namespace {

constexpr double kSumTolerance = 1e-12;

void add_witness(ConstraintReport& report, const VerifierOptions& options,
                 Witness w) {
  if (report.witnesses.size() < options.max_witnesses) {
    report.witnesses.push_back(std::move(w));
  }
}

void finish(ConstraintReport& report) {
  const std::size_t violations =
      report.upper_violations + report.lower_violations;
  if (report.witnesses.empty() && violations == 0) {
    if (report.status != ConstraintStatus::vacuous &&
        report.status != ConstraintStatus::skipped) {
      report.status = ConstraintStatus::pass;
    }
  } else {
    report.status = ConstraintStatus::fail;
    if (report.witnesses.size() < violations) {
      report.notes.push_back("witness list clipped to " +
                             std::to_string(report.witnesses.size()) + " of " +
                             std::to_string(violations));
    }
  }
}

std::uint64_t floor_threshold(double t) {
  return static_cast<std::uint64_t>(std::floor(t));
}

}  // namespace

PrimeTuple PrimeTuple::of(std::vector<std::uint64_t> primes) {
  if (primes.empty()) {
    throw UsageError("prime tuple must contain at least one prime");
  }
  std::sort(primes.begin(), primes.end());
  PrimeTuple t;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!is_prime_u64(primes[i])) {
      throw UsageError("tuple entry " + std::to_string(primes[i]) +
                       " is not prime");
    }
    if (i > 0 && primes[i] == primes[i - 1]) {
      throw UsageError("tuple primes must be distinct (" +
                       std::to_string(primes[i]) + " repeats)");
    }
    if (t.product > UINT64_MAX / primes[i]) {
      throw OverflowError("tuple product overflows 64 bits");
    }
    t.product *= primes[i];
  }
  t.primes = std::move(primes);
  return t;
}

std::string PrimeTuple::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < primes.size(); ++i) {
    out += (i ? "," : "") + std::to_string(primes[i]);
  }
  return out + ")";
}

EpsilonPartialSum partial_epsilon_sum(const PerturbedDistribution& dist,
                                      const PrimeTuple& tuple) {
  const std::uint64_t n = dist.n();
  if (tuple.product > n) {
    throw UsageError("tuple product " + std::to_string(tuple.product) +
                     " exceeds the support size " + std::to_string(n));
  }
  const std::uint64_t count = n / tuple.product;
  const double inv_n = 1.0 / static_cast<double>(n);
  CompensatedSum eps;
  CompensatedSum mass;
  for (std::uint64_t l = 1; l <= count; ++l) {
    const double p = dist.pmf_unchecked(l * tuple.product);
    eps += p - inv_n;
    mass += p;
  }
  EpsilonPartialSum out;
  out.n = n;
  out.tuple = tuple;
  out.multiples = count;
  out.value = eps.value();
  out.via_pmf = mass.value() - static_cast<double>(count) / static_cast<double>(n);
  return out;
}

double divisibility_probability(const PerturbedDistribution& dist,
                                std::uint64_t d) {
  if (d == 0) {
    throw UsageError("divisor must be positive");
  }
  const std::uint64_t n = dist.n();
  if (dist.kind() == DistributionKind::uniform) {
    return static_cast<double>(n / d) / static_cast<double>(n);
  }
  CompensatedSum mass;
  for (std::uint64_t m = d; m <= n; m += d) {
    mass += dist.pmf_unchecked(m);
  }
  return mass.value();
}

std::string to_string(ConstraintStatus status) {
  switch (status) {
    case ConstraintStatus::pass:
      return "pass";
    case ConstraintStatus::fail:
      return "fail";
    case ConstraintStatus::vacuous:
      return "vacuous";
    case ConstraintStatus::skipped:
      return "skipped";
  }
  return "unknown";
}

bool enumerate_prime_tuples(std::uint64_t max_prime, std::uint64_t n,
                            unsigned k_max, std::size_t budget,
                            const std::function<void(const PrimeTuple&)>& visit) {
  if (k_max == 0) {
    throw UsageError("k_max must be at least 1");
  }
  const std::vector<std::uint64_t> primes = primes_upto(std::min(max_prime, n));
  PrimeTuple current;
  std::size_t visited = 0;
  bool complete = true;
  // Explicit recursion over ascending primes; the product bound prunes every
  // branch once the next prime no longer fits.
  std::function<void(std::size_t)> descend = [&](std::size_t from) {
    for (std::size_t i = from; i < primes.size() && complete; ++i) {
      const std::uint64_t p = primes[i];
      if (current.product > n / p) {
        break;
      }
      if (visited == budget) {
        complete = false;
        return;
      }
      current.primes.push_back(p);
      current.product *= p;
      ++visited;
      visit(current);
      if (current.primes.size() < k_max) {
        descend(i + 1);
      }
      current.product /= p;
      current.primes.pop_back();
    }
  };
  descend(0);
  return complete;
}

std::vector<ConstraintReport> check_axioms(const PerturbedDistribution& dist) {
  const std::uint64_t n = dist.n();
  const double inv_n = 1.0 / static_cast<double>(n);
  const double upper = 1.0 - inv_n;
  ConstraintReport sum_report;
  sum_report.constraint = "3";
  ConstraintReport range_report;
  range_report.constraint = "4";
  VerifierOptions options;

  CompensatedSum sum;
  double worst_low = 0.0, worst_high = 0.0;
  for (std::uint64_t i = 1; i <= n; ++i) {
    const double e = dist.pmf_unchecked(i) - inv_n;
    sum += e;
    worst_low = std::min(worst_low, e);
    worst_high = std::max(worst_high, e);
    if (e < -inv_n || e > upper) {
      ++range_report.upper_violations;
      Witness w;
      w.n = n;
      w.value = e;
      w.bound = e < -inv_n ? -inv_n : upper;
      w.side = "range";
      w.index = i;
      add_witness(range_report, options, std::move(w));
    }
  }
  sum_report.checked = 1;
  range_report.checked = n;
  const double total = sum.value();
  sum_report.inferred_constants["sum_epsilon"] = total;
  if (std::fabs(total) > kSumTolerance) {
    Witness w;
    w.n = n;
    w.value = total;
    w.bound = kSumTolerance;
    w.side = "upper";
    sum_report.witnesses.push_back(w);
    ++sum_report.upper_violations;
  }
  range_report.inferred_constants["min_epsilon"] = worst_low;
  range_report.inferred_constants["max_epsilon"] = worst_high;
  finish(sum_report);
  finish(range_report);
  return {sum_report, range_report};
}

LimitTrend check_limit_condition(const DistributionSpec& spec,
                                 const PrimeTuple& tuple,
                                 const std::vector<std::uint64_t>& n_list,
                                 std::optional<double> threshold) {
  if (n_list.empty()) {
    throw UsageError("n_list must not be empty");
  }
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) {
      throw UsageError("n_list must be strictly ascending");
    }
  }
  if (tuple.product > n_list.front()) {
    throw UsageError("tuple product " + std::to_string(tuple.product) +
                     " exceeds min(n_list) " + std::to_string(n_list.front()));
  }
  LimitTrend trend;
  trend.tuple = tuple;
  trend.n_values = n_list;
  trend.threshold =
      threshold.value_or(10.0 / static_cast<double>(n_list.front()));
  for (std::uint64_t n : n_list) {
    trend.values.push_back(partial_epsilon_sum(spec.at(n), tuple).value);
  }
  const auto& v = trend.values;
  trend.strictly_decreasing = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(std::fabs(v[i]) < std::fabs(v[i - 1]))) {
      trend.strictly_decreasing = false;
    }
  }
  trend.eventually_decreasing =
      v.size() < 2 || std::fabs(v.back()) <= std::fabs(v[v.size() - 2]);
  trend.consistent =
      trend.eventually_decreasing && std::fabs(v.back()) < trend.threshold;
  return trend;
}

ConstraintReport check_limit_constraint(const DistributionSpec& spec,
                                        std::uint64_t n,
                                        const std::vector<PrimeTuple>& tuples,
                                        const std::vector<std::uint64_t>& n_list) {
  ConstraintReport report;
  report.constraint = "2";
  if (spec.kind == DistributionKind::custom) {
    report.status = ConstraintStatus::skipped;
    report.notes.push_back(
        "a custom table has a single support size; the limit in n cannot be "
        "examined");
    return report;
  }
  std::vector<std::uint64_t> ns = n_list;
  if (ns.empty()) {
    for (std::uint64_t div : {1000ULL, 100ULL, 10ULL, 1ULL}) {
      const std::uint64_t v = n / div;
      if (v >= 2 && (ns.empty() || v > ns.back())) {
        ns.push_back(v);
      }
    }
  }
  std::vector<PrimeTuple> family = tuples;
  if (family.empty()) {
    for (auto primes : std::vector<std::vector<std::uint64_t>>{
             {2}, {3}, {2, 3}, {2, 3, 5}}) {
      family.push_back(PrimeTuple::of(primes));
    }
  }
  VerifierOptions options;
  for (const auto& tuple : family) {
    if (ns.empty() || tuple.product > ns.front()) {
      continue;
    }
    const LimitTrend trend = check_limit_condition(spec, tuple, ns);
    ++report.checked;
    if (!trend.consistent) {
      ++report.upper_violations;
      Witness w;
      w.n = ns.back();
      w.primes = tuple.primes;
      w.value = trend.values.back();
      w.bound = trend.threshold;
      w.side = "limit";
      add_witness(report, options, std::move(w));
    }
    std::ostringstream note;
    note.precision(17);
    note << "tuple " << tuple.to_string() << ":";
    for (std::size_t i = 0; i < ns.size(); ++i) {
      note << " T(" << ns[i] << ")=" << trend.values[i];
    }
    note << (trend.consistent ? " consistent" : " inconsistent")
         << " with a zero limit (heuristic threshold " << trend.threshold << ")";
    report.notes.push_back(note.str());
  }
  if (report.checked == 0) {
    report.status = ConstraintStatus::vacuous;
  }
  finish(report);
  return report;
}

ConstraintReport check_large_prime_bound(const PerturbedDistribution& dist,
                                         double C,
                                         const VerifierOptions& options) {
  const std::uint64_t n = dist.n();
  ConstraintReport report;
  report.constraint = "5";
  const std::uint64_t split = floor_threshold(small_prime_threshold(n));
  double c_min = 0.0;
  for_each_prime(split + 1, n, [&](std::uint64_t p) {
    const double t = partial_epsilon_sum(dist, PrimeTuple{{p}, p}).value;
    const double scaled = static_cast<double>(p) * t;
    c_min = std::max(c_min, scaled);
    ++report.checked;
    if (scaled > C) {
      ++report.upper_violations;
      add_witness(report, options,
                  Witness{n, {p}, t, C / static_cast<double>(p), "upper", {}});
    }
  });
  report.inferred_constants["C_min"] = c_min;
  if (report.checked == 0) {
    report.status = ConstraintStatus::vacuous;
    report.notes.push_back("no prime p with threshold < p <= n");
  }
  finish(report);
  return report;
}

namespace {

ConstraintReport small_tuple_scan(const PerturbedDistribution& dist,
                                  double constant, unsigned k_max,
                                  bool check_lower, const char* id,
                                  const char* constant_name,
                                  const VerifierOptions& options) {
  const std::uint64_t n = dist.n();
  const double nd = static_cast<double>(n);
  ConstraintReport report;
  report.constraint = id;
  const std::uint64_t split = floor_threshold(small_prime_threshold(n));
  double scaled_max = 0.0;
  double t_min = 0.0;
  bool any = false;
  const bool complete = enumerate_prime_tuples(
      split, n, k_max, options.tuple_budget, [&](const PrimeTuple& tuple) {
        const double t = partial_epsilon_sum(dist, tuple).value;
        const double scaled = nd * t;
        scaled_max = std::max(scaled_max, scaled);
        t_min = any ? std::min(t_min, t) : t;
        any = true;
        ++report.checked;
        if (scaled > constant) {
          ++report.upper_violations;
          add_witness(report, options,
                      Witness{n, tuple.primes, t, constant / nd, "upper", {}});
        }
        if (check_lower && t < 0.0) {
          ++report.lower_violations;
          add_witness(report, options,
                      Witness{n, tuple.primes, t, 0.0, "lower", {}});
        }
      });
  report.truncated = !complete;
  if (report.truncated) {
    report.notes.push_back("tuple enumeration stopped at the budget of " +
                           std::to_string(options.tuple_budget));
  }
  report.inferred_constants[constant_name] = scaled_max;
  if (check_lower) {
    report.inferred_constants["T_min"] = t_min;
  }
  if (report.checked == 0) {
    report.status = ConstraintStatus::vacuous;
  }
  finish(report);
  return report;
}

}  // namespace

ConstraintReport check_small_tuple_bound(const PerturbedDistribution& dist,
                                         double D, unsigned k_max,
                                         const VerifierOptions& options) {
  return small_tuple_scan(dist, D, k_max, true, "6", "D_min", options);
}

ConstraintReport check_small_tuple_proof_bound(const PerturbedDistribution& dist,
                                               double C, unsigned k_max,
                                               const VerifierOptions& options) {
  return small_tuple_scan(dist, C, k_max, false, "5-proof", "C_min", options);
}

InferredConstants infer_constants(const PerturbedDistribution& dist,
                                  unsigned k_max,
                                  const VerifierOptions& options) {
  VerifierOptions all = options;
  all.max_witnesses = SIZE_MAX;
  const ConstraintReport large = check_large_prime_bound(dist, INFINITY, all);
  const ConstraintReport small = check_small_tuple_bound(dist, INFINITY, k_max, all);
  InferredConstants out;
  out.C_min = large.inferred_constants.at("C_min");
  out.D_min = small.inferred_constants.at("D_min");
  out.T_min = small.inferred_constants.at("T_min");
  out.truncated = small.truncated;
  for (const auto& w : small.witnesses) {
    if (w.side == "lower") {
      out.lower_violations.push_back(w);
    }
  }
  return out;
}

}  // namespace ekac
