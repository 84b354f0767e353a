#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ekac/distribution.hpp"

namespace ekac {

/// Strictly increasing list of distinct primes and their product.
struct PrimeTuple {
  std::vector<std::uint64_t> primes;
  std::uint64_t product = 1;

  /// Sorts, then validates primality and distinctness; rejects products that
  /// overflow 64 bits.
  static PrimeTuple of(std::vector<std::uint64_t> primes);
  std::string to_string() const;
};

/// T(n; tuple) = Σ_{l=1}^{⌊n/product⌋} ε(l·product).
struct EpsilonPartialSum {
  std::uint64_t n = 0;
  PrimeTuple tuple;
  std::uint64_t multiples = 0;  // ⌊n/product⌋
  double value = 0.0;           // compensated Σ ε
  double via_pmf = 0.0;         // Σ pmf(l·product) − ⌊n/product⌋/n
};

EpsilonPartialSum partial_epsilon_sum(const PerturbedDistribution& dist,
                                      const PrimeTuple& tuple);

/// P(d divides X) for X ~ dist, i.e. Σ_{l} pmf(l·d). Exact floor(n/d)/n for
/// the uniform distribution.
double divisibility_probability(const PerturbedDistribution& dist,
                                std::uint64_t d);

enum class ConstraintStatus { pass, fail, vacuous, skipped };
std::string to_string(ConstraintStatus status);

struct Witness {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> primes;
  double value = 0.0;
  double bound = 0.0;
  /// "upper", "lower", "range" (per-entry ε checks) or "limit" (trends).
  std::string side;
  std::optional<std::uint64_t> index;  // support index for per-entry checks
};

struct ConstraintReport {
  /// "2", "3", "4", "5", "5-proof" or "6".
  std::string constraint;
  ConstraintStatus status = ConstraintStatus::pass;
  std::vector<Witness> witnesses;
  std::map<std::string, double> inferred_constants;
  std::size_t checked = 0;  // number of quantifier instances evaluated
  std::size_t upper_violations = 0;
  std::size_t lower_violations = 0;
  bool truncated = false;
  std::vector<std::string> notes;
};

struct VerifierOptions {
  /// Upper limit on enumerated prime tuples; exceeding it truncates.
  std::size_t tuple_budget = 2'000'000;
  /// Witnesses kept per report; counts stay exact beyond it.
  std::size_t max_witnesses = 10'000;
};

/// Depth-first enumeration of tuples of distinct primes <= max_prime, taken in
/// ascending lexicographic order, with product <= n and length <= k_max.
/// Returns false when the budget stopped the enumeration early.
bool enumerate_prime_tuples(std::uint64_t max_prime, std::uint64_t n,
                            unsigned k_max, std::size_t budget,
                            const std::function<void(const PrimeTuple&)>& visit);

/// Constraints 3 and 4: Σ ε = 0 within 1e-12 and ε(i) in [−1/n, 1 − 1/n].
std::vector<ConstraintReport> check_axioms(const PerturbedDistribution& dist);

struct LimitTrend {
  PrimeTuple tuple;
  std::vector<std::uint64_t> n_values;
  std::vector<double> values;  // T(n; tuple) per n
  bool eventually_decreasing = false;  // |T| does not grow on the last step
  bool strictly_decreasing = false;    // |T| strictly decreases throughout
  double threshold = 0.0;
  bool consistent = false;  // eventually_decreasing && |T(max n)| < threshold
};

/// Finite-n evidence for the limit condition (constraint 2). The default threshold is
/// 10 / min(n_list); it is a heuristic, not a proof.
LimitTrend check_limit_condition(const DistributionSpec& spec,
                                 const PrimeTuple& tuple,
                                 const std::vector<std::uint64_t>& n_list,
                                 std::optional<double> threshold = {});

/// Constraint 2 over a default family of tuples and n values ending at n.
ConstraintReport check_limit_constraint(
    const DistributionSpec& spec, std::uint64_t n,
    const std::vector<PrimeTuple>& tuples = {},
    const std::vector<std::uint64_t>& n_list = {});

/// Constraint 5: T(n; (p)) <= C/p for every prime small_prime_threshold(n) < p <= n.
/// Reports C_min = max(0, max p·T).
ConstraintReport check_large_prime_bound(const PerturbedDistribution& dist,
                                         double C,
                                         const VerifierOptions& options = {});

/// Constraint 6: 0 <= T <= D/n for tuples of distinct primes
/// <= small_prime_threshold(n) with product <= n and length <= k_max. Upper
/// and lower violations are counted separately; D_min = max(0, max n·T).
ConstraintReport check_small_tuple_bound(const PerturbedDistribution& dist,
                                         double D, unsigned k_max,
                                         const VerifierOptions& options = {});

/// The bound T <= C/n that the moment argument applies to small-prime tuples.
ConstraintReport check_small_tuple_proof_bound(
    const PerturbedDistribution& dist, double C, unsigned k_max,
    const VerifierOptions& options = {});

struct InferredConstants {
  double C_min = 0.0;
  double D_min = 0.0;
  double T_min = 0.0;
  std::vector<Witness> lower_violations;
  bool truncated = false;
};

InferredConstants infer_constants(const PerturbedDistribution& dist,
                                  unsigned k_max,
                                  const VerifierOptions& options = {});

}  // namespace ekac
