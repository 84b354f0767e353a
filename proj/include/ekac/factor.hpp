#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ekac/wide_integer.hpp"

namespace ekac {

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

/// Strong-probable-prime test on 128-bit integers. Deterministic below
/// kDeterministicPrimeBound (bases 2..41); above it the same 13 bases plus
/// the next 11 primes are used and the answer is probabilistic.
bool is_prime(u128 n);

/// 3317044064679887385961981: below this the first 13 prime bases decide
/// primality exactly.
extern const u128 kDeterministicPrimeBound;

/// floor(n^(1/k)) for k >= 1.
u128 integer_root(u128 n, unsigned k);

struct PerfectPower {
  u128 root;
  unsigned exponent;  // 1 when n is not a perfect power
};

/// Largest exponent k with n = r^k; returns {n, 1} when there is none.
PerfectPower perfect_power(u128 n);

struct FactorOptions {
  std::uint64_t seed = 0x5eed5eed5eedULL;
  /// Independent Pollard-Brent restarts (fresh polynomial constant each).
  unsigned max_attempts = 48;
  /// Iteration cap per attempt.
  std::uint64_t max_iterations = std::uint64_t{1} << 24;
};

/// A nontrivial factor of a composite n via Pollard-Brent. Throws
/// FactorizationError naming n when every attempt fails.
u128 find_factor(u128 n, const FactorOptions& options = {});

/// Complete factorization as ascending (prime, multiplicity) pairs.
std::vector<std::pair<u128, unsigned>> factorize(
    u128 n, const FactorOptions& options = {});

/// ω of a cofactor whose prime factors are all larger than `stripped_bound`
/// (every prime <= stripped_bound has already been divided out). Uses the
/// size of the cofactor relative to the bound to avoid splitting where the
/// factor count is already determined.
unsigned rough_omega(u128 cofactor, std::uint64_t stripped_bound,
                     const FactorOptions& options = {});

}  // namespace ekac
