#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ekac/factor.hpp"
#include "ekac/parallel.hpp"
#include "ekac/wide_integer.hpp"

namespace ekac {

struct WindowOptions {
  /// Primes up to this bound are sieved out of the window before cofactors
  /// are classified. 0 selects max(10^7, floor(cbrt(hi)) + 1), which leaves
  /// every cofactor with at most two prime factors.
  std::uint64_t small_prime_bound = 0;
  FactorOptions factor;
  Parallelism parallelism;
  /// Called with (integers classified, window length) as work completes; may
  /// be invoked from several threads at once. May be empty.
  std::function<void(std::size_t, std::size_t)> progress;
};

struct OmegaWindow {
  WideInteger lo;  // first integer of the window
  std::vector<std::uint8_t> counts;
  std::uint64_t total = 0;  // Σ counts
  double mean = 0.0;
  std::uint64_t small_prime_bound = 0;
};

/// ω(m) for every m in [center - radius, center + radius] by complete
/// factorization: small primes are sieved out of the window, the remaining
/// cofactors go through primality testing, perfect-power detection and
/// Pollard-Brent splitting.
OmegaWindow omega_window(const WideInteger& center, std::uint64_t radius,
                         const WindowOptions& options = {});

}  // namespace ekac
