#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ekac/parallel.hpp"

namespace ekac {

inline constexpr std::uint64_t kDefaultSpfCap = std::uint64_t{1} << 31;

/// Smallest-prime-factor table for 2 <= m <= limit.
class PrimeTable {
 public:
  PrimeTable() = default;
  PrimeTable(std::uint64_t limit, std::vector<std::uint32_t> spf)
      : limit_(limit), spf_(std::move(spf)) {}

  std::uint64_t limit() const { return limit_; }
  /// Requires 2 <= m <= limit().
  std::uint32_t spf(std::uint64_t m) const;
  bool is_prime(std::uint64_t m) const { return m >= 2 && spf(m) == m; }
  /// ω(m) by repeated division through the table; 0 for m == 1.
  unsigned omega(std::uint64_t m) const;

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> spf_;
};

PrimeTable build_spf_sieve(std::uint64_t limit,
                           std::uint64_t cap = kDefaultSpfCap);

/// Ascending list of the primes in [2, x].
std::vector<std::uint64_t> primes_upto(std::uint64_t x);

/// Streams the primes in [lo, hi] in ascending order through a segmented
/// sieve of Eratosthenes.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& fn);

/// ω(m) for every m in [lo, hi].
struct OmegaTable {
  std::uint64_t lo = 1;
  std::uint64_t hi = 1;
  std::vector<std::uint8_t> counts;

  std::uint8_t at(std::uint64_t m) const { return counts[m - lo]; }
  std::size_t size() const { return counts.size(); }
};

/// Upper end accepted by the sieve-backed range operations; wider integers
/// go through omega_window.
inline constexpr std::uint64_t kOmegaRangeMax = std::uint64_t{1} << 50;
/// Largest number of entries omega_range will materialise.
inline constexpr std::uint64_t kOmegaRangeMaxEntries = std::uint64_t{1} << 31;

OmegaTable omega_range(std::uint64_t lo, std::uint64_t hi,
                       Parallelism par = {});

/// Segmented ω sieve over [lo, hi]. Each segment is filled independently, so
/// callers can process segments in parallel and merge in index order.
///
/// Primes up to sqrt(hi) are applied as prime powers to build the smooth part
/// of each m; whatever is left over is a single prime above sqrt(hi).
class OmegaSieve {
 public:
  static constexpr std::uint64_t kSegmentSize = std::uint64_t{1} << 15;

  struct Segment {
    std::uint64_t lo = 0;
    std::vector<std::uint8_t> omega;
    /// Number of distinct primes <= truncate_at dividing m (empty when
    /// truncation is disabled).
    std::vector<std::uint8_t> truncated;
  };

  OmegaSieve(std::uint64_t lo, std::uint64_t hi);

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }
  std::size_t segment_count() const;

  /// Fills segment `index`. A nonzero `truncate_at` also fills
  /// Segment::truncated from the same pass.
  void fill(std::size_t index, Segment& out,
            std::uint64_t truncate_at = 0) const;

 private:
  std::uint64_t lo_;
  std::uint64_t hi_;
  std::vector<std::uint64_t> base_primes_;
};

/// Σ_{p <= n} 1/p over ascending primes, compensated. Requires n >= 2.
double mertens_sum(std::uint64_t n);

/// log(log(n)); requires n >= 3 so the result is positive.
double log_log(std::uint64_t n);

/// n^(1 / log log n). Requires n >= 16.
double alpha(std::uint64_t n);

/// Standard normal CDF. Throws UsageError on non-finite input.
double normal_cdf(double x);

/// Boundary between "small" and "large" primes for support size n: α_n for
/// n >= 16. For 3 <= n <= 15, 0 < log log n <= 1 makes α_n >= n, so every
/// prime up to n is small and n itself is returned. Throws DomainError for
/// n < 3, where log log n <= 0.
double small_prime_threshold(std::uint64_t n);

std::uint64_t isqrt(std::uint64_t n);

}  // namespace ekac
