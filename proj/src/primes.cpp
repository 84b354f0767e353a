#include "ekac/primes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ekac/compensated_sum.hpp"
#include "ekac/errors.hpp"

namespace ekac {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && (r > n / r)) {
    --r;
  }
  while ((r + 1) <= n / (r + 1)) {
    ++r;
  }
  return r;
}

std::uint32_t PrimeTable::spf(std::uint64_t m) const {
  if (m < 2 || m > limit_) {
    throw UsageError("spf lookup " + std::to_string(m) + " outside [2, " +
                     std::to_string(limit_) + "]");
  }
  return spf_[m];
}

unsigned PrimeTable::omega(std::uint64_t m) const {
  if (m == 1) {
    return 0;
  }
  unsigned count = 0;
  while (m > 1) {
    const std::uint32_t p = spf(m);
    ++count;
    while (m % p == 0) {
      m /= p;
    }
  }
  return count;
}

PrimeTable build_spf_sieve(std::uint64_t limit, std::uint64_t cap) {
  if (limit < 2) {
    throw UsageError("sieve limit must be at least 2, got " +
                     std::to_string(limit));
  }
  if (limit > cap) {
    throw ResourceError("sieve limit " + std::to_string(limit) +
                        " exceeds the memory cap " + std::to_string(cap));
  }
  // Linear sieve: every composite is crossed out exactly once, by its
  // smallest prime factor.
  std::vector<std::uint32_t> spf(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      if (p > spf[i] || i * p > limit) {
        break;
      }
      spf[i * p] = p;
    }
  }
  return PrimeTable(limit, std::move(spf));
}

namespace {

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) {
    return primes;
  }
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) {
      continue;
    }
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) {
      composite[j] = true;
    }
  }
  return primes;
}

constexpr std::uint64_t kPrimeSegment = std::uint64_t{1} << 18;

}  // namespace

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& fn) {
  lo = std::max<std::uint64_t>(lo, 2);
  if (hi < lo) {
    return;
  }
  const std::vector<std::uint64_t> base = simple_sieve(isqrt(hi));
  std::vector<std::uint8_t> composite(kPrimeSegment);
  for (std::uint64_t start = lo; start <= hi;) {
    const std::uint64_t end =
        (hi - start >= kPrimeSegment - 1) ? start + kPrimeSegment - 1 : hi;
    const std::size_t len = end - start + 1;
    std::fill_n(composite.begin(), len, std::uint8_t{0});
    for (std::uint64_t p : base) {
      if (p * p > end) {
        break;
      }
      std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
      for (std::uint64_t m = first; m <= end; m += p) {
        composite[m - start] = 1;
      }
    }
    for (std::size_t j = 0; j < len; ++j) {
      if (!composite[j]) {
        fn(start + j);
      }
    }
    if (end == hi) {
      break;
    }
    start = end + 1;
  }
}

std::vector<std::uint64_t> primes_upto(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for_each_prime(2, x, [&](std::uint64_t p) { out.push_back(p); });
  return out;
}

OmegaSieve::OmegaSieve(std::uint64_t lo, std::uint64_t hi) : lo_(lo), hi_(hi) {
  if (lo < 1 || lo > hi) {
    throw UsageError("invalid range [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]: need 1 <= lo <= hi");
  }
  if (hi > kOmegaRangeMax) {
    throw ResourceError("upper bound " + std::to_string(hi) +
                        " exceeds the sieve budget " +
                        std::to_string(kOmegaRangeMax) +
                        "; use omega_window for wider integers");
  }
  base_primes_ = simple_sieve(isqrt(hi));
}

std::size_t OmegaSieve::segment_count() const {
  return static_cast<std::size_t>((hi_ - lo_) / kSegmentSize + 1);
}

void OmegaSieve::fill(std::size_t index, Segment& out,
                      std::uint64_t truncate_at) const {
  const std::uint64_t start = lo_ + index * kSegmentSize;
  const std::uint64_t end = std::min(hi_, start + kSegmentSize - 1);
  const std::size_t len = end - start + 1;
  out.lo = start;
  out.omega.assign(len, 0);
  if (truncate_at != 0) {
    out.truncated.assign(len, 0);
  } else {
    out.truncated.clear();
  }
  // smooth[j] accumulates the part of start+j built from base primes.
  std::vector<std::uint64_t> smooth(len, 1);
  for (std::uint64_t p : base_primes_) {
    if (p * p > end) {
      break;
    }
    const bool counted = p <= truncate_at;
    for (std::uint64_t m = (start + p - 1) / p * p; m <= end; m += p) {
      const std::size_t j = m - start;
      ++out.omega[j];
      smooth[j] *= p;
      if (counted) {
        ++out.truncated[j];
      }
    }
    for (std::uint64_t pk = p * p; pk <= end; pk *= p) {
      for (std::uint64_t m = (start + pk - 1) / pk * pk; m <= end; m += pk) {
        smooth[m - start] *= p;
      }
      if (pk > end / p) {
        break;
      }
    }
  }
  for (std::size_t j = 0; j < len; ++j) {
    const std::uint64_t m = start + j;
    if (smooth[j] != m) {
      ++out.omega[j];
      if (truncate_at != 0 && m / smooth[j] <= truncate_at) {
        ++out.truncated[j];
      }
    }
  }
}

OmegaTable omega_range(std::uint64_t lo, std::uint64_t hi, Parallelism par) {
  if (lo > hi) {
    throw UsageError("omega_range: lo " + std::to_string(lo) +
                     " exceeds hi " + std::to_string(hi));
  }
  if (hi - lo >= kOmegaRangeMaxEntries) {
    throw ResourceError("omega_range: " + std::to_string(hi - lo + 1) +
                        " entries exceed the table budget");
  }
  const OmegaSieve sieve(lo, hi);
  OmegaTable table;
  table.lo = lo;
  table.hi = hi;
  table.counts.resize(hi - lo + 1);
  parallel_for(sieve.segment_count(), par, [&](std::size_t i) {
    OmegaSieve::Segment seg;
    sieve.fill(i, seg);
    std::copy(seg.omega.begin(), seg.omega.end(),
              table.counts.begin() + static_cast<std::ptrdiff_t>(seg.lo - lo));
  });
  return table;
}

double mertens_sum(std::uint64_t n) {
  if (n < 2) {
    throw UsageError("mertens_sum requires n >= 2, got " + std::to_string(n));
  }
  CompensatedSum sum;
  for_each_prime(2, n, [&](std::uint64_t p) { sum += 1.0 / static_cast<double>(p); });
  return sum.value();
}

double log_log(std::uint64_t n) {
  if (n < 3) {
    throw DomainError("log log n is not positive for n = " + std::to_string(n));
  }
  return std::log(std::log(static_cast<double>(n)));
}

double alpha(std::uint64_t n) {
  if (n < 16) {
    throw DomainError("alpha requires n >= 16, got " + std::to_string(n));
  }
  const double x = static_cast<double>(n);
  return std::exp(std::log(x) / std::log(std::log(x)));
}

double small_prime_threshold(std::uint64_t n) {
  if (n >= 16) {
    return alpha(n);
  }
  if (n >= 3) {
    return static_cast<double>(n);
  }
  throw DomainError("no small/large prime split for n = " + std::to_string(n) +
                    ": log log n <= 0");
}

double normal_cdf(double x) {
  if (!std::isfinite(x)) {
    throw UsageError("normal_cdf requires a finite argument");
  }
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

}  // namespace ekac
