#include "ekac/omega_window.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "ekac/errors.hpp"
#include "ekac/primes.hpp"

namespace ekac {

namespace {

constexpr std::uint64_t kDefaultSmallPrimeBound = 10'000'000;
constexpr std::uint64_t kMaxSmallPrimeBound = std::uint64_t{1} << 36;

constexpr std::size_t kProgressStride = std::size_t{1} << 16;

void sieve_chunk(u128 lo, std::size_t len, std::uint64_t bound,
                 const FactorOptions& factor_options, std::uint8_t* counts,
                 const std::function<void(std::size_t)>& advance) {
  std::vector<u128> cofactor(len);
  for (std::size_t j = 0; j < len; ++j) {
    cofactor[j] = lo + j;
  }
  std::fill_n(counts, len, std::uint8_t{0});
  for_each_prime(2, bound, [&](std::uint64_t p) {
    const auto rem = static_cast<std::uint64_t>(lo % p);
    for (std::uint64_t j = rem == 0 ? 0 : p - rem; j < len; j += p) {
      ++counts[j];
      u128& c = cofactor[j];
      // Cofactors shrink below 2^64 quickly; divide in 64 bits from there.
      do {
        if (c >> 64 == 0) {
          auto c64 = static_cast<std::uint64_t>(c);
          do {
            c64 /= p;
          } while (c64 % p == 0);
          c = c64;
          break;
        }
        c /= p;
      } while (c % p == 0);
    }
  });
  std::size_t reported = 0;
  for (std::size_t j = 0; j < len; ++j) {
    if (cofactor[j] > 1) {
      counts[j] = static_cast<std::uint8_t>(
          counts[j] + rough_omega(cofactor[j], bound, factor_options));
    }
    if ((j + 1) % kProgressStride == 0 || j + 1 == len) {
      advance(j + 1 - reported);
      reported = j + 1;
    }
  }
}

}  // namespace

OmegaWindow omega_window(const WideInteger& center, std::uint64_t radius,
                         const WindowOptions& options) {
  if (center < WideInteger(radius) + WideInteger(2)) {
    throw UsageError("omega_window: center - radius must be at least 2");
  }
  const WideInteger lo = center - WideInteger(radius);
  const WideInteger hi = center + WideInteger(radius);
  if (hi.raw() >> 127 != 0) {
    throw OverflowError("omega_window: window end " + hi.to_string() +
                        " exceeds 127 bits");
  }
  if (radius > (std::uint64_t{1} << 30)) {
    throw ResourceError("omega_window: radius " + std::to_string(radius) +
                        " exceeds the window budget 2^30");
  }
  std::uint64_t bound = options.small_prime_bound;
  if (bound == 0) {
    bound = std::max<std::uint64_t>(
        kDefaultSmallPrimeBound,
        static_cast<std::uint64_t>(integer_root(hi.raw(), 3)) + 1);
  }
  if (bound > kMaxSmallPrimeBound) {
    throw ResourceError("omega_window: small-prime bound " +
                        std::to_string(bound) + " exceeds 2^36");
  }

  const std::size_t len = static_cast<std::size_t>(2 * radius + 1);
  OmegaWindow out;
  out.lo = lo;
  out.small_prime_bound = bound;
  out.counts.resize(len);

  const unsigned chunks_wanted = std::max(1u, options.parallelism.threads);
  const std::size_t chunk = (len + chunks_wanted - 1) / chunks_wanted;
  const std::size_t chunk_count = (len + chunk - 1) / chunk;
  std::atomic<std::size_t> classified{0};
  const auto advance = [&](std::size_t step) {
    const std::size_t done = classified += step;
    if (options.progress) {
      options.progress(done, len);
    }
  };
  parallel_for(chunk_count, options.parallelism, [&](std::size_t i) {
    const std::size_t begin = i * chunk;
    const std::size_t n = std::min(chunk, len - begin);
    sieve_chunk(lo.raw() + begin, n, bound, options.factor,
                out.counts.data() + begin, advance);
  });

  for (std::uint8_t c : out.counts) {
    out.total += c;
  }
  out.mean = static_cast<double>(out.total) / static_cast<double>(len);
  return out;
}

}  // namespace ekac
