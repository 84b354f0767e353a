#pragma once

// Reference computations that share no code with the library: trial division,
// exact rationals, and long-double direct sums.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

inline unsigned omega(std::uint64_t m) {
  unsigned count = 0;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      ++count;
      while (m % p == 0) m /= p;
    }
  }
  return count + (m > 1 ? 1 : 0);
}

inline bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes_upto(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= x; ++p) {
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

inline Rational harmonic(std::uint64_t n) {
  Rational h = 0;
  for (std::uint64_t i = 1; i <= n; ++i) h += Rational(1, i);
  return h;
}

inline Rational mertens(std::uint64_t n) {
  Rational s = 0;
  for (std::uint64_t p : primes_upto(n)) s += Rational(1, p);
  return s;
}

// T(n; d) for the harmonic law: Σ_{l <= n/d} (1/(l·d·H_n) − 1/n).
inline Rational harmonic_T(std::uint64_t n, std::uint64_t d) {
  const std::uint64_t k = n / d;
  return harmonic(k) / (Rational(d) * harmonic(n)) - Rational(k, n);
}

// |zipf(n, s) − harmonic(n)| in the sup norm, straight from the formulas.
inline double zipf_harmonic_distance(std::uint64_t n, long double s) {
  long double z = 0, h = 0;
  for (std::uint64_t i = 1; i <= n; ++i) {
    z += std::pow(static_cast<long double>(i), -s);
    h += 1.0L / static_cast<long double>(i);
  }
  long double best = 0;
  for (std::uint64_t i = 1; i <= n; ++i) {
    const long double a = std::pow(static_cast<long double>(i), -s) / z;
    const long double b = 1.0L / (static_cast<long double>(i) * h);
    best = std::max(best, std::fabs(a - b));
  }
  return static_cast<double>(best);
}

// KS distance between the uniform normalized ω-CDF on [1, n] and Φ, by
// enumerating ω with trial division and probing both sides of each jump.
inline double uniform_ks(std::uint64_t n) {
  std::map<unsigned, std::uint64_t> counts;
  for (std::uint64_t m = 1; m <= n; ++m) ++counts[omega(m)];
  const long double ll = std::log(std::log(static_cast<long double>(n)));
  const long double sd = std::sqrt(ll);
  long double best = 0, below = 0;
  std::uint64_t cumulative = 0;
  for (const auto& [w, c] : counts) {
    const long double x = (w - ll) / sd;
    const long double phi = 0.5L * std::erfc(-x / std::sqrt(2.0L));
    best = std::max(best, std::fabs(phi - below));
    cumulative += c;
    below = static_cast<long double>(cumulative) / n;
    best = std::max(best, std::fabs(phi - below));
  }
  return static_cast<double>(best);
}

}  // namespace oracle
