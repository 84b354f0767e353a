#include "ekac/factor.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <span>

#include "ekac/errors.hpp"

namespace ekac {

namespace {

using u64 = std::uint64_t;

struct Wide {
  u128 hi;
  u128 lo;
};

inline Wide mul_wide(u128 a, u128 b) {
  const u64 a0 = static_cast<u64>(a), a1 = static_cast<u64>(a >> 64);
  const u64 b0 = static_cast<u64>(b), b1 = static_cast<u64>(b >> 64);
  const u128 p00 = static_cast<u128>(a0) * b0;
  const u128 p01 = static_cast<u128>(a0) * b1;
  const u128 p10 = static_cast<u128>(a1) * b0;
  const u128 p11 = static_cast<u128>(a1) * b1;
  const u128 mid = (p00 >> 64) + static_cast<u64>(p01) + static_cast<u64>(p10);
  return {p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64),
          (mid << 64) | static_cast<u64>(p00)};
}

// Montgomery arithmetic modulo an odd n, R = 2^64. Values stay in [0, n).
class Mont64 {
 public:
  using T = u64;

  explicit Mont64(u64 n) : n_(n) {
    inv_ = n;
    for (int i = 0; i < 5; ++i) {
      inv_ *= 2 - n * inv_;
    }
    const u128 r = (static_cast<u128>(1) << 64) % n;
    r2_ = static_cast<u64>(r * r % n);
    one_ = to(1);
  }

  u64 modulus() const { return n_; }
  u64 one() const { return one_; }
  u64 to(u64 a) const { return mul(a % n_, r2_); }
  u64 from(u64 a) const { return reduce(a); }

  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 add(u64 a, u64 b) const { return a >= n_ - b ? a - (n_ - b) : a + b; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (n_ - b); }

 private:
  u64 reduce(u128 t) const {
    const u64 m = static_cast<u64>(t) * inv_;
    const u64 mh = static_cast<u64>((static_cast<u128>(m) * n_) >> 64);
    const u64 th = static_cast<u64>(t >> 64);
    return th >= mh ? th - mh : th + (n_ - mh);
  }

  u64 n_;
  u64 inv_;
  u64 r2_;
  u64 one_;
};

// Montgomery arithmetic modulo an odd n < 2^128, R = 2^128.
class Mont128 {
 public:
  using T = u128;

  explicit Mont128(u128 n) : n_(n) {
    inv_ = n;
    for (int i = 0; i < 6; ++i) {
      inv_ *= 2 - n * inv_;
    }
    // R mod n, then 128 modular doublings give R^2 mod n.
    u128 x = (~n + 1) % n;
    for (int i = 0; i < 128; ++i) {
      x = add(x, x);
    }
    r2_ = x;
    one_ = to(1);
  }

  u128 modulus() const { return n_; }
  u128 one() const { return one_; }
  u128 to(u128 a) const { return mul(a % n_, r2_); }
  u128 from(u128 a) const { return mul(a, 1); }

  u128 mul(u128 a, u128 b) const {
    const Wide t = mul_wide(a, b);
    const u128 m = t.lo * inv_;
    const u128 mh = mul_wide(m, n_).hi;
    return t.hi >= mh ? t.hi - mh : t.hi + (n_ - mh);
  }
  u128 add(u128 a, u128 b) const { return a >= n_ - b ? a - (n_ - b) : a + b; }
  u128 sub(u128 a, u128 b) const { return a >= b ? a - b : a + (n_ - b); }

 private:
  u128 n_;
  u128 inv_;
  u128 r2_ = 0;
  u128 one_ = 0;
};

template <class M>
typename M::T mont_pow(const M& mt, typename M::T base, u128 e) {
  typename M::T result = mt.one();
  while (e != 0) {
    if (e & 1) {
      result = mt.mul(result, base);
    }
    base = mt.mul(base, base);
    e >>= 1;
  }
  return result;
}

// True when `a` proves n composite.
template <class M>
bool is_witness(const M& mt, typename M::T a, u128 d, unsigned s) {
  using T = typename M::T;
  const T n = mt.modulus();
  a %= n;
  if (a == 0) {
    return false;
  }
  const T one = mt.one();
  const T minus_one = mt.sub(0, one);
  T x = mont_pow(mt, mt.to(a), d);
  if (x == one || x == minus_one) {
    return false;
  }
  for (unsigned i = 1; i < s; ++i) {
    x = mt.mul(x, x);
    if (x == minus_one) {
      return false;
    }
  }
  return true;
}

constexpr std::array<unsigned, 24> kSmallPrimes = {
    2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
    41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

template <class M, class Bases>
bool miller_rabin(typename M::T n, const Bases& bases) {
  const M mt(n);
  u128 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : bases) {
    if (is_witness(mt, static_cast<typename M::T>(a), d, s)) {
      return false;
    }
  }
  return true;
}

u128 gcd(u128 a, u128 b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

u64 splitmix64(u64& state) {
  u64 z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// One Pollard-Brent run with f(y) = y^2 + c. Returns 0 on failure.
template <class M>
u128 brent_attempt(const M& mt, typename M::T c, typename M::T y0,
                   u64 max_iterations) {
  using T = typename M::T;
  const T n = mt.modulus();
  auto f = [&](T v) { return mt.add(mt.mul(v, v), c); };
  auto absdiff = [](T a, T b) { return a > b ? a - b : b - a; };
  constexpr u64 kBatch = 128;
  T y = y0, x = y0, ys = y0;
  T q = mt.one();
  u128 g = 1;
  u64 iterations = 0;
  for (u64 r = 1; g == 1; r <<= 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) {
      y = f(y);
    }
    for (u64 k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      const u64 steps = std::min(kBatch, r - k);
      for (u64 i = 0; i < steps; ++i) {
        y = f(y);
        q = mt.mul(q, absdiff(x, y));
      }
      // q carries a factor R coprime to the odd modulus, so the gcd is
      // unaffected by Montgomery form.
      g = gcd(q, n);
      iterations += steps;
    }
    if (iterations > max_iterations && g == 1) {
      return 0;
    }
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd(absdiff(x, ys), n);
    } while (g == 1);
  }
  return g == n ? 0 : g;
}

bool pow_exceeds(u128 base, unsigned k, u128 limit) {
  u128 acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (base != 0 && acc > limit / base) {
      return true;
    }
    acc *= base;
  }
  return acc > limit;
}

u128 pow_exact(u128 base, unsigned k) {
  u128 acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    acc *= base;
  }
  return acc;
}

unsigned bit_length(u128 n) {
  const u64 hi = static_cast<u64>(n >> 64);
  return hi != 0 ? 128 - static_cast<unsigned>(std::countl_zero(hi))
                 : 64 - static_cast<unsigned>(std::countl_zero(static_cast<u64>(n)));
}

void factor_into(u128 n, const FactorOptions& options,
                 std::map<u128, unsigned>& out, unsigned multiplicity) {
  if (n == 1) {
    return;
  }
  if (is_prime(n)) {
    out[n] += multiplicity;
    return;
  }
  const PerfectPower pp = perfect_power(n);
  if (pp.exponent > 1) {
    factor_into(pp.root, options, out, multiplicity * pp.exponent);
    return;
  }
  const u128 f = find_factor(n, options);
  factor_into(f, options, out, multiplicity);
  factor_into(n / f, options, out, multiplicity);
}

}  // namespace

const u128 kDeterministicPrimeBound =
    static_cast<u128>(3317044064679ULL) * 1000000000000ULL + 887385961981ULL;

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) {
    return false;
  }
  for (unsigned p : kSmallPrimes) {
    if (n % p == 0) {
      return n == p;
    }
  }
  if (n < 89ULL * 89ULL) {
    return true;
  }
  static constexpr std::array<u64, 7> kBases = {
      2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  return miller_rabin<Mont64>(n, kBases);
}

bool is_prime(u128 n) {
  if (n >> 64 == 0) {
    return is_prime_u64(static_cast<u64>(n));
  }
  for (unsigned p : kSmallPrimes) {
    if (n % p == 0) {
      return false;
    }
  }
  if (n < kDeterministicPrimeBound) {
    return miller_rabin<Mont128>(
        n, std::span<const unsigned>(kSmallPrimes.data(), 13));
  }
  return miller_rabin<Mont128>(n, kSmallPrimes);
}

u128 integer_root(u128 n, unsigned k) {
  if (k == 0) {
    throw UsageError("integer_root: exponent must be positive");
  }
  if (k == 1 || n < 2) {
    return n;
  }
  if (k >= bit_length(n)) {
    return 1;
  }
  auto r = static_cast<u128>(
      std::pow(static_cast<long double>(n), 1.0L / static_cast<long double>(k)));
  while (r > 0 && pow_exceeds(r, k, n)) {
    --r;
  }
  while (!pow_exceeds(r + 1, k, n)) {
    ++r;
  }
  return r;
}

PerfectPower perfect_power(u128 n) {
  if (n < 4) {
    return {n, 1};
  }
  for (unsigned k = bit_length(n); k >= 2; --k) {
    const u128 r = integer_root(n, k);
    if (r >= 2 && pow_exact(r, k) == n) {
      return {r, k};
    }
  }
  return {n, 1};
}

u128 find_factor(u128 n, const FactorOptions& options) {
  if (n < 4) {
    throw UsageError("find_factor: " + to_string(n) + " has no proper factor");
  }
  if ((n & 1) == 0) {
    return 2;
  }
  if (is_prime(n)) {
    throw UsageError("find_factor: " + to_string(n) + " is prime");
  }
  const u128 root = integer_root(n, 2);
  if (root * root == n) {
    return root;
  }
  u64 state = options.seed ^ static_cast<u64>(n) ^ static_cast<u64>(n >> 64);
  for (unsigned attempt = 0; attempt < options.max_attempts; ++attempt) {
    u128 g = 0;
    if (n >> 64 == 0) {
      const Mont64 mt(static_cast<u64>(n));
      const u64 c = mt.to(splitmix64(state) % (static_cast<u64>(n) - 1) + 1);
      const u64 y0 = mt.to(splitmix64(state));
      g = brent_attempt(mt, c, y0, options.max_iterations);
    } else {
      const Mont128 mt(n);
      const u128 c_raw =
          (static_cast<u128>(splitmix64(state)) << 64 | splitmix64(state)) %
              (n - 1) + 1;
      const u128 y_raw =
          static_cast<u128>(splitmix64(state)) << 64 | splitmix64(state);
      g = brent_attempt(mt, mt.to(c_raw), mt.to(y_raw), options.max_iterations);
    }
    if (g > 1 && g < n) {
      return g;
    }
  }
  throw FactorizationError("no factor of " + to_string(n) + " found after " +
                               std::to_string(options.max_attempts) +
                               " Pollard-Brent attempts",
                           to_string(n));
}

std::vector<std::pair<u128, unsigned>> factorize(u128 n,
                                                 const FactorOptions& options) {
  if (n == 0) {
    throw UsageError("factorize: zero has no factorization");
  }
  std::map<u128, unsigned> found;
  for (u64 p = 2; p < 1000 && static_cast<u128>(p) * p <= n; ++p) {
    while (n % p == 0) {
      ++found[p];
      n /= p;
    }
  }
  factor_into(n, options, found, 1);
  return {found.begin(), found.end()};
}

unsigned rough_omega(u128 cofactor, std::uint64_t stripped_bound,
                     const FactorOptions& options) {
  if (cofactor == 1) {
    return 0;
  }
  if (stripped_bound < 2) {
    return static_cast<unsigned>(factorize(cofactor, options).size());
  }
  const u128 bound = stripped_bound;
  // A composite whose primes all exceed `bound` is larger than bound^2.
  if (cofactor <= bound * bound) {
    return 1;
  }
  if (is_prime(cofactor)) {
    return 1;
  }
  // With three or more prime factors it would exceed bound^3, so a smaller
  // composite is p*q or p^2.
  if (bit_length(bound) <= 42 && cofactor <= bound * bound * bound) {
    const u128 r = integer_root(cofactor, 2);
    return r * r == cofactor ? 1 : 2;
  }
  const PerfectPower pp = perfect_power(cofactor);
  if (pp.exponent > 1) {
    return rough_omega(pp.root, stripped_bound, options);
  }
  return static_cast<unsigned>(factorize(cofactor, options).size());
}

}  // namespace ekac
