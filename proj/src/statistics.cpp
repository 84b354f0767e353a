#include "ekac/statistics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ekac/compensated_sum.hpp"
#include "ekac/errors.hpp"
#include "ekac/factor.hpp"
#include "ekac/primes.hpp"

namespace ekac {

namespace {

// ω(m) <= 15 for every m < 2^64.
constexpr std::size_t kOmegaSlots = 16;

struct SegmentTally {
  std::array<CompensatedSum, kOmegaSlots> mass{};
  std::array<std::uint64_t, kOmegaSlots> counts{};
};

void check_budget(const PerturbedDistribution& dist, const char* what) {
  if (dist.n() > kEnumerationBudget) {
    throw ResourceError(std::string(what) + ": support size " +
                        std::to_string(dist.n()) +
                        " exceeds the exact-enumeration budget 10^8; use the "
                        "Monte Carlo mode (monte_carlo_ks) instead");
  }
}

// Tallies pmf mass (and, for uniform, integer counts) by the value of either
// ω or g_n across [1, n], one sieve segment at a time, merging in order.
std::vector<SegmentTally> tally_segments(const PerturbedDistribution& dist,
                                         std::uint64_t truncate_at,
                                         Parallelism par) {
  const OmegaSieve sieve(1, dist.n());
  std::vector<SegmentTally> parts(sieve.segment_count());
  const bool uniform = dist.kind() == DistributionKind::uniform;
  parallel_for(parts.size(), par, [&](std::size_t i) {
    OmegaSieve::Segment seg;
    sieve.fill(i, seg, truncate_at);
    const auto& values = truncate_at != 0 ? seg.truncated : seg.omega;
    SegmentTally& tally = parts[i];
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (uniform) {
        ++tally.counts[values[j]];
      } else {
        tally.mass[values[j]] += dist.pmf_unchecked(seg.lo + j);
      }
    }
  });
  return parts;
}

struct Tally {
  std::vector<double> mass;
  std::vector<std::uint64_t> counts;
};

Tally merge(const PerturbedDistribution& dist,
            const std::vector<SegmentTally>& parts) {
  std::array<CompensatedSum, kOmegaSlots> mass{};
  std::array<std::uint64_t, kOmegaSlots> counts{};
  for (const auto& part : parts) {
    for (std::size_t w = 0; w < kOmegaSlots; ++w) {
      mass[w] += part.mass[w];
      counts[w] += part.counts[w];
    }
  }
  const bool uniform = dist.kind() == DistributionKind::uniform;
  std::size_t top = 0;
  for (std::size_t w = 0; w < kOmegaSlots; ++w) {
    if (counts[w] != 0 || mass[w].value() != 0.0) {
      top = w + 1;
    }
  }
  Tally out;
  out.mass.resize(top);
  if (uniform) {
    out.counts.assign(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(top));
  }
  for (std::size_t w = 0; w < top; ++w) {
    out.mass[w] = uniform ? static_cast<double>(counts[w]) /
                                static_cast<double>(dist.n())
                          : mass[w].value();
  }
  return out;
}

u128 ipow(u128 base, unsigned e) {
  u128 r = 1;
  while (e-- > 0) {
    r *= base;
  }
  return r;
}

std::vector<double> moments_from(const Tally& tally, std::uint64_t n,
                                 unsigned r_max) {
  std::vector<double> out(r_max + 1);
  out[0] = 1.0;
  for (unsigned r = 1; r <= r_max; ++r) {
    if (!tally.counts.empty()) {
      u128 total = 0;
      for (std::size_t g = 0; g < tally.counts.size(); ++g) {
        total += ipow(g, r) * tally.counts[g];
      }
      out[r] = static_cast<double>(total) / static_cast<double>(n);
    } else {
      CompensatedSum sum;
      for (std::size_t g = 0; g < tally.mass.size(); ++g) {
        sum += std::pow(static_cast<double>(g), r) * tally.mass[g];
      }
      out[r] = sum.value();
    }
  }
  return out;
}

KsResult ks_from_points(const std::vector<CdfPoint>& points, std::uint64_t n) {
  KsResult out;
  out.n = n;
  double left = 0.0;
  for (const auto& pt : points) {
    const double phi = normal_cdf(pt.x);
    const double dl = std::fabs(left - phi);
    const double dr = std::fabs(pt.F - phi);
    if (dl > out.statistic) {
      out.statistic = dl;
      out.argmax = pt.x;
      out.side = JumpSide::left;
    }
    if (dr > out.statistic) {
      out.statistic = dr;
      out.argmax = pt.x;
      out.side = JumpSide::right;
    }
    left = pt.F;
  }
  return out;
}

}  // namespace

double OmegaDistribution::total() const {
  if (!counts.empty()) {
    std::uint64_t c = 0;
    for (auto v : counts) {
      c += v;
    }
    return static_cast<double>(c) / static_cast<double>(n);
  }
  CompensatedSum sum;
  for (double m : mass) {
    sum += m;
  }
  return sum.value();
}

double OmegaDistribution::mean() const {
  if (!counts.empty()) {
    std::uint64_t weighted = 0;
    for (std::size_t w = 0; w < counts.size(); ++w) {
      weighted += w * counts[w];
    }
    return static_cast<double>(weighted) / static_cast<double>(n);
  }
  CompensatedSum sum;
  for (std::size_t w = 0; w < mass.size(); ++w) {
    sum += static_cast<double>(w) * mass[w];
  }
  return sum.value();
}

OmegaDistribution omega_distribution(const PerturbedDistribution& dist,
                                     Parallelism par) {
  check_budget(dist, "omega_distribution");
  Tally tally = merge(dist, tally_segments(dist, 0, par));
  OmegaDistribution out;
  out.n = dist.n();
  out.mass = std::move(tally.mass);
  out.counts = std::move(tally.counts);
  return out;
}

NormalizedCdf normalized_cdf(const OmegaDistribution& omega,
                             const std::string& dist_label,
                             Centering centering) {
  NormalizedCdf out;
  out.n = omega.n;
  out.dist_label = dist_label;
  const double ll = log_log(omega.n);
  out.center = centering == Centering::log_log ? ll : omega.mean();
  out.scale = std::sqrt(ll);
  CompensatedSum running;
  std::uint64_t running_count = 0;
  for (std::size_t w = 0; w < omega.mass.size(); ++w) {
    if (omega.mass[w] <= 0.0) {
      continue;
    }
    double F = 0.0;
    if (!omega.counts.empty()) {
      running_count += omega.counts[w];
      F = static_cast<double>(running_count) / static_cast<double>(omega.n);
    } else {
      running += omega.mass[w];
      F = running.value();
    }
    out.points.push_back(
        {static_cast<unsigned>(w), (static_cast<double>(w) - out.center) / out.scale, F});
  }
  return out;
}

NormalizedCdf normalized_cdf(const PerturbedDistribution& dist,
                             Centering centering, Parallelism par) {
  if (dist.n() < 3) {
    throw DomainError("normalized_cdf needs n >= 3 so that log log n > 0");
  }
  return normalized_cdf(omega_distribution(dist, par), dist.label(), centering);
}

std::string to_string(JumpSide side) {
  return side == JumpSide::left ? "left" : "right";
}

KsResult ks_statistic(const NormalizedCdf& cdf) {
  return ks_from_points(cdf.points, cdf.n);
}

KsResult ks_statistic(const PerturbedDistribution& dist, Parallelism par) {
  return ks_statistic(normalized_cdf(dist, Centering::log_log, par));
}

TruncatedOmega::TruncatedOmega(std::uint64_t n)
    : n_(n), alpha_(ekac::alpha(n)),
      primes_(primes_upto(static_cast<std::uint64_t>(std::floor(alpha_)))) {}

unsigned TruncatedOmega::operator()(std::uint64_t m) const {
  if (m < 1 || m > n_) {
    throw UsageError("truncated_omega: m = " + std::to_string(m) +
                     " outside [1, " + std::to_string(n_) + "]");
  }
  unsigned count = 0;
  for (std::uint64_t p : primes_) {
    if (m % p == 0) {
      ++count;
    }
  }
  return count;
}

unsigned truncated_omega(std::uint64_t n, std::uint64_t m) {
  return TruncatedOmega(n)(m);
}

ModelMoments model_sn(std::uint64_t n, unsigned r_max) {
  ModelMoments out;
  out.n = n;
  out.alpha = alpha(n);
  out.primes = primes_upto(static_cast<std::uint64_t>(std::floor(out.alpha)));
  CompensatedSum b, a2;
  std::vector<double> pmf{1.0};
  pmf.reserve(out.primes.size() + 1);
  for (std::uint64_t p : out.primes) {
    const double q = 1.0 / static_cast<double>(p);
    b += q;
    a2 += q - q * q;
    pmf.push_back(0.0);
    for (std::size_t k = pmf.size() - 1; k > 0; --k) {
      pmf[k] = pmf[k] * (1.0 - q) + pmf[k - 1] * q;
    }
    pmf[0] *= 1.0 - q;
  }
  out.b_n = b.value();
  out.a_n_sq = a2.value();
  out.sn_pmf = std::move(pmf);

  CompensatedSum total, mean;
  for (std::size_t k = 0; k < out.sn_pmf.size(); ++k) {
    total += out.sn_pmf[k];
    mean += static_cast<double>(k) * out.sn_pmf[k];
  }
  out.pmf_total = total.value();
  out.pmf_mean = mean.value();
  CompensatedSum var;
  for (std::size_t k = 0; k < out.sn_pmf.size(); ++k) {
    const double d = static_cast<double>(k) - out.pmf_mean;
    var += d * d * out.sn_pmf[k];
  }
  out.pmf_variance = var.value();

  // The zeroth moment is 1 by definition; pmf_total tracks normalization.
  out.raw_moments.assign(r_max + 1, 1.0);
  for (unsigned r = 1; r <= r_max; ++r) {
    CompensatedSum m;
    for (std::size_t k = 0; k < out.sn_pmf.size(); ++k) {
      m += std::pow(static_cast<double>(k), r) * out.sn_pmf[k];
    }
    out.raw_moments[r] = m.value();
  }
  return out;
}

std::vector<double> empirical_moments(const PerturbedDistribution& dist,
                                      unsigned r_max, Parallelism par) {
  check_budget(dist, "empirical_moments");
  const auto cutoff = static_cast<std::uint64_t>(std::floor(alpha(dist.n())));
  const Tally tally = merge(dist, tally_segments(dist, cutoff, par));
  return moments_from(tally, dist.n(), r_max);
}

std::vector<MomentGapReport> moment_gaps(const PerturbedDistribution& dist,
                                         unsigned r_max, double C,
                                         Parallelism par) {
  const ModelMoments model = model_sn(dist.n(), r_max);
  const std::vector<double> empirical = empirical_moments(dist, r_max, par);
  std::vector<MomentGapReport> out;
  for (unsigned r = 0; r <= r_max; ++r) {
    MomentGapReport rep;
    rep.n = dist.n();
    rep.r = r;
    rep.C = C;
    rep.model = model.raw_moments[r];
    rep.empirical = empirical[r];
    rep.gap = std::fabs(rep.model - rep.empirical);
    rep.bound = std::max(C, 0.5) * std::pow(model.alpha, r) /
                static_cast<double>(dist.n());
    rep.pass = rep.gap <= rep.bound;
    out.push_back(rep);
  }
  return out;
}

MomentGapReport moment_gap(const PerturbedDistribution& dist, unsigned r,
                           double C, Parallelism par) {
  return moment_gaps(dist, r, C, par).back();
}

TailSumReport tail_sum(const PerturbedDistribution& dist, double D) {
  const std::uint64_t n = dist.n();
  TailSumReport out;
  out.n = n;
  out.D = D;
  const auto split =
      static_cast<std::uint64_t>(std::floor(small_prime_threshold(n)));
  CompensatedSum sum;
  for_each_prime(split + 1, n, [&](std::uint64_t p) {
    const double inv_p = 1.0 / static_cast<double>(p);
    const double t = partial_epsilon_sum(dist, PrimeTuple{{p}, p}).value;
    const double summand = inv_p + t;
    sum += summand;
    ++out.primes;
    const double upper = (D + 1.0) * inv_p;
    if (summand < 0.0 || summand > upper) {
      out.violations.push_back(
          Witness{n, {p}, summand, summand < 0.0 ? 0.0 : upper,
                  summand < 0.0 ? "lower" : "upper", {}});
    }
  });
  out.raw_sum = sum.value();
  out.value = out.raw_sum / std::sqrt(log_log(n));
  return out;
}

IndependenceGap independence_gap(const PerturbedDistribution& dist,
                                 const PrimeTuple& tuple) {
  const std::uint64_t n = dist.n();
  if (tuple.product > n) {
    throw UsageError("tuple product " + std::to_string(tuple.product) +
                     " exceeds the support size " + std::to_string(n));
  }
  IndependenceGap out;
  out.n = n;
  out.primes = tuple.primes;
  const std::size_t k = tuple.primes.size();
  if (dist.kind() == DistributionKind::uniform) {
    // |c·n^(k−1) − Π c_i| / n^k with integer counts c = ⌊n/P⌋, c_i = ⌊n/p_i⌋.
    const double nd = static_cast<double>(n);
    const std::uint64_t joint = n / tuple.product;
    out.joint = static_cast<double>(joint) / nd;
    const bool fits = std::log2(nd) * static_cast<double>(k) < 126.0;
    u128 prod = 1;
    double prod_d = 1.0;
    for (std::uint64_t p : tuple.primes) {
      out.marginals.push_back(static_cast<double>(n / p) / nd);
      prod *= n / p;
      prod_d *= static_cast<double>(n / p) / nd;
    }
    if (fits) {
      const u128 nk = ipow(n, static_cast<unsigned>(k));
      const u128 lhs = static_cast<u128>(joint) * ipow(n, static_cast<unsigned>(k - 1));
      out.product_of_marginals = static_cast<double>(prod) / static_cast<double>(nk);
      const u128 diff = lhs > prod ? lhs - prod : prod - lhs;
      out.gap = static_cast<double>(diff) / static_cast<double>(nk);
    } else {
      out.product_of_marginals = prod_d;
      out.gap = std::fabs(out.joint - prod_d);
    }
    return out;
  }
  out.joint = divisibility_probability(dist, tuple.product);
  out.product_of_marginals = 1.0;
  for (std::uint64_t p : tuple.primes) {
    out.marginals.push_back(divisibility_probability(dist, p));
    out.product_of_marginals *= out.marginals.back();
  }
  out.gap = std::fabs(out.joint - out.product_of_marginals);
  return out;
}

MonteCarloKs monte_carlo_ks(const PerturbedDistribution& dist,
                            std::size_t draws, std::uint64_t seed,
                            double confidence) {
  if (draws == 0) {
    throw UsageError("monte_carlo_ks needs at least one draw");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw UsageError("confidence must lie in (0, 1)");
  }
  SampleStream stream(dist, seed);
  std::array<std::uint64_t, kOmegaSlots> counts{};
  for (std::size_t i = 0; i < draws; ++i) {
    ++counts[factorize(stream.next()).size()];
  }
  const double ll = log_log(dist.n());
  const double scale = std::sqrt(ll);
  std::vector<CdfPoint> points;
  std::uint64_t running = 0;
  for (std::size_t w = 0; w < kOmegaSlots; ++w) {
    if (counts[w] == 0) {
      continue;
    }
    running += counts[w];
    points.push_back({static_cast<unsigned>(w),
                      (static_cast<double>(w) - ll) / scale,
                      static_cast<double>(running) / static_cast<double>(draws)});
  }
  MonteCarloKs out;
  out.n = dist.n();
  out.draws = draws;
  out.confidence = confidence;
  out.statistic = ks_from_points(points, dist.n()).statistic;
  out.band = std::sqrt(std::log(2.0 / (1.0 - confidence)) /
                       (2.0 * static_cast<double>(draws)));
  return out;
}

}  // namespace ekac
