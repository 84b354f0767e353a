#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ekac/constraints.hpp"
#include "ekac/distribution.hpp"
#include "ekac/parallel.hpp"

namespace ekac {

/// Law of ω(X) for X ~ dist: mass[w] = Σ_{m <= n, ω(m) = w} pmf(m).
struct OmegaDistribution {
  std::uint64_t n = 0;
  std::vector<double> mass;
  /// Per-ω integer counts, filled for the uniform distribution so that
  /// moments can be formed exactly.
  std::vector<std::uint64_t> counts;

  double total() const;
  double mean() const;
};

OmegaDistribution omega_distribution(const PerturbedDistribution& dist,
                                     Parallelism par = {});

enum class Centering { log_log, empirical_mean };

struct CdfPoint {
  unsigned omega;
  double x;  // (ω − center) / scale
  double F;  // P(ω(X) <= omega)
};

/// Step CDF of the normalized statistic (ω − center)/√(log log n).
struct NormalizedCdf {
  std::uint64_t n = 0;
  std::string dist_label;
  double center = 0.0;
  double scale = 0.0;
  std::vector<CdfPoint> points;
};

NormalizedCdf normalized_cdf(const OmegaDistribution& omega,
                             const std::string& dist_label,
                             Centering centering = Centering::log_log);
NormalizedCdf normalized_cdf(const PerturbedDistribution& dist,
                             Centering centering = Centering::log_log,
                             Parallelism par = {});

enum class JumpSide { left, right };
std::string to_string(JumpSide side);

struct KsResult {
  std::uint64_t n = 0;
  double statistic = 0.0;
  double argmax = 0.0;
  JumpSide side = JumpSide::right;
};

/// sup_x |F(x) − Φ(x)|, evaluated exactly: between jumps F is constant and Φ
/// monotone, so the supremum is one of the one-sided limits at a jump.
KsResult ks_statistic(const NormalizedCdf& cdf);
KsResult ks_statistic(const PerturbedDistribution& dist, Parallelism par = {});

/// g_n(m): the number of primes p <= α_n dividing m.
class TruncatedOmega {
 public:
  explicit TruncatedOmega(std::uint64_t n);

  std::uint64_t n() const { return n_; }
  double alpha() const { return alpha_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  unsigned operator()(std::uint64_t m) const;

 private:
  std::uint64_t n_;
  double alpha_;
  std::vector<std::uint64_t> primes_;
};

unsigned truncated_omega(std::uint64_t n, std::uint64_t m);

/// Independent Bernoulli(1/p) model over primes p <= α_n.
struct ModelMoments {
  std::uint64_t n = 0;
  double alpha = 0.0;
  std::vector<std::uint64_t> primes;
  double b_n = 0.0;     // Σ 1/p
  double a_n_sq = 0.0;  // Σ (1/p − 1/p²)
  std::vector<double> sn_pmf;       // P(S_n = k), k = 0..|primes|
  std::vector<double> raw_moments;  // E(S_n^r), r = 0..r_max
  double pmf_total = 0.0;
  double pmf_mean = 0.0;
  double pmf_variance = 0.0;
};

ModelMoments model_sn(std::uint64_t n, unsigned r_max = 4);

/// E_n(g_n^r) for r = 0..r_max, exact over the support.
std::vector<double> empirical_moments(const PerturbedDistribution& dist,
                                      unsigned r_max, Parallelism par = {});

struct MomentGapReport {
  std::uint64_t n = 0;
  unsigned r = 0;
  double empirical = 0.0;
  double model = 0.0;
  double gap = 0.0;
  double bound = 0.0;  // max{C, 1/2} α_n^r / n
  double C = 0.0;
  bool pass = false;
};

MomentGapReport moment_gap(const PerturbedDistribution& dist, unsigned r,
                           double C, Parallelism par = {});
/// Reports for r = 0..r_max from a single enumeration pass.
std::vector<MomentGapReport> moment_gaps(const PerturbedDistribution& dist,
                                         unsigned r_max, double C,
                                         Parallelism par = {});

struct TailSumReport {
  std::uint64_t n = 0;
  double value = 0.0;  // Σ_{α_n < p <= n} (1/p + T(n; (p))) / √(log log n)
  double raw_sum = 0.0;
  std::size_t primes = 0;
  double D = 1.0;
  /// Primes whose summand leaves [0, (D + 1)/p].
  std::vector<Witness> violations;
};

TailSumReport tail_sum(const PerturbedDistribution& dist, double D = 1.0);

struct IndependenceGap {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> primes;
  double joint = 0.0;                // P(∩ A_p)
  std::vector<double> marginals;     // P(A_p)
  double product_of_marginals = 0.0;
  double gap = 0.0;
};

IndependenceGap independence_gap(const PerturbedDistribution& dist,
                                 const PrimeTuple& tuple);

/// Sampled alternative to exact enumeration: KS distance of the empirical
/// normalized ω-CDF from Φ, with the Dvoretzky-Kiefer-Wolfowitz half-width
/// sqrt(ln(2/(1-confidence)) / (2·draws)).
struct MonteCarloKs {
  std::uint64_t n = 0;
  std::size_t draws = 0;
  double statistic = 0.0;
  double band = 0.0;
  double confidence = 0.95;
};

MonteCarloKs monte_carlo_ks(const PerturbedDistribution& dist,
                            std::size_t draws, std::uint64_t seed,
                            double confidence = 0.95);

}  // namespace ekac
