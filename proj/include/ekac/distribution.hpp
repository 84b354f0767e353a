#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ekac {

enum class DistributionKind { uniform, harmonic, zipf, custom };

std::string to_string(DistributionKind kind);
DistributionKind parse_distribution_kind(const std::string& name);

/// Largest support size for which exact enumeration (and prefix-array
/// sampling) is attempted.
inline constexpr std::uint64_t kEnumerationBudget = 100'000'000;

/// Custom tables may deviate from total mass 1 by at most this much before
/// being renormalized.
inline constexpr double kTableSumTolerance = 1e-9;

/// A probability mass function on {1, ..., n} written as 1/n + ε(i).
///
/// Immutable after construction; copies share the custom table.
class PerturbedDistribution {
 public:
  static PerturbedDistribution uniform(std::uint64_t n);
  static PerturbedDistribution harmonic(std::uint64_t n);
  /// Zipf(n, s): pmf(i) = i^-s / Σ_{j<=n} j^-s. Requires s > 1; s == 1 is
  /// the harmonic distribution and is rejected.
  static PerturbedDistribution zipf(std::uint64_t n, double s);
  /// Validates the table (entries >= 0, sum within kTableSumTolerance of 1)
  /// and renormalizes it to unit mass.
  static PerturbedDistribution custom(std::vector<double> table);

  DistributionKind kind() const { return kind_; }
  std::uint64_t n() const { return n_; }
  /// Zipf exponent; 0 for the other kinds.
  double s() const { return s_; }
  /// H_n for harmonic, Σ j^-s for zipf, the pre-normalization table sum for
  /// custom, n for uniform.
  double normalizer() const { return normalizer_; }
  /// Σ table − 1 before renormalization (custom only; 0 otherwise).
  double renormalization_adjustment() const { return adjustment_; }
  std::string label() const;

  double pmf(std::uint64_t i) const;
  /// ε(i) = pmf(i) − 1/n.
  double epsilon(std::uint64_t i) const;
  /// Σ_{j<=i} pmf(j); cdf(0) == 0.
  double cdf(std::uint64_t i) const;

  /// pmf without bounds checking, for inner loops over [1, n].
  double pmf_unchecked(std::uint64_t i) const;

 private:
  PerturbedDistribution() = default;
  void check_index(std::uint64_t i, const char* what) const;

  DistributionKind kind_ = DistributionKind::uniform;
  std::uint64_t n_ = 1;
  double s_ = 0.0;
  double normalizer_ = 1.0;
  double inv_normalizer_ = 1.0;
  double adjustment_ = 0.0;
  std::shared_ptr<const std::vector<double>> table_;
};

/// Rule (plus parameters) from which a distribution can be rebuilt at any n.
struct DistributionSpec {
  DistributionKind kind = DistributionKind::uniform;
  double s = 0.0;
  /// Present iff kind == custom; the support size is its length.
  std::shared_ptr<const std::vector<double>> table;

  PerturbedDistribution at(std::uint64_t n) const;
};

/// Reads a custom table in the `i,probability` CSV format (header required,
/// indices exactly 1..n). Errors carry line numbers.
PerturbedDistribution read_table_csv(std::istream& in);
PerturbedDistribution read_table_csv_file(const std::string& path);
/// Writes `i,probability` with round-trip precision.
void write_table_csv(std::ostream& out, const PerturbedDistribution& dist);

/// max_i |pmf_a(i) − pmf_b(i)|. Supports must match.
double sup_distance(const PerturbedDistribution& a,
                    const PerturbedDistribution& b);

/// Seeded inverse-transform sampler. Single owner: not safe to share across
/// threads.
class SampleStream {
 public:
  SampleStream(PerturbedDistribution dist, std::uint64_t seed);

  const PerturbedDistribution& distribution() const { return dist_; }
  std::uint64_t next();
  std::vector<std::uint64_t> sample(std::size_t count);

 private:
  PerturbedDistribution dist_;
  std::mt19937_64 rng_;
  std::vector<double> cdf_index_;  // empty for uniform
};

}  // namespace ekac
