#include "ekac/distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ekac/compensated_sum.hpp"
#include "ekac/errors.hpp"

namespace ekac {

namespace {

constexpr std::uint64_t kMaxRuleSupport = 10'000'000'000ULL;

void check_support(std::uint64_t n) {
  if (n < 1) {
    throw UsageError("distribution support size must be at least 1");
  }
  if (n > kMaxRuleSupport) {
    throw ResourceError("support size " + std::to_string(n) +
                        " exceeds the supported maximum 10^10");
  }
}

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

}  // namespace

std::string to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::uniform:
      return "uniform";
    case DistributionKind::harmonic:
      return "harmonic";
    case DistributionKind::zipf:
      return "zipf";
    case DistributionKind::custom:
      return "custom";
  }
  return "unknown";
}

DistributionKind parse_distribution_kind(const std::string& name) {
  if (name == "uniform") return DistributionKind::uniform;
  if (name == "harmonic") return DistributionKind::harmonic;
  if (name == "zipf") return DistributionKind::zipf;
  if (name == "custom") return DistributionKind::custom;
  throw UsageError("unknown distribution kind '" + name +
                   "' (expected uniform, harmonic, zipf or custom)");
}

PerturbedDistribution PerturbedDistribution::uniform(std::uint64_t n) {
  check_support(n);
  PerturbedDistribution d;
  d.kind_ = DistributionKind::uniform;
  d.n_ = n;
  d.normalizer_ = static_cast<double>(n);
  d.inv_normalizer_ = 1.0 / static_cast<double>(n);
  return d;
}

PerturbedDistribution PerturbedDistribution::harmonic(std::uint64_t n) {
  check_support(n);
  CompensatedSum h;
  for (std::uint64_t i = 1; i <= n; ++i) {
    h += 1.0 / static_cast<double>(i);
  }
  PerturbedDistribution d;
  d.kind_ = DistributionKind::harmonic;
  d.n_ = n;
  d.normalizer_ = h.value();
  d.inv_normalizer_ = 1.0 / d.normalizer_;
  return d;
}

PerturbedDistribution PerturbedDistribution::zipf(std::uint64_t n, double s) {
  check_support(n);
  if (!(s > 1.0) || !std::isfinite(s)) {
    throw DomainError("zipf exponent must be a finite value > 1 (s = 1 is the "
                      "harmonic distribution)");
  }
  CompensatedSum z;
  for (std::uint64_t i = 1; i <= n; ++i) {
    z += std::pow(static_cast<double>(i), -s);
  }
  PerturbedDistribution d;
  d.kind_ = DistributionKind::zipf;
  d.n_ = n;
  d.s_ = s;
  d.normalizer_ = z.value();
  d.inv_normalizer_ = 1.0 / d.normalizer_;
  return d;
}

PerturbedDistribution PerturbedDistribution::custom(std::vector<double> table) {
  if (table.empty()) {
    throw ValidationError("probability table is empty");
  }
  std::vector<std::size_t> bad;
  CompensatedSum sum;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!std::isfinite(table[i]) || table[i] < 0.0) {
      bad.push_back(i + 1);
    } else {
      sum += table[i];
    }
  }
  if (!bad.empty()) {
    std::string msg = "probability table has negative or non-finite entries at indices";
    for (std::size_t k = 0; k < bad.size() && k < 20; ++k) {
      msg += " " + std::to_string(bad[k]);
    }
    if (bad.size() > 20) {
      msg += " ... (" + std::to_string(bad.size()) + " total)";
    }
    throw ValidationError(msg);
  }
  const double total = sum.value();
  if (std::fabs(total - 1.0) > kTableSumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probability table sums to " << total
        << ", not 1 within " << kTableSumTolerance;
    throw ValidationError(msg.str());
  }
  for (double& v : table) {
    v /= total;
  }
  PerturbedDistribution d;
  d.kind_ = DistributionKind::custom;
  d.n_ = table.size();
  d.normalizer_ = total;
  d.inv_normalizer_ = 1.0 / total;
  d.adjustment_ = total - 1.0;
  d.table_ = std::make_shared<const std::vector<double>>(std::move(table));
  return d;
}

std::string PerturbedDistribution::label() const {
  std::string out = to_string(kind_) + "(n=" + std::to_string(n_);
  if (kind_ == DistributionKind::zipf) {
    std::ostringstream s;
    s << s_;
    out += ", s=" + s.str();
  }
  return out + ")";
}

void PerturbedDistribution::check_index(std::uint64_t i, const char* what) const {
  if (i < 1 || i > n_) {
    throw UsageError(std::string(what) + ": index " + std::to_string(i) +
                     " outside [1, " + std::to_string(n_) + "]");
  }
}

double PerturbedDistribution::pmf_unchecked(std::uint64_t i) const {
  switch (kind_) {
    case DistributionKind::uniform:
      return inv_normalizer_;
    case DistributionKind::harmonic:
      return 1.0 / (static_cast<double>(i) * normalizer_);
    case DistributionKind::zipf:
      return std::pow(static_cast<double>(i), -s_) / normalizer_;
    case DistributionKind::custom:
      return (*table_)[i - 1];
  }
  return 0.0;
}

double PerturbedDistribution::pmf(std::uint64_t i) const {
  check_index(i, "pmf");
  return pmf_unchecked(i);
}

double PerturbedDistribution::epsilon(std::uint64_t i) const {
  check_index(i, "epsilon");
  return pmf_unchecked(i) - 1.0 / static_cast<double>(n_);
}

double PerturbedDistribution::cdf(std::uint64_t i) const {
  if (i > n_) {
    throw UsageError("cdf: index " + std::to_string(i) + " outside [0, " +
                     std::to_string(n_) + "]");
  }
  if (kind_ == DistributionKind::uniform) {
    return static_cast<double>(i) / static_cast<double>(n_);
  }
  CompensatedSum sum;
  for (std::uint64_t j = 1; j <= i; ++j) {
    sum += pmf_unchecked(j);
  }
  return sum.value();
}

PerturbedDistribution DistributionSpec::at(std::uint64_t n) const {
  switch (kind) {
    case DistributionKind::uniform:
      return PerturbedDistribution::uniform(n);
    case DistributionKind::harmonic:
      return PerturbedDistribution::harmonic(n);
    case DistributionKind::zipf:
      return PerturbedDistribution::zipf(n, s);
    case DistributionKind::custom:
      if (!table || table->size() != n) {
        throw UsageError("a custom table is defined only at its own support size");
      }
      return PerturbedDistribution::custom(*table);
  }
  throw UsageError("unknown distribution kind");
}

PerturbedDistribution read_table_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw ValidationError("line 1: missing header 'i,probability'");
  }
  ++line_no;
  {
    std::string header = trim(line);
    header.erase(std::remove(header.begin(), header.end(), ' '), header.end());
    if (header != "i,probability") {
      throw ValidationError("line 1: expected header 'i,probability', found '" +
                            trim(line) + "'");
    }
  }
  std::vector<double> table;
  std::size_t blank_line = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = trim(line);
    if (row.empty()) {
      blank_line = line_no;
      continue;
    }
    if (blank_line != 0) {
      throw ValidationError("line " + std::to_string(blank_line) +
                            ": blank line inside the table");
    }
    const auto comma = row.find(',');
    if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": expected exactly two columns");
    }
    const std::string idx_text = trim(std::string_view(row).substr(0, comma));
    const std::string prob_text = trim(std::string_view(row).substr(comma + 1));
    std::uint64_t idx = 0;
    auto [p1, e1] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), idx);
    if (e1 != std::errc() || p1 != idx_text.data() + idx_text.size()) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": invalid index '" + idx_text + "'");
    }
    if (idx != table.size() + 1) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected index " +
                            std::to_string(table.size() + 1) + ", found " +
                            std::to_string(idx));
    }
    double prob = 0.0;
    auto [p2, e2] = std::from_chars(prob_text.data(), prob_text.data() + prob_text.size(), prob);
    if (e2 != std::errc() || p2 != prob_text.data() + prob_text.size() ||
        !std::isfinite(prob)) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": invalid probability '" + prob_text + "'");
    }
    if (prob < 0.0) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": negative probability " + prob_text);
    }
    table.push_back(prob);
  }
  return PerturbedDistribution::custom(std::move(table));
}

PerturbedDistribution read_table_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot open table file '" + path + "'");
  }
  return read_table_csv(in);
}

void write_table_csv(std::ostream& out, const PerturbedDistribution& dist) {
  out << "i,probability\n";
  char buf[64];
  for (std::uint64_t i = 1; i <= dist.n(); ++i) {
    std::snprintf(buf, sizeof buf, "%llu,%.17g\n",
                  static_cast<unsigned long long>(i), dist.pmf_unchecked(i));
    out << buf;
  }
}

double sup_distance(const PerturbedDistribution& a,
                    const PerturbedDistribution& b) {
  if (a.n() != b.n()) {
    throw UsageError("sup_distance: support sizes differ (" +
                     std::to_string(a.n()) + " vs " + std::to_string(b.n()) + ")");
  }
  double best = 0.0;
  for (std::uint64_t i = 1; i <= a.n(); ++i) {
    best = std::max(best, std::fabs(a.pmf_unchecked(i) - b.pmf_unchecked(i)));
  }
  return best;
}

SampleStream::SampleStream(PerturbedDistribution dist, std::uint64_t seed)
    : dist_(std::move(dist)), rng_(seed) {
  if (dist_.kind() == DistributionKind::uniform) {
    return;
  }
  if (dist_.n() > kEnumerationBudget) {
    throw ResourceError("sampling " + dist_.label() +
                        " needs a prefix array above the 10^8 budget; "
                        "unsupported configuration");
  }
  cdf_index_.resize(dist_.n());
  CompensatedSum running;
  for (std::uint64_t i = 1; i <= dist_.n(); ++i) {
    running += dist_.pmf_unchecked(i);
    cdf_index_[i - 1] = running.value();
  }
}

std::uint64_t SampleStream::next() {
  const double u = static_cast<double>(rng_() >> 11) * 0x1p-53;
  const std::uint64_t n = dist_.n();
  std::uint64_t i = 0;
  if (cdf_index_.empty()) {
    i = static_cast<std::uint64_t>(u * static_cast<double>(n)) + 1;
  } else {
    const double target = u * cdf_index_.back();
    i = static_cast<std::uint64_t>(
            std::upper_bound(cdf_index_.begin(), cdf_index_.end(), target) -
            cdf_index_.begin()) + 1;
  }
  return std::min(i, n);
}

std::vector<std::uint64_t> SampleStream::sample(std::size_t count) {
  std::vector<std::uint64_t> out(count);
  for (auto& v : out) {
    v = next();
  }
  return out;
}

}  // namespace ekac
