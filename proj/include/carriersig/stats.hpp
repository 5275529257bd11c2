#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "carriersig/matching.hpp"

namespace carriersig {

inline constexpr double kDefaultBinWidth = 0.05;

/// n(k): how many antennas transmit exactly k known carriers.
class AntennaCensus {
 public:
  AntennaCensus() = default;
  /// Throws InvalidParameter for k < 1, a negative count, or no antennas.
  explicit AntennaCensus(std::map<int, int> antennas_by_carrier_count);
  AntennaCensus(std::initializer_list<std::pair<const int, int>> counts)
      : AntennaCensus(std::map<int, int>(counts)) {}

  const std::map<int, int>& by_carrier_count() const { return counts_; }
  int antennas() const;       // N_a
  int carriers() const;       // N_s
  double mean_carriers() const;  // n_s = N_s / N_a

 private:
  std::map<int, int> counts_;
};

/// Parses "k:n,k:n,...", e.g. "1:27,2:1,3:1,6:2,9:1".
AntennaCensus parse_census(std::string_view text);
std::string format_census(const AntennaCensus& census);

/// Census of the carriers in `directory` that have an antenna id. If
/// `restrict_to` is non-empty only those carrier ids are counted.
AntennaCensus census_from_directory(const CarrierDirectory& directory,
                                    std::span<const std::string> restrict_to = {});

struct PairCounts {
  std::uint64_t same = 0;
  std::uint64_t different = 0;
  std::uint64_t total = 0;
};

PairCounts count_pairs(const AntennaCensus& census);

/// Bins of equal width covering [0, 1]; the last bin is closed at 1 and may
/// be narrower when the width does not divide 1.
struct Histogram {
  double bin_width = kDefaultBinWidth;
  std::vector<std::size_t> counts;

  std::size_t bins() const { return counts.size(); }
  double bin_lo(std::size_t i) const;
  double bin_hi(std::size_t i) const;
  std::size_t total() const;
};

Histogram make_histogram(std::span<const double> distances, double bin_width);

/// Right-continuous empirical CDF over raw samples: F(x) = #{d <= x} / n.
class EmpiricalCdf {
 public:
  /// Throws InsufficientData when there are no samples.
  explicit EmpiricalCdf(std::vector<double> samples);

  double operator()(double x) const;
  std::size_t size() const { return sorted_.size(); }
  std::span<const double> samples() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

struct DistanceDistributions {
  Histogram same;       // f_s
  Histogram different;  // f_d
  EmpiricalCdf same_cdf;       // F_s
  EmpiricalCdf different_cdf;  // F_d
};

/// Splits records by same_antenna. Throws MalformedInput if a record has no
/// flag and InsufficientData if either class is empty.
DistanceDistributions build_distributions(std::span<const DistanceRecord> records,
                                          double bin_width = kDefaultBinWidth);

/// Probability that at least one carrier from the interferer's antenna falls
/// in the result set: 1 - (1/N_a) sum_k n(k) (1 - F_s)^k.
double prob_identification(const AntennaCensus& census, double fs_at_threshold);

/// n_i = n_s F_s.
double expected_positives(double mean_carriers, double fs_at_threshold);

/// Binomial probability of k positives among K carriers of one antenna.
double binomial_positives(int trials, int successes, double p);

/// sum_k k P(k) for one antenna with K carriers.
double binomial_mean(int trials, double p);

/// Antenna-averaged expected positives, (1/N_a) sum_K n(K) sum_k k P_K(k).
/// Equals n_s p.
double census_binomial_mean(const AntennaCensus& census, double p);

/// n_f = (N_s - n_s) F_d.
double expected_false_positives(double total_carriers, double mean_carriers,
                                double fd_at_threshold);

enum class FalsePositiveMode { Exact, Approximate };

/// Exact: 1 - (1 - p)^(N_s - K). Approximate: N_s p (K is ignored).
double prob_false_positive(int total_carriers, int antenna_carriers, double p,
                           FalsePositiveMode mode);

/// Antenna average of the exact form, (1/N_a) sum_K n(K) p_f^K.
double census_false_positive_exact(const AntennaCensus& census, double p);

struct EvaluationReport {
  double threshold = kDefaultThreshold;
  double fs_at_threshold = 0.0;
  double fd_at_threshold = 0.0;
  double p_id = 0.0;
  double n_i = 0.0;
  double n_f = 0.0;
  double p_f = 0.0;        // approximate, N_s F_d
  double p_f_exact = 0.0;  // census average of the exact form
  AntennaCensus census;
  PairCounts census_pairs;
  std::size_t same_records = 0;
  std::size_t different_records = 0;
};

/// Closed-form estimators from CDF values at the threshold.
EvaluationReport evaluate(const AntennaCensus& census, double threshold,
                          double fs_at_threshold, double fd_at_threshold);

/// Empirical CDFs from the records, then the closed-form estimators.
EvaluationReport evaluate(std::span<const DistanceRecord> records,
                          const AntennaCensus& census, double threshold);

}  // namespace carriersig
