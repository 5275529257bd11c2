#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "carriersig/encoding.hpp"
#include "carriersig/timeseries.hpp"

namespace carriersig {

inline constexpr Seconds kDefaultPeriod{24 * 3600};

/// One row per period (day by default), one column per sample in the period.
struct PeriodMatrix {
  Eigen::MatrixXd entries;

  Eigen::Index periods() const { return entries.rows(); }
  Eigen::Index samples_per_period() const { return entries.cols(); }
};

/// Thin SVD M = U S V^T. Singular values are non-increasing; column i of
/// right_vectors is the eigensignal v_{i+1}. Each v_i is oriented so that its
/// largest-magnitude component is positive (first one on ties) and u_i is
/// flipped with it.
struct EigensignalSet {
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd left_vectors;
  Eigen::MatrixXd right_vectors;
};

struct Signature {
  std::string carrier_id;
  std::vector<double> vector;  // v_2, unit norm
  std::size_t period_samples = 0;
  Seconds period_length = kDefaultPeriod;
  bool low_rank = false;             // sigma_2 numerically zero
  std::size_t truncated_samples = 0; // trailing partial period dropped
};

struct SignatureMeta {
  std::string carrier_id;
  Seconds period_length = kDefaultPeriod;
};

/// Row r, column c holds q[r * n + c]. Throws Shape when the length is not a
/// multiple of n (or n < 2) and InsufficientData for fewer than two periods.
PeriodMatrix build_period_matrix(const StateVector& q,
                                 std::size_t samples_per_period);

/// Throws Decomposition if the SVD fails to converge or yields non-finite
/// values.
EigensignalSet decompose(const PeriodMatrix& m);

Signature extract_signature(const EigensignalSet& es, const SignatureMeta& meta);

/// encode -> build_period_matrix -> decompose -> extract_signature. A
/// trailing partial period is dropped before encoding and reported through
/// Signature::truncated_samples.
Signature compute_signature(const FluctuationSeries& series, Seconds period,
                            EncodingKind encoding = EncodingKind::Amplitude);

/// Samples per period for a grid; throws InvalidParameter unless the period
/// is a positive whole multiple of the interval.
std::size_t samples_per_period(Seconds period, Seconds interval);

}  // namespace carriersig
