#include "carriersig/signature.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "carriersig/error.hpp"

namespace carriersig {

namespace {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void orient(Eigen::Ref<Eigen::VectorXd> v, Eigen::Ref<Eigen::VectorXd> u) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (v[best] < 0.0) {
    v = -v;
    u = -u;
  }
}

}  // namespace

std::size_t samples_per_period(Seconds period, Seconds interval) {
  if (interval <= Seconds::zero() || period <= Seconds::zero() ||
      period % interval != Seconds::zero()) {
    throw Error(ErrorCode::InvalidParameter,
                fmt::format("period of {} s is not a positive multiple of the "
                            "{} s sample interval",
                            period.count(), interval.count()));
  }
  return static_cast<std::size_t>(period / interval);
}

PeriodMatrix build_period_matrix(const StateVector& q,
                                 std::size_t samples_per_period) {
  const std::size_t total = q.values.size();
  if (samples_per_period < 2) {
    throw Error(ErrorCode::Shape, "a period needs at least 2 samples");
  }
  if (total % samples_per_period != 0) {
    throw Error(ErrorCode::Shape,
                fmt::format("{} samples do not split into periods of {}", total,
                            samples_per_period));
  }
  const std::size_t periods = total / samples_per_period;
  if (periods < 2) {
    throw Error(ErrorCode::InsufficientData,
                fmt::format("need at least 2 full periods, got {}", periods));
  }
  const auto rows = static_cast<Eigen::Index>(periods);
  const auto cols = static_cast<Eigen::Index>(samples_per_period);
  return PeriodMatrix{
      Eigen::Map<const RowMajorMatrix>(q.values.data(), rows, cols)};
}

EigensignalSet decompose(const PeriodMatrix& m) {
  if (m.periods() < 1 || m.samples_per_period() < 1) {
    throw Error(ErrorCode::Shape, "cannot decompose an empty matrix");
  }
  if (!m.entries.allFinite()) {
    throw Error(ErrorCode::Decomposition, "period matrix has non-finite entries");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.entries,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorCode::Decomposition, "SVD did not converge");
  }
  EigensignalSet es{svd.singularValues(), svd.matrixU(), svd.matrixV()};
  if (!es.singular_values.allFinite() || !es.right_vectors.allFinite() ||
      !es.left_vectors.allFinite()) {
    throw Error(ErrorCode::Decomposition, "SVD produced non-finite values");
  }
  for (Eigen::Index i = 0; i < es.right_vectors.cols(); ++i) {
    orient(es.right_vectors.col(i), es.left_vectors.col(i));
  }
  return es;
}

Signature extract_signature(const EigensignalSet& es, const SignatureMeta& meta) {
  if (es.right_vectors.cols() < 2) {
    throw Error(ErrorCode::InsufficientData,
                "signature needs at least two right-singular vectors");
  }
  Signature sig;
  sig.carrier_id = meta.carrier_id;
  sig.period_length = meta.period_length;
  sig.period_samples = static_cast<std::size_t>(es.right_vectors.rows());
  const Eigen::VectorXd v2 = es.right_vectors.col(1);
  sig.vector.assign(v2.data(), v2.data() + v2.size());

  const double s1 = es.singular_values[0];
  const double s2 = es.singular_values[1];
  const auto dim = std::max(es.left_vectors.rows(), es.right_vectors.rows());
  sig.low_rank = s2 <= static_cast<double>(dim) *
                           std::numeric_limits<double>::epsilon() * s1;
  return sig;
}

Signature compute_signature(const FluctuationSeries& series, Seconds period,
                            EncodingKind encoding) {
  const std::size_t n = samples_per_period(period, series.grid.interval);
  const std::size_t usable = series.values.size() / n * n;
  if (usable / n < 2) {
    throw Error(ErrorCode::InsufficientData,
                fmt::format("carrier '{}': {} samples hold fewer than 2 periods "
                            "of {} samples",
                            series.carrier_id, series.values.size(), n));
  }
  const std::span<const double> kept(series.values.data(), usable);
  const auto q = encode(kept, encoding);
  const auto es = decompose(build_period_matrix(q, n));
  auto sig = extract_signature(es, {series.carrier_id, period});
  sig.truncated_samples = series.values.size() - usable;
  return sig;
}

}  // namespace carriersig
