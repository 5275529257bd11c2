#include "carriersig/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "carriersig/error.hpp"

namespace carriersig {

std::string_view to_string(EncodingKind kind) noexcept {
  return kind == EncodingKind::Amplitude ? "amplitude" : "l2";
}

EncodingKind parse_encoding(std::string_view name) {
  if (name == "amplitude") return EncodingKind::Amplitude;
  if (name == "l2") return EncodingKind::L2;
  throw Error(ErrorCode::InvalidParameter,
              "unknown encoding '" + std::string(name) +
                  "' (expected amplitude or l2)");
}

std::vector<double> unit_interval_map(std::span<const double> fluctuations) {
  if (fluctuations.empty()) {
    throw Error(ErrorCode::InsufficientData, "cannot encode an empty series");
  }
  double e_max = 0.0;
  for (double v : fluctuations) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::InvalidMeasurement,
                  "fluctuation series contains a non-finite value");
    }
    e_max = std::max(e_max, std::abs(v));
  }
  std::vector<double> e(fluctuations.size(), 0.5);
  if (e_max > 0.0) {
    std::transform(fluctuations.begin(), fluctuations.end(), e.begin(),
                   [e_max](double v) { return (v + e_max) / (2.0 * e_max); });
  }
  return e;
}

StateVector encode_amplitude(std::span<const double> fluctuations) {
  auto e = unit_interval_map(fluctuations);
  const double total = std::accumulate(e.begin(), e.end(), 0.0);
  if (total == 0.0) {
    throw Error(ErrorCode::DegenerateInput,
                "every sample sits at -E_max; amplitude encoding is undefined");
  }
  StateVector q{std::move(e), EncodingKind::Amplitude};
  for (double& v : q.values) v = std::sqrt(v / total);
  return q;
}

StateVector encode_amplitude(const FluctuationSeries& series) {
  return encode_amplitude(series.values);
}

StateVector encode_l2(std::span<const double> fluctuations) {
  auto e = unit_interval_map(fluctuations);
  const double norm =
      std::sqrt(std::inner_product(e.begin(), e.end(), e.begin(), 0.0));
  if (norm == 0.0) {
    throw Error(ErrorCode::DegenerateInput,
                "l2 encoding of a series whose mapped vector is zero");
  }
  StateVector r{std::move(e), EncodingKind::L2};
  for (double& v : r.values) v /= norm;
  return r;
}

StateVector encode_l2(const FluctuationSeries& series) {
  return encode_l2(series.values);
}

StateVector encode(std::span<const double> fluctuations, EncodingKind kind) {
  return kind == EncodingKind::Amplitude ? encode_amplitude(fluctuations)
                                         : encode_l2(fluctuations);
}

}  // namespace carriersig
