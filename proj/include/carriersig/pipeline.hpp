#pragma once

#include <span>
#include <string>
#include <vector>

#include "carriersig/encoding.hpp"
#include "carriersig/io.hpp"
#include "carriersig/signature.hpp"
#include "carriersig/timeseries.hpp"

namespace carriersig {

struct PipelineOptions {
  ResampleOptions resample;  // unset window = earliest .. latest measurement
  Seconds window_sigma = kDefaultWindowSigma;
  Seconds period = kDefaultPeriod;
  EncodingKind encoding = EncodingKind::Amplitude;
};

struct SignatureBatch {
  std::vector<Signature> signatures;  // sorted by carrier id
  std::vector<std::string> skipped;   // one reason per carrier left out
};

/// Groups measurements by carrier and sorts each group by time.
MeasurementsByCarrier group_by_carrier(std::span<const RawMeasurement> measurements);

/// Resample -> detrend -> signature for every carrier on one shared grid.
/// Carriers with a gap or without full coverage of the analysis window are
/// skipped; any other error propagates. Carriers run in parallel.
SignatureBatch compute_signatures(const MeasurementsByCarrier& measurements,
                                  const PipelineOptions& options);

}  // namespace carriersig
