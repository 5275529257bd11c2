#include "carriersig/pipeline.hpp"

#include <algorithm>
#include <optional>

#include "carriersig/error.hpp"
#include "carriersig/parallel.hpp"

namespace carriersig {

MeasurementsByCarrier group_by_carrier(std::span<const RawMeasurement> measurements) {
  MeasurementsByCarrier out;
  for (const auto& m : measurements) out[m.carrier_id].push_back(m);
  for (auto& [id, rows] : out) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const RawMeasurement& a, const RawMeasurement& b) {
                       return a.timestamp < b.timestamp;
                     });
  }
  return out;
}

SignatureBatch compute_signatures(const MeasurementsByCarrier& measurements,
                                  const PipelineOptions& options) {
  samples_per_period(options.period, options.resample.interval);

  ResampleOptions resample = options.resample;
  if (!resample.start || !resample.end) {
    Instant earliest = Instant::max();
    Instant latest = Instant::min();
    for (const auto& [id, rows] : measurements) {
      if (rows.empty()) continue;
      earliest = std::min(earliest, rows.front().timestamp);
      latest = std::max(latest, rows.back().timestamp);
    }
    if (earliest > latest) {
      throw Error(ErrorCode::InsufficientData, "no measurements");
    }
    if (!resample.start) resample.start = earliest;
    if (!resample.end) resample.end = latest + resample.interval;
  }

  std::vector<const std::vector<RawMeasurement>*> carriers;
  for (const auto& [id, rows] : measurements) carriers.push_back(&rows);

  std::vector<std::optional<Signature>> results(carriers.size());
  std::vector<std::string> skipped(carriers.size());
  parallel_for(carriers.size(), [&](std::size_t i) {
    CarrierSeries series;
    try {
      series = resample_uniform(*carriers[i], resample);
    } catch (const Error& e) {
      // Only carriers present for the whole analysis period take part.
      if (e.code() != ErrorCode::Gap && e.code() != ErrorCode::InsufficientData) {
        throw;
      }
      skipped[i] = e.what();
      return;
    }
    results[i] = compute_signature(gaussian_detrend(series, options.window_sigma),
                                   options.period, options.encoding);
  });

  SignatureBatch batch;
  for (std::size_t i = 0; i < carriers.size(); ++i) {
    if (results[i]) batch.signatures.push_back(std::move(*results[i]));
    if (!skipped[i].empty()) batch.skipped.push_back(std::move(skipped[i]));
  }
  return batch;
}

}  // namespace carriersig
