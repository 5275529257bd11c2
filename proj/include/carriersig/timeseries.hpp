#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace carriersig {

using Instant = std::chrono::sys_seconds;
using Seconds = std::chrono::seconds;

inline constexpr Seconds kDefaultInterval{3 * 60};
inline constexpr Seconds kDefaultWindowSigma{6 * 3600};
inline constexpr Seconds kDefaultMaxGap{2 * 3600};

/// Link-budget terms that reconstruct the uplink EIRP from a spectrum
/// analyzer reading.
struct LinkBudget {
  double p_sa_dbm = 0.0;   // power at the analyzer input
  double l_fs_db = 0.0;    // free-space loss
  double g_ant_db = 0.0;   // receive antenna gain
  double g_path_db = 0.0;  // feed-to-analyzer path gain
};

struct RawMeasurement {
  std::string carrier_id;
  Instant timestamp{};
  std::variant<double, LinkBudget> power;  // EIRP in dBW, or its link budget
  std::optional<double> snr_db;

  double eirp_dbw() const;
};

struct UniformGrid {
  Instant start{};
  Seconds interval = kDefaultInterval;

  Instant at(std::size_t i) const {
    return start + interval * static_cast<Seconds::rep>(i);
  }
};

/// EIRP (dBW) of one carrier on a uniform time grid.
struct CarrierSeries {
  std::string carrier_id;
  std::optional<std::string> antenna_id;
  UniformGrid grid;
  std::vector<double> values;
};

/// Carrier EIRP with its local running average removed (dB).
struct FluctuationSeries {
  std::string carrier_id;
  std::optional<std::string> antenna_id;
  UniformGrid grid;
  std::vector<double> values;
};

/// Parses `YYYY-MM-DDTHH:MM:SS` with an optional fractional part (dropped)
/// and a `Z` or `+00:00` suffix; a space may replace the `T`. Throws
/// MalformedInput otherwise.
Instant parse_timestamp(std::string_view text);
/// `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_timestamp(Instant t);

/// EIRP = P_sa + L_fs - G_ant - G_path - 30 (the 30 converts dBm to dBW).
/// Throws InvalidMeasurement on non-finite input.
double compute_eirp(double p_sa_dbm, double l_fs_db, double g_ant_db,
                    double g_path_db);
double compute_eirp(const LinkBudget& budget);

struct ResampleOptions {
  Seconds interval = kDefaultInterval;
  Seconds max_gap = kDefaultMaxGap;
  // Half-open analysis window [start, end). When unset the grid starts at the
  // first measurement and ends at or before the last one.
  std::optional<Instant> start;
  std::optional<Instant> end;
};

/// Linear interpolation of time-sorted measurements onto a uniform grid.
/// Grid points never leave the measured span. A pair of neighbouring
/// measurements further apart than max_gap that brackets any grid point
/// raises ErrorCode::Gap; a window the measurements do not cover raises
/// ErrorCode::InsufficientData.
CarrierSeries resample_uniform(std::span<const RawMeasurement> measurements,
                               const ResampleOptions& options);
CarrierSeries resample_uniform(std::span<const RawMeasurement> measurements,
                               Seconds interval = kDefaultInterval);

/// Subtracts a Gaussian-weighted running average with standard deviation
/// sigma. The kernel is cut at 4 sigma and renormalised over whatever part of
/// the window lies inside the series, so edges are not biased toward zero.
FluctuationSeries gaussian_detrend(const CarrierSeries& series, Seconds sigma);

}  // namespace carriersig
