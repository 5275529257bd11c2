#pragma once

#include <cstdint>
#include <istream>
#include <string_view>
#include <vector>

#include "carriersig/matching.hpp"
#include "carriersig/stats.hpp"
#include "carriersig/timeseries.hpp"

namespace carriersig {

/// Census with the same antenna/carrier mix as the reference December fleet
/// (32 antennas, 53 carriers).
AntennaCensus reference_census();

/// Parameters of the synthetic fleet. The amplitudes are calibration knobs
/// with no measured counterpart; they are standard deviations in dB except
/// diurnal_db, which is the amplitude of the 24 h fundamental.
struct FleetSpec {
  AntennaCensus census = reference_census();
  int satellites = 1;
  Instant start = Instant{std::chrono::sys_days{std::chrono::year{2012} /
                                                12 / 1}};
  Seconds duration{31 * 24 * 3600};
  Seconds interval = kDefaultInterval;
  double diurnal_db = 1.0;  // shared by every carrier on a satellite
  double antenna_db = 0.3;  // shared by every carrier of an antenna
  double carrier_db = 0.1;  // independent per carrier
  Seconds antenna_correlation{4 * 3600};
  double base_eirp_min_dbw = 40.0;
  double base_eirp_max_dbw = 55.0;
  std::uint64_t seed = 42;
};

/// Throws InvalidParameter for a non-positive duration or interval, negative
/// amplitudes, or fewer than one satellite.
void validate(const FleetSpec& spec);

/// Applies one `key = value` setting. Recognised keys: census, satellites,
/// start, days, hours, interval_minutes, diurnal_db, antenna_db, carrier_db,
/// antenna_correlation_hours, base_eirp_min_dbw, base_eirp_max_dbw, seed.
void apply_setting(FleetSpec& spec, std::string_view key, std::string_view value);

/// Reads a plain `key = value` file; blank lines and `#` comments are skipped.
FleetSpec read_fleet_spec(std::istream& in, FleetSpec base = {});

struct Fleet {
  std::vector<RawMeasurement> measurements;  // grouped by carrier, time-sorted
  CarrierDirectory truth;                    // antenna and satellite per carrier
};

/// Each carrier's EIRP is a per-carrier base level plus
///   - a diurnal term (24 h fundamental plus a second harmonic with a random
///     per-satellite weight and phases) common to the satellite,
///   - an Ornstein-Uhlenbeck process common to the antenna,
///   - white noise of its own.
/// Output depends only on the spec, seed included.
Fleet generate(const FleetSpec& spec);

}  // namespace carriersig
