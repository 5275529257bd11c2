#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "carriersig/matching.hpp"
#include "carriersig/signature.hpp"
#include "carriersig/stats.hpp"
#include "carriersig/timeseries.hpp"

namespace carriersig {

inline constexpr double kDefaultMinSnrDb = 3.0;

/// Plain comma-separated table: no quoting, fields trimmed, blank lines
/// skipped. Every row must have as many fields as the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index of `name`, or nullopt.
  std::optional<std::size_t> column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in, std::string_view what);

/// Shortest text that reads back to the same double (17 significant digits).
std::string format_double(double v);
double parse_double_field(std::string_view text, std::string_view what);

using MeasurementsByCarrier =
    std::map<std::string, std::vector<RawMeasurement>, std::less<>>;

/// Accepts either `carrier_id,timestamp,eirp_dbw` or
/// `carrier_id,timestamp,p_sa_dbm,l_fs_db,g_ant_db,g_path_db[,snr_db]`.
/// Rows whose snr_db is below min_snr_db are dropped when that column is
/// present. Each carrier's rows come back sorted; a repeated timestamp is an
/// InvalidMeasurement error.
MeasurementsByCarrier read_measurements(std::istream& in,
                                        double min_snr_db = kDefaultMinSnrDb);

/// Writes the `carrier_id,timestamp,eirp_dbw` form.
void write_measurements(std::ostream& out,
                        std::span<const RawMeasurement> measurements);

/// `carrier_id,antenna_id[,satellite_id]`; an empty field means unknown.
CarrierDirectory read_carriers(std::istream& in);
void write_carriers(std::ostream& out, const CarrierDirectory& directory);

/// `carrier_id,period_hours,samples_per_period,v2_0,v2_1,...`. All
/// signatures in one file share samples_per_period.
void write_signatures(std::ostream& out, std::span<const Signature> signatures);
std::vector<Signature> read_signatures(std::istream& in);

/// `carrier_a,carrier_b,distance,same_antenna` with same_antenna one of
/// true, false or empty.
void write_distances(std::ostream& out, std::span<const DistanceRecord> records);
std::vector<DistanceRecord> read_distances(std::istream& in);

/// `bin_lo,bin_hi,count_same,count_different`.
void write_histogram(std::ostream& out, const Histogram& same,
                     const Histogram& different);

}  // namespace carriersig
