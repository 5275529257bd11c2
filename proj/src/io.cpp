#include "carriersig/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "carriersig/error.hpp"

namespace carriersig {

namespace {

std::string_view trim(std::string_view s) {
  const auto lo = s.find_first_not_of(" \t\r");
  if (lo == std::string_view::npos) return {};
  const auto hi = s.find_last_not_of(" \t\r");
  return s.substr(lo, hi - lo + 1);
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    fields.emplace_back(trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return fields;
}

std::size_t require_column(const CsvTable& t, std::string_view name,
                           std::string_view what) {
  if (auto c = t.column(name)) return *c;
  throw Error(ErrorCode::MalformedInput,
              fmt::format("{}: missing column '{}'", what, name));
}

std::optional<std::string> optional_field(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

}  // namespace

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable read_csv(std::istream& in, std::string_view what) {
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split(line);
    if (t.header.empty()) {
      t.header = std::move(fields);
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw Error(ErrorCode::MalformedInput,
                  fmt::format("{} line {}: expected {} fields, found {}", what,
                              line_no, t.header.size(), fields.size()));
    }
    t.rows.push_back(std::move(fields));
  }
  if (in.bad()) {
    throw Error(ErrorCode::Io, fmt::format("{}: read failed", what));
  }
  if (t.header.empty()) {
    throw Error(ErrorCode::MalformedInput, fmt::format("{}: empty file", what));
  }
  return t;
}

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

double parse_double_field(std::string_view text, std::string_view what) {
  double v = 0.0;
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, v);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw Error(ErrorCode::MalformedInput,
                fmt::format("{}: '{}' is not a number", what, text));
  }
  return v;
}

MeasurementsByCarrier read_measurements(std::istream& in, double min_snr_db) {
  const auto t = read_csv(in, "measurements CSV");
  const auto id_col = require_column(t, "carrier_id", "measurements CSV");
  const auto ts_col = require_column(t, "timestamp", "measurements CSV");
  const auto eirp_col = t.column("eirp_dbw");
  const auto snr_col = t.column("snr_db");
  std::array<std::size_t, 4> budget_cols{};
  if (!eirp_col) {
    budget_cols = {require_column(t, "p_sa_dbm", "measurements CSV"),
                   require_column(t, "l_fs_db", "measurements CSV"),
                   require_column(t, "g_ant_db", "measurements CSV"),
                   require_column(t, "g_path_db", "measurements CSV")};
  }

  MeasurementsByCarrier out;
  for (const auto& row : t.rows) {
    RawMeasurement m;
    m.carrier_id = row[id_col];
    if (m.carrier_id.empty()) {
      throw Error(ErrorCode::MalformedInput, "measurements CSV: empty carrier_id");
    }
    m.timestamp = parse_timestamp(row[ts_col]);
    if (eirp_col) {
      m.power = parse_double_field(row[*eirp_col], "eirp_dbw");
    } else {
      m.power = LinkBudget{parse_double_field(row[budget_cols[0]], "p_sa_dbm"),
                           parse_double_field(row[budget_cols[1]], "l_fs_db"),
                           parse_double_field(row[budget_cols[2]], "g_ant_db"),
                           parse_double_field(row[budget_cols[3]], "g_path_db")};
    }
    if (snr_col && !row[*snr_col].empty()) {
      m.snr_db = parse_double_field(row[*snr_col], "snr_db");
      if (*m.snr_db < min_snr_db) continue;
    }
    // Validates finiteness now rather than at resampling time.
    (void)m.eirp_dbw();
    out[m.carrier_id].push_back(std::move(m));
  }

  for (auto& [id, rows] : out) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const RawMeasurement& a, const RawMeasurement& b) {
                       return a.timestamp < b.timestamp;
                     });
    const auto dup = std::adjacent_find(
        rows.begin(), rows.end(),
        [](const RawMeasurement& a, const RawMeasurement& b) {
          return a.timestamp == b.timestamp;
        });
    if (dup != rows.end()) {
      throw Error(ErrorCode::InvalidMeasurement,
                  fmt::format("carrier '{}': duplicate timestamp {}", id,
                              format_timestamp(dup->timestamp)));
    }
  }
  return out;
}

void write_measurements(std::ostream& out,
                        std::span<const RawMeasurement> measurements) {
  out << "carrier_id,timestamp,eirp_dbw\n";
  for (const auto& m : measurements) {
    fmt::print(out, "{},{},{}\n", m.carrier_id, format_timestamp(m.timestamp),
               format_double(m.eirp_dbw()));
  }
}

CarrierDirectory read_carriers(std::istream& in) {
  const auto t = read_csv(in, "carriers CSV");
  const auto id_col = require_column(t, "carrier_id", "carriers CSV");
  const auto antenna_col = require_column(t, "antenna_id", "carriers CSV");
  const auto satellite_col = t.column("satellite_id");
  CarrierDirectory out;
  for (const auto& row : t.rows) {
    if (row[id_col].empty()) {
      throw Error(ErrorCode::MalformedInput, "carriers CSV: empty carrier_id");
    }
    CarrierInfo info{optional_field(row[antenna_col]),
                     satellite_col ? optional_field(row[*satellite_col])
                                   : std::nullopt};
    if (!out.emplace(row[id_col], std::move(info)).second) {
      throw Error(ErrorCode::MalformedInput,
                  fmt::format("carriers CSV: carrier '{}' listed twice",
                              row[id_col]));
    }
  }
  return out;
}

void write_carriers(std::ostream& out, const CarrierDirectory& directory) {
  out << "carrier_id,antenna_id,satellite_id\n";
  for (const auto& [id, info] : directory) {
    fmt::print(out, "{},{},{}\n", id, info.antenna_id.value_or(""),
               info.satellite_id.value_or(""));
  }
}

void write_signatures(std::ostream& out, std::span<const Signature> signatures) {
  const std::size_t n = signatures.empty() ? 0 : signatures.front().period_samples;
  out << "carrier_id,period_hours,samples_per_period";
  for (std::size_t i = 0; i < n; ++i) out << ",v2_" << i;
  out << '\n';
  for (const auto& s : signatures) {
    if (s.period_samples != n || s.vector.size() != n) {
      throw Error(ErrorCode::Shape,
                  fmt::format("carrier '{}': signature length {} differs from {}",
                              s.carrier_id, s.vector.size(), n));
    }
    const double hours = static_cast<double>(s.period_length.count()) / 3600.0;
    fmt::print(out, "{},{},{}", s.carrier_id, format_double(hours), n);
    for (double v : s.vector) fmt::print(out, ",{}", format_double(v));
    out << '\n';
  }
}

std::vector<Signature> read_signatures(std::istream& in) {
  const auto t = read_csv(in, "signatures CSV");
  if (t.header.size() < 3 || t.header[0] != "carrier_id" ||
      t.header[1] != "period_hours" || t.header[2] != "samples_per_period") {
    throw Error(ErrorCode::MalformedInput,
                "signatures CSV: header must start with "
                "carrier_id,period_hours,samples_per_period");
  }
  const std::size_t n = t.header.size() - 3;
  std::vector<Signature> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    Signature s;
    s.carrier_id = row[0];
    const double hours = parse_double_field(row[1], "period_hours");
    s.period_length =
        Seconds{static_cast<Seconds::rep>(std::llround(hours * 3600.0))};
    const double samples = parse_double_field(row[2], "samples_per_period");
    if (samples != static_cast<double>(n)) {
      throw Error(ErrorCode::Shape,
                  fmt::format("signatures CSV: carrier '{}' declares {} samples "
                              "but the header has {}",
                              s.carrier_id, row[2], n));
    }
    s.period_samples = n;
    s.vector.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      s.vector.push_back(parse_double_field(row[3 + i], "signature component"));
    }
    out.push_back(std::move(s));
  }
  return out;
}

void write_distances(std::ostream& out, std::span<const DistanceRecord> records) {
  out << "carrier_a,carrier_b,distance,same_antenna\n";
  for (const auto& r : records) {
    const char* flag = !r.same_antenna ? "" : (*r.same_antenna ? "true" : "false");
    fmt::print(out, "{},{},{},{}\n", r.carrier_a, r.carrier_b,
               format_double(r.distance), flag);
  }
}

std::vector<DistanceRecord> read_distances(std::istream& in) {
  const auto t = read_csv(in, "distances CSV");
  const auto a_col = require_column(t, "carrier_a", "distances CSV");
  const auto b_col = require_column(t, "carrier_b", "distances CSV");
  const auto d_col = require_column(t, "distance", "distances CSV");
  const auto s_col = require_column(t, "same_antenna", "distances CSV");
  std::vector<DistanceRecord> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    DistanceRecord r;
    r.carrier_a = row[a_col];
    r.carrier_b = row[b_col];
    r.distance = parse_double_field(row[d_col], "distance");
    if (!(r.distance >= 0.0 && r.distance <= 1.0)) {
      throw Error(ErrorCode::MalformedInput,
                  fmt::format("distances CSV: distance {} outside [0, 1]",
                              row[d_col]));
    }
    const auto& flag = row[s_col];
    if (flag == "true" || flag == "1") {
      r.same_antenna = true;
    } else if (flag == "false" || flag == "0") {
      r.same_antenna = false;
    } else if (!flag.empty()) {
      throw Error(ErrorCode::MalformedInput,
                  fmt::format("distances CSV: bad same_antenna '{}'", flag));
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_histogram(std::ostream& out, const Histogram& same,
                     const Histogram& different) {
  if (same.bins() != different.bins()) {
    throw Error(ErrorCode::Shape, "histograms have different binning");
  }
  out << "bin_lo,bin_hi,count_same,count_different\n";
  for (std::size_t i = 0; i < same.bins(); ++i) {
    fmt::print(out, "{},{},{},{}\n", format_double(same.bin_lo(i)),
               format_double(same.bin_hi(i)), same.counts[i],
               different.counts[i]);
  }
}

}  // namespace carriersig
