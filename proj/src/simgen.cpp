#include "carriersig/simgen.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <fmt/format.h>

#include "carriersig/error.hpp"

namespace carriersig {

namespace {

// Stream tags keep the random sequences for different fleet components
// independent of each other and of iteration order.
enum class Stream : std::uint32_t { Satellite = 1, Antenna = 2, Carrier = 3 };

std::mt19937_64 make_engine(std::uint64_t seed, Stream stream,
                            std::uint32_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), index};
  return std::mt19937_64(seq);
}

double parse_double(std::string_view key, std::string_view value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(value), &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::MalformedInput,
              fmt::format("fleet setting '{}': '{}' is not a number", key, value));
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view value) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(std::string(value), &used);
    if (used == value.size() && value.front() != '-') return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::MalformedInput,
              fmt::format("fleet setting '{}': '{}' is not a non-negative integer",
                          key, value));
}

Seconds hours(double h) {
  return Seconds{static_cast<Seconds::rep>(std::llround(h * 3600.0))};
}

std::string_view trim(std::string_view s) {
  const auto lo = s.find_first_not_of(" \t\r");
  if (lo == std::string_view::npos) return {};
  const auto hi = s.find_last_not_of(" \t\r");
  return s.substr(lo, hi - lo + 1);
}

}  // namespace

AntennaCensus reference_census() {
  return AntennaCensus({{1, 27}, {2, 1}, {3, 1}, {6, 2}, {9, 1}});
}

void validate(const FleetSpec& spec) {
  if (spec.interval <= Seconds::zero()) {
    throw Error(ErrorCode::InvalidParameter, "fleet interval must be > 0");
  }
  if (spec.duration <= Seconds::zero()) {
    throw Error(ErrorCode::InvalidParameter, "fleet duration must be > 0");
  }
  if (spec.duration < 2 * spec.interval) {
    throw Error(ErrorCode::InsufficientData,
                "fleet duration covers fewer than 2 samples");
  }
  if (spec.satellites < 1) {
    throw Error(ErrorCode::InvalidParameter, "need at least one satellite");
  }
  if (spec.diurnal_db < 0.0 || spec.antenna_db < 0.0 || spec.carrier_db < 0.0) {
    throw Error(ErrorCode::InvalidParameter, "fleet amplitudes must be >= 0");
  }
  if (spec.antenna_correlation <= Seconds::zero()) {
    throw Error(ErrorCode::InvalidParameter,
                "antenna correlation time must be > 0");
  }
  if (!(spec.base_eirp_min_dbw <= spec.base_eirp_max_dbw)) {
    throw Error(ErrorCode::InvalidParameter, "base EIRP range is inverted");
  }
}

void apply_setting(FleetSpec& spec, std::string_view key, std::string_view value) {
  if (key == "census") {
    spec.census = parse_census(value);
  } else if (key == "satellites") {
    spec.satellites = static_cast<int>(parse_unsigned(key, value));
  } else if (key == "start") {
    spec.start = parse_timestamp(value);
  } else if (key == "days") {
    spec.duration = hours(24.0 * parse_double(key, value));
  } else if (key == "hours") {
    spec.duration = hours(parse_double(key, value));
  } else if (key == "interval_minutes") {
    spec.interval = hours(parse_double(key, value) / 60.0);
  } else if (key == "diurnal_db") {
    spec.diurnal_db = parse_double(key, value);
  } else if (key == "antenna_db") {
    spec.antenna_db = parse_double(key, value);
  } else if (key == "carrier_db") {
    spec.carrier_db = parse_double(key, value);
  } else if (key == "antenna_correlation_hours") {
    spec.antenna_correlation = hours(parse_double(key, value));
  } else if (key == "base_eirp_min_dbw") {
    spec.base_eirp_min_dbw = parse_double(key, value);
  } else if (key == "base_eirp_max_dbw") {
    spec.base_eirp_max_dbw = parse_double(key, value);
  } else if (key == "seed") {
    spec.seed = parse_unsigned(key, value);
  } else {
    throw Error(ErrorCode::MalformedInput,
                fmt::format("unknown fleet setting '{}'", key));
  }
}

FleetSpec read_fleet_spec(std::istream& in, FleetSpec base) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    text = trim(text.substr(0, text.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::MalformedInput,
                  fmt::format("fleet config line {}: expected key = value",
                              line_no));
    }
    apply_setting(base, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
  }
  return base;
}

Fleet generate(const FleetSpec& spec) {
  validate(spec);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  constexpr double kDay = 24.0 * 3600.0;
  const auto samples = static_cast<std::size_t>(spec.duration / spec.interval);
  const double step = static_cast<double>(spec.interval.count());

  // Diurnal profile per satellite.
  std::vector<std::vector<double>> diurnal(
      static_cast<std::size_t>(spec.satellites));
  for (int s = 0; s < spec.satellites; ++s) {
    auto rng = make_engine(spec.seed, Stream::Satellite,
                           static_cast<std::uint32_t>(s));
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    std::uniform_real_distribution<double> weight(0.0, 0.5);
    const double phi1 = phase(rng);
    const double phi2 = phase(rng);
    const double w2 = weight(rng);
    auto& d = diurnal[static_cast<std::size_t>(s)];
    d.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      const double x = kTwoPi * static_cast<double>(i) * step / kDay;
      d[i] = spec.diurnal_db * (std::sin(x + phi1) + w2 * std::sin(2.0 * x + phi2));
    }
  }

  const double rho =
      std::exp(-step / static_cast<double>(spec.antenna_correlation.count()));
  const double innovation = std::sqrt(1.0 - rho * rho);

  Fleet fleet;
  fleet.measurements.reserve(samples *
                             static_cast<std::size_t>(spec.census.carriers()));
  std::uint32_t antenna_index = 0;
  std::uint32_t carrier_index = 0;
  std::vector<double> antenna_term(samples);
  for (const auto& [carriers_on_antenna, antenna_count] :
       spec.census.by_carrier_count()) {
    for (int a = 0; a < antenna_count; ++a, ++antenna_index) {
      const std::string antenna_id = fmt::format("A{:03d}", antenna_index + 1);
      const int satellite = static_cast<int>(antenna_index) % spec.satellites;
      const std::string satellite_id = fmt::format("S{}", satellite + 1);

      auto arng = make_engine(spec.seed, Stream::Antenna, antenna_index);
      std::normal_distribution<double> gauss(0.0, 1.0);
      double x = gauss(arng);
      for (std::size_t i = 0; i < samples; ++i) {
        if (i > 0) x = rho * x + innovation * gauss(arng);
        antenna_term[i] = spec.antenna_db * x;
      }

      const auto& d = diurnal[static_cast<std::size_t>(satellite)];
      for (int c = 0; c < carriers_on_antenna; ++c, ++carrier_index) {
        const std::string carrier_id = fmt::format("C{:03d}", carrier_index + 1);
        fleet.truth[carrier_id] = CarrierInfo{antenna_id, satellite_id};

        auto crng = make_engine(spec.seed, Stream::Carrier, carrier_index);
        std::uniform_real_distribution<double> level(spec.base_eirp_min_dbw,
                                                     spec.base_eirp_max_dbw);
        std::normal_distribution<double> noise(0.0, 1.0);
        const double base = level(crng);
        for (std::size_t i = 0; i < samples; ++i) {
          RawMeasurement m;
          m.carrier_id = carrier_id;
          m.timestamp = spec.start + spec.interval * static_cast<Seconds::rep>(i);
          m.power = base + d[i] + antenna_term[i] + spec.carrier_db * noise(crng);
          fleet.measurements.push_back(std::move(m));
        }
      }
    }
  }
  return fleet;
}

}  // namespace carriersig
