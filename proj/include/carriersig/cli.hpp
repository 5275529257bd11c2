#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "carriersig/encoding.hpp"
#include "carriersig/io.hpp"
#include "carriersig/matching.hpp"
#include "carriersig/signature.hpp"
#include "carriersig/stats.hpp"
#include "carriersig/timeseries.hpp"

namespace carriersig::cli {

enum class Subcommand { Signatures, Identify, Distances, Evaluate, Simulate };

struct RunConfig {
  Subcommand subcommand = Subcommand::Signatures;

  // Paths; "-" means standard output for outputs.
  std::string measurements;
  std::string carriers;
  std::string signatures;
  std::string distances;
  std::string fleet_config;
  std::string output = "-";
  std::string histogram;
  std::string output_dir;

  std::string interferer;
  std::string census;
  std::optional<std::string> start;
  std::optional<double> duration_hours;

  double interval_minutes = 3.0;
  double window_sigma_hours = 6.0;
  double max_gap_hours = 2.0;
  double period_hours = 24.0;
  double min_snr_db = kDefaultMinSnrDb;
  EncodingKind encoding = EncodingKind::Amplitude;
  double threshold = kDefaultThreshold;
  double bin_width = kDefaultBinWidth;
  std::optional<std::uint64_t> seed;
  std::optional<double> days;
  std::optional<double> hours;
  std::vector<std::string> fleet_settings;  // key=value overrides
  bool include_other_satellites = false;
};

/// Executes one subcommand. Returns 0 on success or the exit status of the
/// library error that stopped it; the diagnostic goes to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and runs. Usage errors return 2.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace carriersig::cli
