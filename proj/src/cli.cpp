#include "carriersig/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "carriersig/error.hpp"
#include "carriersig/pipeline.hpp"
#include "carriersig/simgen.hpp"

namespace carriersig::cli {

namespace {

using Json = nlohmann::ordered_json;

Seconds from_hours(double h, std::string_view flag) {
  if (!std::isfinite(h) || h <= 0.0) {
    throw Error(ErrorCode::InvalidParameter,
                fmt::format("{} must be positive, got {}", flag, h));
  }
  return Seconds{static_cast<Seconds::rep>(std::llround(h * 3600.0))};
}

// Human-facing report numbers carry 6 significant digits.
double round6(double v) { return std::stod(fmt::format("{:.6g}", v)); }

std::ifstream open_input(const std::string& path, std::string_view what) {
  if (path.empty()) {
    throw Error(ErrorCode::InvalidParameter, fmt::format("no {} given", what));
  }
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::Io, fmt::format("cannot open {} '{}'", what, path));
  }
  return in;
}

// Writes through `out` for "-", otherwise to the named file.
template <typename Writer>
void emit(const std::string& path, std::ostream& out, Writer&& write) {
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::Io, fmt::format("cannot write '{}'", path));
  write(file);
  file.flush();
  if (!file) throw Error(ErrorCode::Io, fmt::format("write to '{}' failed", path));
}

CarrierDirectory load_directory(const std::string& path) {
  if (path.empty()) return {};
  auto in = open_input(path, "carriers file");
  return read_carriers(in);
}

Json config_echo(const RunConfig& c) {
  Json j;
  j["interval_minutes"] = c.interval_minutes;
  j["window_sigma_hours"] = c.window_sigma_hours;
  j["period_hours"] = c.period_hours;
  j["encoding"] = std::string(to_string(c.encoding));
  j["threshold"] = c.threshold;
  j["bin_width"] = c.bin_width;
  j["include_other_satellites"] = c.include_other_satellites;
  return j;
}

Json optional_string(const std::optional<std::string>& s) {
  return s ? Json(*s) : Json(nullptr);
}

int cmd_signatures(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto in = open_input(c.measurements, "measurements file");
  const auto by_carrier = read_measurements(in, c.min_snr_db);
  if (by_carrier.empty()) {
    throw Error(ErrorCode::InsufficientData, "measurements file has no rows");
  }

  PipelineOptions options;
  options.resample.interval =
      from_hours(c.interval_minutes / 60.0, "--interval-minutes");
  options.resample.max_gap = from_hours(c.max_gap_hours, "--max-gap-hours");
  options.window_sigma = from_hours(c.window_sigma_hours, "--window-sigma-hours");
  options.period = from_hours(c.period_hours, "--period-hours");
  options.encoding = c.encoding;
  if (c.start) options.resample.start = parse_timestamp(*c.start);
  if (c.duration_hours) {
    if (!options.resample.start) {
      Instant earliest = Instant::max();
      for (const auto& [id, rows] : by_carrier) {
        earliest = std::min(earliest, rows.front().timestamp);
      }
      options.resample.start = earliest;
    }
    options.resample.end = *options.resample.start +
                           from_hours(*c.duration_hours, "--duration-hours");
  }

  const auto batch = compute_signatures(by_carrier, options);
  for (const auto& reason : batch.skipped) {
    fmt::print(err, "warning: skipping carrier: {}\n", reason);
  }
  for (const auto& s : batch.signatures) {
    if (s.truncated_samples > 0) {
      fmt::print(err, "warning: carrier '{}': dropped {} trailing samples of a "
                      "partial period\n",
                 s.carrier_id, s.truncated_samples);
    }
    if (s.low_rank) {
      fmt::print(err, "warning: carrier '{}': period matrix has rank < 2\n",
                 s.carrier_id);
    }
  }
  if (batch.signatures.empty()) {
    throw Error(ErrorCode::InsufficientData,
                "no carrier covers the whole analysis period");
  }
  emit(c.output, out,
       [&](std::ostream& o) { write_signatures(o, batch.signatures); });
  return 0;
}

std::vector<Signature> load_signatures(const std::string& path) {
  auto in = open_input(path, "signatures file");
  return read_signatures(in);
}

int cmd_identify(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto signatures = load_signatures(c.signatures);
  const auto directory = load_directory(c.carriers);
  const auto it = std::find_if(signatures.begin(), signatures.end(),
                               [&](const Signature& s) {
                                 return s.carrier_id == c.interferer;
                               });
  if (it == signatures.end()) {
    throw Error(ErrorCode::UnknownCarrier,
                fmt::format("interferer '{}' has no signature", c.interferer));
  }
  std::vector<Signature> known;
  for (const auto& s : signatures) {
    if (s.carrier_id == c.interferer) continue;
    if (!c.include_other_satellites &&
        on_different_satellites(directory, c.interferer, s.carrier_id)) {
      continue;
    }
    known.push_back(s);
  }
  const auto id = rank_candidates(*it, known, c.threshold);

  Json report;
  report["interferer"] = id.interferer_id;
  report["threshold"] = id.threshold;
  report["config"] = config_echo(c);
  report["result_set_size"] = id.result_set_size;
  Json ranking = Json::array();
  for (std::size_t i = 0; i < id.ranking.size(); ++i) {
    const auto& cand = id.ranking[i];
    const auto info = directory.find(cand.carrier_id);
    Json entry;
    entry["rank"] = i + 1;
    entry["carrier_id"] = cand.carrier_id;
    entry["antenna_id"] = info == directory.end()
                              ? Json(nullptr)
                              : optional_string(info->second.antenna_id);
    entry["distance"] = round6(cand.distance);
    entry["in_result_set"] = i < id.result_set_size;
    ranking.push_back(std::move(entry));
  }
  report["ranking"] = std::move(ranking);
  emit(c.output, out, [&](std::ostream& o) { o << report.dump(2) << '\n'; });
  return 0;
}

int cmd_distances(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto signatures = load_signatures(c.signatures);
  const auto directory = load_directory(c.carriers);
  const auto records =
      all_pair_distances(signatures, directory, c.include_other_satellites);
  emit(c.output, out, [&](std::ostream& o) { write_distances(o, records); });
  return 0;
}

int cmd_evaluate(const RunConfig& c, std::ostream& out, std::ostream&) {
  auto in = open_input(c.distances, "distances file");
  auto records = read_distances(in);
  if (c.census.empty() && c.carriers.empty()) {
    throw Error(ErrorCode::InvalidParameter,
                "evaluate needs --census or --carriers");
  }

  std::optional<AntennaCensus> census;
  if (!c.census.empty()) census = parse_census(c.census);
  if (!c.carriers.empty()) {
    const auto directory = load_directory(c.carriers);
    std::set<std::string> present;
    for (auto& r : records) {
      for (const auto* id : {&r.carrier_a, &r.carrier_b}) {
        if (!directory.contains(*id)) {
          throw Error(ErrorCode::UnknownCarrier,
                      fmt::format("carrier '{}' is not in the carriers file", *id));
        }
        present.insert(*id);
      }
      if (!r.same_antenna) {
        const auto& a = directory.find(r.carrier_a)->second.antenna_id;
        const auto& b = directory.find(r.carrier_b)->second.antenna_id;
        if (a && b) r.same_antenna = *a == *b;
      }
    }
    if (!census) {
      const std::vector<std::string> ids(present.begin(), present.end());
      census = census_from_directory(directory, ids);
    }
  }

  const auto dist = build_distributions(records, c.bin_width);
  auto report = evaluate(*census, c.threshold, dist.same_cdf(c.threshold),
                         dist.different_cdf(c.threshold));
  report.same_records = dist.same_cdf.size();
  report.different_records = dist.different_cdf.size();

  Json j;
  j["config"] = config_echo(c);
  Json inputs;
  inputs["census"] = format_census(report.census);
  inputs["antennas"] = report.census.antennas();
  inputs["carriers"] = report.census.carriers();
  inputs["mean_carriers_per_antenna"] = round6(report.census.mean_carriers());
  inputs["census_pairs"] = {{"same", report.census_pairs.same},
                            {"different", report.census_pairs.different},
                            {"total", report.census_pairs.total}};
  inputs["records"] = {{"same", report.same_records},
                       {"different", report.different_records}};
  j["inputs"] = std::move(inputs);
  j["threshold"] = report.threshold;
  j["F_s"] = round6(report.fs_at_threshold);
  j["F_d"] = round6(report.fd_at_threshold);
  j["p_id"] = round6(report.p_id);
  j["n_i"] = round6(report.n_i);
  j["n_f"] = round6(report.n_f);
  j["p_f"] = round6(report.p_f);
  j["p_f_exact"] = round6(report.p_f_exact);

  emit(c.output, out, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  if (!c.histogram.empty()) {
    emit(c.histogram, out, [&](std::ostream& o) {
      write_histogram(o, dist.same, dist.different);
    });
  }
  return 0;
}

int cmd_simulate(const RunConfig& c, std::ostream&, std::ostream& err) {
  FleetSpec spec;
  if (!c.fleet_config.empty()) {
    auto in = open_input(c.fleet_config, "fleet config");
    spec = read_fleet_spec(in);
  }
  for (const auto& kv : c.fleet_settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidParameter,
                  fmt::format("--set expects key=value, got '{}'", kv));
    }
    std::istringstream line(kv);
    spec = read_fleet_spec(line, spec);
  }
  if (c.seed) spec.seed = *c.seed;
  if (c.days) apply_setting(spec, "days", format_double(*c.days));
  if (c.hours) apply_setting(spec, "hours", format_double(*c.hours));

  const auto fleet = generate(spec);
  if (c.output_dir.empty()) {
    throw Error(ErrorCode::InvalidParameter, "simulate needs --output-dir");
  }
  std::error_code ec;
  std::filesystem::create_directories(c.output_dir, ec);
  if (ec) {
    throw Error(ErrorCode::Io, fmt::format("cannot create '{}': {}",
                                           c.output_dir, ec.message()));
  }
  const auto dir = std::filesystem::path(c.output_dir);
  emit((dir / "measurements.csv").string(), err,
       [&](std::ostream& o) { write_measurements(o, fleet.measurements); });
  emit((dir / "carriers.csv").string(), err,
       [&](std::ostream& o) { write_carriers(o, fleet.truth); });
  return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.subcommand) {
      case Subcommand::Signatures: return cmd_signatures(config, out, err);
      case Subcommand::Identify: return cmd_identify(config, out, err);
      case Subcommand::Distances: return cmd_distances(config, out, err);
      case Subcommand::Evaluate: return cmd_evaluate(config, out, err);
      case Subcommand::Simulate: return cmd_simulate(config, out, err);
    }
  } catch (const Error& e) {
    fmt::print(err, "error ({}): {}\n", to_string(e.code()), e.what());
    return exit_status(e.code());
  }
  return 1;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Carrier signature extraction, matching and evaluation",
               "carriersig"};
  app.require_subcommand(1);

  app.add_option("--interval-minutes", c.interval_minutes,
                 "Resampling grid interval")->capture_default_str();
  app.add_option("--window-sigma-hours", c.window_sigma_hours,
                 "Std. deviation of the detrending window")->capture_default_str();
  app.add_option("--max-gap-hours", c.max_gap_hours,
                 "Largest tolerated gap between measurements")
      ->capture_default_str();
  app.add_option("--period-hours", c.period_hours,
                 "Length of one period matrix row")->capture_default_str();
  app.add_option("--min-snr-db", c.min_snr_db,
                 "Drop rows below this SNR when an snr_db column exists")
      ->capture_default_str();
  std::string encoding = "amplitude";
  app.add_option("--encoding", encoding, "State vector encoding")
      ->check(CLI::IsMember({"amplitude", "l2"}))
      ->capture_default_str();
  app.add_option("--threshold", c.threshold, "Result-set distance threshold D_t")
      ->capture_default_str();
  app.add_option("--bin-width", c.bin_width, "Histogram bin width")
      ->capture_default_str();
  app.add_option("--seed", c.seed, "Random seed for simulate");
  app.add_flag("--include-other-satellites", c.include_other_satellites,
               "Compare carriers relayed by different satellites");

  auto* sig = app.add_subcommand("signatures", "Measurements to signature CSV");
  sig->add_option("--measurements", c.measurements)->required();
  sig->add_option("--start", c.start, "Analysis window start (ISO 8601 UTC)");
  sig->add_option("--duration-hours", c.duration_hours, "Analysis window length");
  sig->add_option("-o,--output", c.output)->capture_default_str();

  auto* ident = app.add_subcommand("identify", "Rank known carriers against an interferer");
  ident->add_option("--signatures", c.signatures)->required();
  ident->add_option("--interferer", c.interferer)->required();
  ident->add_option("--carriers", c.carriers);
  ident->add_option("-o,--output", c.output)->capture_default_str();

  auto* dist = app.add_subcommand("distances", "All-pairs distance CSV");
  dist->add_option("--signatures", c.signatures)->required();
  dist->add_option("--carriers", c.carriers);
  dist->add_option("-o,--output", c.output)->capture_default_str();

  auto* eval = app.add_subcommand("evaluate", "Performance report from distances");
  eval->add_option("--distances", c.distances)->required();
  eval->add_option("--carriers", c.carriers);
  eval->add_option("--census", c.census, "k:n pairs, e.g. 1:27,2:1");
  eval->add_option("-o,--output", c.output)->capture_default_str();
  eval->add_option("--histogram", c.histogram, "Histogram CSV path");

  auto* sim = app.add_subcommand("simulate", "Synthetic fleet measurements");
  sim->add_option("--config", c.fleet_config, "key = value fleet file");
  sim->add_option("--days", c.days);
  sim->add_option("--hours", c.hours);
  sim->add_option("--set", c.fleet_settings, "Fleet setting key=value");
  sim->add_option("--output-dir", c.output_dir)->required();

  for (auto* s : {sig, ident, dist, eval, sim}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e, out, err);
    return status == 0 ? 0 : 2;
  }

  try {
    c.encoding = parse_encoding(encoding);
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return exit_status(e.code());
  }
  if (sig->parsed()) c.subcommand = Subcommand::Signatures;
  if (ident->parsed()) c.subcommand = Subcommand::Identify;
  if (dist->parsed()) c.subcommand = Subcommand::Distances;
  if (eval->parsed()) c.subcommand = Subcommand::Evaluate;
  if (sim->parsed()) c.subcommand = Subcommand::Simulate;
  return run(c, out, err);
}

}  // namespace carriersig::cli
