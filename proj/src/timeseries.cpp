#include "carriersig/timeseries.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "carriersig/error.hpp"

namespace carriersig {

namespace {

bool read_digits(std::string_view text, std::size_t pos, std::size_t len,
                 int& out) {
  if (pos + len > text.size()) return false;
  const char* first = text.data() + pos;
  const auto [ptr, ec] = std::from_chars(first, first + len, out);
  return ec == std::errc{} && ptr == first + len;
}

}  // namespace

Instant parse_timestamp(std::string_view text) {
  const auto bad = [&] {
    return Error(ErrorCode::MalformedInput,
                 fmt::format("bad timestamp '{}' (expected ISO 8601 UTC)", text));
  };
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (text.size() < 19 || text[4] != '-' || text[7] != '-' ||
      (text[10] != 'T' && text[10] != ' ') || text[13] != ':' ||
      text[16] != ':' || !read_digits(text, 0, 4, y) ||
      !read_digits(text, 5, 2, mo) || !read_digits(text, 8, 2, d) ||
      !read_digits(text, 11, 2, h) || !read_digits(text, 14, 2, mi) ||
      !read_digits(text, 17, 2, s)) {
    throw bad();
  }
  std::string_view rest = text.substr(19);
  if (!rest.empty() && rest.front() == '.') {
    rest.remove_prefix(1);
    if (rest.empty() || !std::isdigit(static_cast<unsigned char>(rest.front()))) {
      throw bad();
    }
    while (!rest.empty() && std::isdigit(static_cast<unsigned char>(rest.front()))) {
      rest.remove_prefix(1);
    }
  }
  if (!(rest.empty() || rest == "Z" || rest == "+00:00")) throw bad();

  const std::chrono::year_month_day date{std::chrono::year{y},
                                         std::chrono::month{static_cast<unsigned>(mo)},
                                         std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok() || h > 23 || mi > 59 || s > 59) throw bad();
  return std::chrono::sys_days{date} + std::chrono::hours{h} +
         std::chrono::minutes{mi} + Seconds{s};
}

std::string format_timestamp(Instant t) {
  const auto day = std::chrono::floor<std::chrono::days>(t);
  const std::chrono::year_month_day date{day};
  const std::chrono::hh_mm_ss tod{t - day};
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z",
                     static_cast<int>(date.year()),
                     static_cast<unsigned>(date.month()),
                     static_cast<unsigned>(date.day()), tod.hours().count(),
                     tod.minutes().count(), tod.seconds().count());
}

double RawMeasurement::eirp_dbw() const {
  if (const auto* eirp = std::get_if<double>(&power)) {
    if (!std::isfinite(*eirp)) {
      throw Error(ErrorCode::InvalidMeasurement,
                  fmt::format("non-finite EIRP for carrier '{}'", carrier_id));
    }
    return *eirp;
  }
  return compute_eirp(std::get<LinkBudget>(power));
}

double compute_eirp(double p_sa_dbm, double l_fs_db, double g_ant_db,
                    double g_path_db) {
  if (!std::isfinite(p_sa_dbm) || !std::isfinite(l_fs_db) ||
      !std::isfinite(g_ant_db) || !std::isfinite(g_path_db)) {
    throw Error(ErrorCode::InvalidMeasurement,
                "link budget contains a non-finite term");
  }
  return p_sa_dbm + l_fs_db - g_ant_db - g_path_db - 30.0;
}

double compute_eirp(const LinkBudget& budget) {
  return compute_eirp(budget.p_sa_dbm, budget.l_fs_db, budget.g_ant_db,
                      budget.g_path_db);
}

namespace {

std::string carrier_of(std::span<const RawMeasurement> m) {
  return m.empty() ? std::string{} : m.front().carrier_id;
}

}  // namespace

CarrierSeries resample_uniform(std::span<const RawMeasurement> measurements,
                               const ResampleOptions& options) {
  const auto id = carrier_of(measurements);
  if (options.interval <= Seconds::zero()) {
    throw Error(ErrorCode::InvalidParameter, "resample interval must be > 0");
  }
  if (measurements.size() < 2) {
    throw Error(ErrorCode::InsufficientData,
                fmt::format("carrier '{}': need at least 2 measurements, got {}",
                            id, measurements.size()));
  }
  for (std::size_t i = 1; i < measurements.size(); ++i) {
    if (measurements[i].timestamp <= measurements[i - 1].timestamp) {
      throw Error(ErrorCode::InvalidMeasurement,
                  fmt::format("carrier '{}': timestamps not strictly increasing "
                              "at {}",
                              id, format_timestamp(measurements[i].timestamp)));
    }
  }

  const Instant first = measurements.front().timestamp;
  const Instant last = measurements.back().timestamp;
  const Instant start = options.start.value_or(first);
  std::size_t count = 0;
  if (options.end) {
    if (*options.end <= start) {
      throw Error(ErrorCode::InvalidParameter, "analysis window is empty");
    }
    count = static_cast<std::size_t>((*options.end - start + options.interval -
                                      Seconds{1}) /
                                     options.interval);
  } else {
    if (last < start) {
      throw Error(ErrorCode::InsufficientData,
                  fmt::format("carrier '{}' ends before the window starts", id));
    }
    count = static_cast<std::size_t>((last - start) / options.interval) + 1;
  }

  const UniformGrid grid{start, options.interval};
  const Instant grid_last = grid.at(count - 1);
  if (start < first || grid_last > last) {
    throw Error(ErrorCode::InsufficientData,
                fmt::format("carrier '{}' does not cover the analysis window "
                            "{} .. {}",
                            id, format_timestamp(start),
                            format_timestamp(grid_last)));
  }
  if (count < 2) {
    throw Error(ErrorCode::InsufficientData,
                fmt::format("carrier '{}': span covers fewer than 2 grid points",
                            id));
  }

  CarrierSeries out;
  out.carrier_id = id;
  out.grid = grid;
  out.values.reserve(count);

  // Walk the grid and the measurements together; `hi` is the first
  // measurement at or after the current grid time.
  std::size_t hi = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const Instant t = grid.at(i);
    while (measurements[hi].timestamp < t) ++hi;
    const auto& right = measurements[hi];
    if (right.timestamp == t) {
      out.values.push_back(right.eirp_dbw());
      continue;
    }
    const auto& left = measurements[hi - 1];
    const Seconds span = right.timestamp - left.timestamp;
    if (span > options.max_gap) {
      throw Error(ErrorCode::Gap,
                  fmt::format("carrier '{}': {} s gap after {} exceeds "
                              "the {} s limit",
                              id, span.count(), format_timestamp(left.timestamp),
                              options.max_gap.count()));
    }
    const double frac = static_cast<double>((t - left.timestamp).count()) /
                        static_cast<double>(span.count());
    const double a = left.eirp_dbw();
    const double b = right.eirp_dbw();
    out.values.push_back(a + frac * (b - a));
  }
  return out;
}

CarrierSeries resample_uniform(std::span<const RawMeasurement> measurements,
                               Seconds interval) {
  ResampleOptions options;
  options.interval = interval;
  return resample_uniform(measurements, options);
}

FluctuationSeries gaussian_detrend(const CarrierSeries& series, Seconds sigma) {
  if (sigma <= Seconds::zero()) {
    throw Error(ErrorCode::InvalidParameter, "window sigma must be > 0");
  }
  if (series.grid.interval <= Seconds::zero()) {
    throw Error(ErrorCode::InvalidParameter, "grid interval must be > 0");
  }
  const auto& x = series.values;
  const std::size_t n = x.size();
  if (n < 2) {
    throw Error(ErrorCode::InsufficientData,
                fmt::format("carrier '{}': detrending needs at least 2 samples",
                            series.carrier_id));
  }

  const double step = static_cast<double>(series.grid.interval.count());
  const double s = static_cast<double>(sigma.count());
  const auto reach = std::min<std::size_t>(
      n - 1, static_cast<std::size_t>(std::floor(4.0 * s / step)));
  std::vector<double> kernel(reach + 1);
  for (std::size_t k = 0; k <= reach; ++k) {
    const double dt = static_cast<double>(k) * step;
    kernel[k] = std::exp(-(dt * dt) / (2.0 * s * s));
  }

  FluctuationSeries out;
  out.carrier_id = series.carrier_id;
  out.antenna_id = series.antenna_id;
  out.grid = series.grid;
  out.values.resize(n);
  // E_i = sum_j w_ij (x_i - x_j) / sum_j w_ij, algebraically the same as
  // x_i minus the weighted mean but exactly zero for constant input.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= reach ? i - reach : 0;
    const std::size_t hi = std::min(n - 1, i + reach);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) {
      const double w = kernel[i > j ? i - j : j - i];
      num += w * (x[i] - x[j]);
      den += w;
    }
    out.values[i] = num / den;
  }
  return out;
}

}  // namespace carriersig
