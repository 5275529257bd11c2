#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

#include "carriersig/error.hpp"
#include "carriersig/timeseries.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace carriersig;
using std::chrono::minutes;
using std::chrono::hours;

namespace {

RawMeasurement at(Instant base, Seconds offset, double eirp) {
  RawMeasurement m;
  m.carrier_id = "C1";
  m.timestamp = base + offset;
  m.power = eirp;
  return m;
}

const Instant kT0 = parse_timestamp("2012-12-01T00:00:00Z");

}  // namespace

TEST_CASE("compute_eirp examples") {
  CHECK(compute_eirp(30, 0, 0, 0) == 0.0);
  CHECK(compute_eirp(0, 0, 0, 0) == -30.0);
  CHECK(compute_eirp(-50.0, 205.5, 42.1, 3.2) == doctest::Approx(80.2).epsilon(1e-13));
  CHECK(code_of([] { compute_eirp(std::nan(""), 0, 0, 0); }) ==
        ErrorCode::InvalidMeasurement);
  CHECK(code_of([] {
          compute_eirp(0, std::numeric_limits<double>::infinity(), 0, 0);
        }) == ErrorCode::InvalidMeasurement);
}

TEST_CASE("compute_eirp is affine with slopes +1 +1 -1 -1") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-100, 100);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng), h = u(rng) / 10;
    const double base = compute_eirp(a, b, c, d);
    CHECK(compute_eirp(a + h, b, c, d) - base == doctest::Approx(h).epsilon(1e-9));
    CHECK(compute_eirp(a, b + h, c, d) - base == doctest::Approx(h).epsilon(1e-9));
    CHECK(compute_eirp(a, b, c + h, d) - base == doctest::Approx(-h).epsilon(1e-9));
    CHECK(compute_eirp(a, b, c, d + h) - base == doctest::Approx(-h).epsilon(1e-9));
  }
}

TEST_CASE("link-budget measurements go through compute_eirp") {
  RawMeasurement m;
  m.power = LinkBudget{-50.0, 205.5, 42.1, 3.2};
  CHECK(m.eirp_dbw() == doctest::Approx(80.2));
}

TEST_CASE("timestamps parse and format as UTC") {
  CHECK(format_timestamp(parse_timestamp("2012-12-15T13:45:07Z")) ==
        "2012-12-15T13:45:07Z");
  CHECK(parse_timestamp("2012-12-15 13:45:07") ==
        parse_timestamp("2012-12-15T13:45:07+00:00"));
  CHECK(parse_timestamp("2012-12-15T13:45:07.250Z") ==
        parse_timestamp("2012-12-15T13:45:07Z"));
  CHECK(parse_timestamp("1970-01-01T00:00:00Z").time_since_epoch().count() == 0);
  for (const char* bad : {"2012-13-01T00:00:00Z", "2012-02-30T00:00:00Z",
                          "2012-12-01", "2012-12-01T24:00:00Z",
                          "2012-12-01T00:00:00+01:00", "yesterday"}) {
    CAPTURE(bad);
    CHECK(code_of([&] { parse_timestamp(bad); }) == ErrorCode::MalformedInput);
  }
}

TEST_CASE("resample_uniform examples") {
  SUBCASE("linear midpoint") {
    const std::vector<RawMeasurement> m{at(kT0, minutes(0), 10),
                                        at(kT0, minutes(6), 16)};
    const auto s = resample_uniform(m, minutes(3));
    CHECK(s.values == std::vector<double>{10, 13, 16});
    CHECK(s.grid.start == kT0);
    CHECK(s.carrier_id == "C1");
  }
  SUBCASE("direct line evaluation") {
    const std::vector<RawMeasurement> m{at(kT0, minutes(0), 0),
                                        at(kT0, minutes(9), 9)};
    const auto s = resample_uniform(m, minutes(3));
    REQUIRE(s.values.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(s.values[i] == doctest::Approx(3.0 * static_cast<double>(i)).epsilon(1e-15));
    }
  }
  SUBCASE("constant at irregular times") {
    const std::vector<RawMeasurement> m{
        at(kT0, Seconds(0), 5), at(kT0, Seconds(131), 5), at(kT0, Seconds(400), 5),
        at(kT0, Seconds(401), 5), at(kT0, Seconds(1000), 5)};
    const auto s = resample_uniform(m, minutes(3));
    CHECK(s.values.size() == 6);
    for (double v : s.values) CHECK(v == 5.0);
  }
  SUBCASE("grid never extrapolates past the last measurement") {
    const std::vector<RawMeasurement> m{at(kT0, minutes(0), 0),
                                        at(kT0, minutes(10), 10)};
    const auto s = resample_uniform(m, minutes(3));
    CHECK(s.values.size() == 4);
    CHECK(s.grid.at(3) <= kT0 + minutes(10));
  }
}

TEST_CASE("resampling reproduces measurements on coinciding grid points") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(30, 50);
  std::vector<RawMeasurement> m;
  for (int i = 0; i < 50; ++i) m.push_back(at(kT0, minutes(6 * i), u(rng)));
  const auto s = resample_uniform(m, minutes(3));
  REQUIRE(s.values.size() == 99);
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(s.values[2 * i] == std::get<double>(m[i].power));
  }
}

TEST_CASE("resample_uniform errors") {
  CHECK(code_of([] {
          const std::vector<RawMeasurement> one{at(kT0, minutes(0), 1)};
          resample_uniform(one, minutes(3));
        }) == ErrorCode::InsufficientData);
  CHECK(code_of([] {
          const std::vector<RawMeasurement> m{at(kT0, minutes(0), 1),
                                              at(kT0, minutes(2), 1)};
          resample_uniform(m, minutes(3));
        }) == ErrorCode::InsufficientData);
  CHECK(code_of([] {
          const std::vector<RawMeasurement> m{at(kT0, minutes(3), 1),
                                              at(kT0, minutes(0), 1)};
          resample_uniform(m, minutes(3));
        }) == ErrorCode::InvalidMeasurement);
  CHECK(code_of([] {
          const std::vector<RawMeasurement> m{at(kT0, minutes(0), 1),
                                              at(kT0, minutes(0), 2)};
          resample_uniform(m, minutes(3));
        }) == ErrorCode::InvalidMeasurement);
  CHECK(code_of([] {
          const std::vector<RawMeasurement> m{at(kT0, minutes(0), 1),
                                              at(kT0, hours(3), 1)};
          resample_uniform(m, minutes(3));
        }) == ErrorCode::Gap);
  CHECK(code_of([] {
          const std::vector<RawMeasurement> m{at(kT0, minutes(0), 1),
                                              at(kT0, minutes(9), 1)};
          resample_uniform(m, Seconds(0));
        }) == ErrorCode::InvalidParameter);
}

TEST_CASE("resample_uniform honours an analysis window") {
  std::vector<RawMeasurement> m;
  for (int i = 0; i <= 100; ++i) m.push_back(at(kT0, minutes(3 * i), i));
  ResampleOptions opt;
  opt.start = kT0 + minutes(30);
  opt.end = kT0 + minutes(60);
  const auto s = resample_uniform(m, opt);
  CHECK(s.values == std::vector<double>{10, 11, 12, 13, 14, 15, 16, 17, 18, 19});

  opt.start = kT0 - minutes(3);
  CHECK(code_of([&] { resample_uniform(m, opt); }) == ErrorCode::InsufficientData);
  opt.start = kT0;
  opt.end = kT0 + hours(6);
  CHECK(code_of([&] { resample_uniform(m, opt); }) == ErrorCode::InsufficientData);

  // A gap outside the window does not matter.
  std::vector<RawMeasurement> gappy{at(kT0, minutes(0), 0), at(kT0, hours(5), 0)};
  for (int i = 0; i < 20; ++i) gappy.push_back(at(kT0, hours(6) + minutes(3 * i), 1));
  opt.start = kT0 + hours(6);
  opt.end = kT0 + hours(6) + minutes(30);
  CHECK(resample_uniform(gappy, opt).values.size() == 10);
  opt.start = kT0;
  CHECK(code_of([&] { resample_uniform(gappy, opt); }) == ErrorCode::Gap);
}

namespace {

CarrierSeries make_series(std::vector<double> values, Seconds interval = minutes(3)) {
  CarrierSeries s;
  s.carrier_id = "C1";
  s.grid = {kT0, interval};
  s.values = std::move(values);
  return s;
}

}  // namespace

TEST_CASE("gaussian_detrend kills constants") {
  for (double c : {0.0, 5.0, -17.25, 53.123456789}) {
    const auto e = gaussian_detrend(make_series(std::vector<double>(500, c)), hours(6));
    for (double v : e.values) CHECK(std::abs(v) <= 1e-12);
  }
}

TEST_CASE("gaussian_detrend is shift invariant") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(40, 2);
  std::vector<double> x(700);
  for (auto& v : x) v = g(rng);
  const auto base = gaussian_detrend(make_series(x), hours(6));
  for (double c : {1.0, -30.0, 1000.0}) {
    auto shifted = x;
    for (auto& v : shifted) v += c;
    const auto e = gaussian_detrend(make_series(shifted), hours(6));
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(std::abs(e.values[i] - base.values[i]) <= 1e-9);
    }
  }
}

TEST_CASE("gaussian_detrend matches the brute-force weighted average") {
  SUBCASE("24 h slow ramp") {
    std::vector<double> x(480);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = 40.0 + 0.01 * static_cast<double>(i) +
             0.3 * std::sin(static_cast<double>(i) / 40.0);
    }
    const auto e = gaussian_detrend(make_series(x), hours(6));
    const auto ref = oracle::detrend(x, 180.0, 6 * 3600.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      worst = std::max(worst, std::abs(e.values[i] - ref[i]));
    }
    CHECK(worst < 1e-10);
  }
  SUBCASE("longer than the kernel reach, noisy") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0, 1);
    std::vector<double> x(1500);
    for (auto& v : x) v = 45 + g(rng);
    const auto e = gaussian_detrend(make_series(x), hours(2));
    const auto ref = oracle::detrend(x, 180.0, 2 * 3600.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(std::abs(e.values[i] - ref[i]) < 1e-10);
    }
  }
  SUBCASE("a linear trend is removed away from the edges") {
    std::vector<double> x(2000);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.02 * static_cast<double>(i);
    const auto e = gaussian_detrend(make_series(x), hours(1));
    for (std::size_t i = 100; i < 1900; ++i) CHECK(std::abs(e.values[i]) < 1e-9);
  }
}

TEST_CASE("gaussian_detrend errors and metadata") {
  CHECK(code_of([] { gaussian_detrend(make_series({1, 2, 3}), Seconds(0)); }) ==
        ErrorCode::InvalidParameter);
  CHECK(code_of([] { gaussian_detrend(make_series({1}), hours(6)); }) ==
        ErrorCode::InsufficientData);
  auto s = make_series({1, 2, 3, 4});
  s.antenna_id = "A1";
  const auto e = gaussian_detrend(s, hours(6));
  CHECK(e.values.size() == 4);
  CHECK(e.antenna_id == std::optional<std::string>("A1"));
  CHECK(e.grid.start == s.grid.start);
}
