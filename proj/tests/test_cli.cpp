#include <cstdlib>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "carriersig/error.hpp"
#include "carriersig/io.hpp"
#include "cli_util.hpp"

using namespace carriersig;
using Json = nlohmann::json;

namespace {

// Small fleet, three days.
void simulate(const TempDir& dir, const std::string& seed = "7") {
  const auto r = run_cli({"simulate", "--output-dir", dir.file(""), "--days", "3",
                          "--seed", seed, "--set", "census=1:2,2:2,3:1"});
  REQUIRE(r.status == 0);
}

}  // namespace

TEST_CASE("simulate -> signatures -> distances -> evaluate") {
  TempDir dir;
  simulate(dir);
  auto r = run_cli({"signatures", "--measurements", dir.file("measurements.csv"), "-o",
                    dir.file("sig.csv")});
  REQUIRE(r.status == 0);
  std::istringstream sig_in(slurp(dir.file("sig.csv")));
  const auto sigs = read_signatures(sig_in);
  CHECK(sigs.size() == 9);
  for (const auto& s : sigs) CHECK(s.period_samples == 480);

  r = run_cli({"distances", "--signatures", dir.file("sig.csv"), "--carriers",
               dir.file("carriers.csv"), "-o", dir.file("dist.csv")});
  REQUIRE(r.status == 0);
  std::istringstream dist_in(slurp(dir.file("dist.csv")));
  CHECK(read_distances(dist_in).size() == 36);

  r = run_cli({"evaluate", "--distances", dir.file("dist.csv"), "--carriers",
               dir.file("carriers.csv"), "--histogram", dir.file("hist.csv")});
  REQUIRE(r.status == 0);
  const auto j = Json::parse(r.out);
  for (const char* key : {"F_s", "F_d", "p_id", "n_i", "n_f", "p_f", "p_f_exact"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["inputs"]["carriers"] == 9);
  CHECK(j["inputs"]["antennas"] == 5);
  CHECK(j["inputs"]["census_pairs"]["same"] == 5);
  CHECK(j["inputs"]["records"]["same"] == 5);
  CHECK(j["inputs"]["records"]["different"] == 31);
  CHECK(slurp(dir.file("hist.csv")).rfind("bin_lo,bin_hi,count_same,count_different\n", 0) == 0);
}

TEST_CASE("identify puts a duplicated carrier first at distance zero") {
  TempDir dir;
  simulate(dir);
  REQUIRE(run_cli({"signatures", "--measurements", dir.file("measurements.csv"), "-o",
                   dir.file("sig.csv")})
              .status == 0);
  // Copy C004's row under a new id.
  std::string text = slurp(dir.file("sig.csv"));
  const auto at = text.find("\nC004,");
  REQUIRE(at != std::string::npos);
  const auto end = text.find('\n', at + 1);
  text += "XDUP" + text.substr(at + 5, end - at - 5) + "\n";
  spit(dir.file("sig2.csv"), text);

  const auto r = run_cli({"identify", "--signatures", dir.file("sig2.csv"), "--interferer",
                          "XDUP", "--carriers", dir.file("carriers.csv")});
  REQUIRE(r.status == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["interferer"] == "XDUP");
  REQUIRE(j["ranking"].size() == 9);
  CHECK(j["ranking"][0]["carrier_id"] == "C004");
  CHECK(j["ranking"][0]["rank"] == 1);
  CHECK(j["ranking"][0]["distance"].get<double>() == 0.0);
  CHECK(j["ranking"][0]["in_result_set"] == true);
  CHECK(j["ranking"][1]["distance"].get<double>() >= j["ranking"][0]["distance"].get<double>());
  CHECK(j["ranking"][0]["antenna_id"].is_string());
  CHECK(j["result_set_size"].get<int>() >= 1);
}

TEST_CASE("evaluate with an explicit census reproduces the reference figures") {
  TempDir dir;
  spit(dir.file("d.csv"), dubai_distances_csv());
  const auto r = run_cli({"evaluate", "--distances", dir.file("d.csv"), "--census",
                          "1:27,2:1,3:1,6:2,9:1"});
  REQUIRE(r.status == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["inputs"]["antennas"] == 32);
  CHECK(j["inputs"]["carriers"] == 53);
  CHECK(j["inputs"]["census_pairs"]["same"] == 70);
  CHECK(j["inputs"]["census_pairs"]["different"] == 1308);
  CHECK(j["F_s"].get<double>() == doctest::Approx(50.0 / 70).epsilon(1e-5));
  CHECK(j["p_id"].get<double>() == doctest::Approx(0.76).epsilon(0.01));
  CHECK(j["n_i"].get<double>() == doctest::Approx(1.18).epsilon(0.01));
  CHECK(j["n_f"].get<double>() == doctest::Approx(0.31).epsilon(0.02));
  CHECK(j["p_f"].get<double>() == doctest::Approx(0.32).epsilon(0.02));
  CHECK(j["p_f_exact"].get<double>() < j["p_f"].get<double>());
}

TEST_CASE("error exit statuses") {
  TempDir dir;
  simulate(dir);
  REQUIRE(run_cli({"signatures", "--measurements", dir.file("measurements.csv"), "-o",
                   dir.file("sig.csv")})
              .status == 0);

  SUBCASE("unknown interferer") {
    const auto r = run_cli({"identify", "--signatures", dir.file("sig.csv"),
                            "--interferer", "NOPE"});
    CHECK(r.status == exit_status(ErrorCode::UnknownCarrier));
    CHECK(r.err.find("NOPE") != std::string::npos);
  }
  SUBCASE("distance carrier missing from the carriers file") {
    spit(dir.file("c.csv"), "carrier_id,antenna_id\nC001,A001\n");
    REQUIRE(run_cli({"distances", "--signatures", dir.file("sig.csv"), "-o",
                     dir.file("d.csv")})
                .status == 0);
    const auto r = run_cli({"evaluate", "--distances", dir.file("d.csv"), "--carriers",
                            dir.file("c.csv")});
    CHECK(r.status == exit_status(ErrorCode::UnknownCarrier));
  }
  SUBCASE("malformed CSV") {
    spit(dir.file("bad.csv"), "carrier_id,timestamp,eirp_dbw\nC1,yesterday,4\n");
    const auto r = run_cli({"signatures", "--measurements", dir.file("bad.csv")});
    CHECK(r.status == exit_status(ErrorCode::MalformedInput));
  }
  SUBCASE("a single period is not enough") {
    const auto r = run_cli({"signatures", "--measurements", dir.file("measurements.csv"),
                            "--duration-hours", "24"});
    CHECK(r.status == exit_status(ErrorCode::InsufficientData));
  }
  SUBCASE("missing file") {
    const auto r = run_cli({"signatures", "--measurements", dir.file("none.csv")});
    CHECK(r.status == exit_status(ErrorCode::Io));
  }
  SUBCASE("period not a multiple of the interval") {
    const auto r = run_cli({"signatures", "--measurements", dir.file("measurements.csv"),
                            "--period-hours", "0.01"});
    CHECK(r.status == exit_status(ErrorCode::InvalidParameter));
  }
  SUBCASE("usage errors") {
    CHECK(run_cli({}).status == 2);
    CHECK(run_cli({"evaluate"}).status == 2);
    CHECK(run_cli({"signatures", "--measurements", "x", "--encoding", "cubic"}).status == 2);
    CHECK(run_cli({"--help"}).status == 0);
  }
  SUBCASE("evaluate without a census source") {
    REQUIRE(run_cli({"distances", "--signatures", dir.file("sig.csv"), "-o",
                     dir.file("d.csv")})
                .status == 0);
    CHECK(run_cli({"evaluate", "--distances", dir.file("d.csv")}).status ==
          exit_status(ErrorCode::InvalidParameter));
  }
}

TEST_CASE("reruns are byte-identical") {
  TempDir a, b;
  simulate(a, "11");
  simulate(b, "11");
  CHECK(slurp(a.file("measurements.csv")) == slurp(b.file("measurements.csv")));
  CHECK(slurp(a.file("carriers.csv")) == slurp(b.file("carriers.csv")));
  for (const auto* d : {&a, &b}) {
    REQUIRE(run_cli({"signatures", "--measurements", d->file("measurements.csv"), "-o",
                     d->file("sig.csv")})
                .status == 0);
  }
  CHECK(slurp(a.file("sig.csv")) == slurp(b.file("sig.csv")));

  TempDir c;
  simulate(c, "12");
  CHECK(slurp(a.file("measurements.csv")) != slurp(c.file("measurements.csv")));
}

TEST_CASE("the installed binary runs") {
  TempDir dir;
  const std::string cmd = std::string(CARRIERSIG_CLI_PATH) + " simulate --days 2 --output-dir " +
                          dir.file("") + " --set census=1:2 > /dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  const std::string bad = std::string(CARRIERSIG_CLI_PATH) +
                          " identify --signatures " + dir.file("none.csv") +
                          " --interferer X > /dev/null 2>&1";
  const int st = std::system(bad.c_str());
  CHECK(WIFEXITED(st));
  CHECK(WEXITSTATUS(st) == exit_status(ErrorCode::Io));
}
