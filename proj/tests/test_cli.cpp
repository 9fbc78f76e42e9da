#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "relent/cli.hpp"
#include "relent/measures.hpp"

using namespace relent;
using namespace relent::cli;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "relent");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t column(const Table& t, const std::string& name) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), name);
  REQUIRE(it != t.columns.end());
  return static_cast<std::size_t>(it - t.columns.begin());
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("number formatting") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.25) == "-0.25");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(1e-20) == "1e-20");
  }

  TEST_CASE("angle parsing") {
    CHECK(parse_angle("0") == 0.0);
    CHECK(parse_angle("0.5") == 0.5);
    CHECK(parse_angle("pi") == doctest::Approx(std::numbers::pi));
    CHECK(parse_angle("pi/4") == doctest::Approx(std::numbers::pi / 4));
    CHECK(parse_angle("3pi/8") == doctest::Approx(3 * std::numbers::pi / 8));
    CHECK(parse_angle("-pi") == doctest::Approx(-std::numbers::pi));
    const auto list = parse_angle_list("0,pi/4,pi/2");
    REQUIRE(list.size() == 3);
    CHECK(list[2] == doctest::Approx(std::numbers::pi / 2));
    CHECK_THROWS(parse_angle("pie"));
    CHECK_THROWS(parse_angle("pi/0"));
    CHECK_THROWS(parse_angle(""));
  }

  TEST_CASE("tables serialise to CSV and JSON") {
    const Table t{{"a", "b"}, {{1.0, 0.5}, {std::nan(""), -2.0}}};
    CHECK(to_csv(t) == "a,b\n1,0.5\nnan,-2\n");
    const Json j = to_json(t);
    CHECK(j["columns"] == Json::array({"a", "b"}));
    REQUIRE(j["rows"].size() == 2);
    CHECK(j["rows"][0]["b"] == 0.5);
    CHECK(j["rows"][1]["a"].is_null());
  }

  TEST_CASE("fig1 table") {
    RunConfig config;
    config.grid = 20;
    const Table t = fig1_table(config);
    CHECK(t.columns == std::vector<std::string>{"theta", "x", "y", "physical", "positivity_min", "ppt_min_rest",
                                                "ppt_min_boosted", "separable_rest", "separable_boosted"});
    CHECK(t.rows.size() == 3 * 20 * 20);
    const std::size_t th = column(t, "theta"), phys = column(t, "physical"), sr = column(t, "separable_rest"),
                      sb = column(t, "separable_boosted"), pr = column(t, "ppt_min_rest"),
                      pb = column(t, "ppt_min_boosted");
    CHECK(t.rows.front()[th] == 0.0);
    CHECK(t.rows.back()[th] == doctest::Approx(std::numbers::pi / 2));

    // grouped by theta, one block of n x n rows per angle
    std::map<std::pair<double, double>, bool> sep0, sep_quarter;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const auto& row = t.rows[r];
      CHECK(row[th] == t.rows[(r / 400) * 400][th]);
      if (row[phys] == 0.0) {
        CHECK(std::isnan(row[pr]));
        continue;
      }
      const std::pair<double, double> key{row[1], row[2]};
      if (row[th] == 0.0) {
        sep0[key] = row[sb] == 1.0;
        CHECK(row[sb] == row[sr]);
        CHECK(row[pb] == doctest::Approx(row[pr]).epsilon(1e-12));
      } else if (std::abs(row[th] - std::numbers::pi / 4) < 1e-12) {
        sep_quarter[key] = row[sb] == 1.0;
      } else {
        CHECK(row[sb] == 1.0);
      }
    }
    CHECK(!sep0.empty());
    for (const auto& [key, s] : sep0)
      if (s) CHECK(sep_quarter.at(key));
  }

  TEST_CASE("fig1 sorts requested angles and validates the grid") {
    RunConfig config;
    config.grid = 4;
    config.thetas = {std::numbers::pi / 2, 0.0};
    const Table t = fig1_table(config);
    CHECK(t.rows.front()[0] == 0.0);
    CHECK(t.rows.size() == 2 * 16);
    config.grid = 1;
    CHECK_THROWS(fig1_table(config));
  }

  TEST_CASE("fig2 table") {
    RunConfig config;
    const Table t = fig2_table(config);
    CHECK(t.columns == std::vector<std::string>{"omega", "closed_form", "radicand_ok", "oracle_rest_witness",
                                                "oracle_rebuilt_witness"});
    REQUIRE(t.rows.size() == 181);
    CHECK(t.rows.front()[1] == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    CHECK(t.rows.back()[0] == doctest::Approx(std::numbers::pi / 2));
    for (std::size_t r = 1; r < t.rows.size(); ++r) {
      CHECK(t.rows[r][1] >= t.rows[r - 1][1] - 1e-12);
      CHECK(t.rows[r][2] == 1.0);
      CHECK(t.rows[r][4] == doctest::Approx(-1.0 / 3.0).epsilon(1e-10));
    }

    config.weights = {0.25, 0.25, 0.25, 0.25};
    config.grid = 11;
    config.omega_max = 1.0;
    const Table u = fig2_table(config);
    CHECK(u.rows.back()[2] == 0.0);
    CHECK(std::isnan(u.rows.back()[1]));
  }

  TEST_CASE("verify classifies every check") {
    const VerifyReport report = run_verify(RunConfig{});
    CHECK_FALSE(report.has_unexpected_mismatch());
    const auto& known = known_discrepancy_ids();
    for (const auto& c : report.checks) {
      const bool whitelisted = std::find(known.begin(), known.end(), c.id) != known.end();
      CHECK_MESSAGE(c.status != CheckStatus::Mismatch, c.id);
      if (c.status == CheckStatus::KnownPaperDiscrepancy) CHECK_MESSAGE(whitelisted, c.id);
    }
    const VerifyCheck* endpoint = report.find("spin1_boosted_endpoint");
    REQUIRE(endpoint != nullptr);
    CHECK(endpoint->status == CheckStatus::KnownPaperDiscrepancy);
    CHECK(endpoint->reference == doctest::Approx(-std::numbers::sqrt3 / 2).epsilon(1e-12));
    const VerifyCheck* distance = report.find("nearest_separable_distance");
    REQUIRE(distance != nullptr);
    CHECK(distance->status == CheckStatus::KnownPaperDiscrepancy);
    CHECK(report.find("bd_rest_trace")->status == CheckStatus::Match);
    CHECK(report.find("no_such_check") == nullptr);

    const Json j = report.to_json();
    CHECK(j["checks"].size() == report.checks.size());
    CHECK(report.to_table().rows.size() == report.checks.size());
  }

  TEST_CASE("point reports") {
    RunConfig config;
    config.command = "point";
    config.weights = {1, 0, 0, 0};
    Json j = point_report(config);
    CHECK(j["concurrence"].get<double>() == doctest::Approx(1.0));
    CHECK(j["trace"]["oracle"].get<double>() == doctest::Approx(-1.0));
    CHECK(j["trace"]["closed_form_rest"].get<double>() == doctest::Approx(-1.0));

    config.weights = {0.25, 0.25, 0.25, 0.25};
    for (double om : {0.0, 0.7, 1.4}) {
      config.omega = om;
      j = point_report(config);
      CHECK(j["concurrence"].get<double>() == 0.0);
      CHECK(j["trace"]["oracle"].get<double>() == doctest::Approx(0.5));
    }
    CHECK(j["trace"]["closed_form_boosted"].is_null());

    config.family = "spin1";
    config.xy = {0.0, 1.0};
    config.theta = std::numbers::pi / 2;
    j = point_report(config);
    CHECK(j["ppt"]["is_ppt"].get<bool>());
    CHECK(std::abs(j["trace"]["oracle"].get<double>()) < 1e-12);
    CHECK_FALSE(j.contains("concurrence"));

    config.xy = {0.8, 0.8};
    CHECK_THROWS_AS(point_report(config), InvalidStateError);
  }

  TEST_CASE("exit codes") {
    CHECK(invoke({"--help"}).code == 0);
    CHECK(invoke({"verify"}).code == 0);
    CHECK(invoke({}).code == 1);
    CHECK(invoke({"fig1", "--grid", "1"}).code == 1);
    CHECK(invoke({"fig2", "--format", "xml"}).code == 1);
    CHECK(invoke({"point", "--format", "csv"}).code == 1);
    const Outcome bad = invoke({"point", "--weights", "1,1,0,0"});
    CHECK(bad.code == 1);
    CHECK(bad.err.rfind("error: ", 0) == 0);
    CHECK(invoke({"point", "--theta", "pi/4,pi/2", "--family", "spin1"}).code == 1);
    CHECK(invoke({"fig1", "--theta", "pie"}).code == 1);
  }

  TEST_CASE("output is deterministic and honours --out and --format") {
    const Outcome a = invoke({"fig1", "--grid", "8", "--theta", "0,pi/4"});
    const Outcome b = invoke({"fig1", "--grid", "8", "--theta", "0,pi/4"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("theta,x,y,", 0) == 0);

    const Outcome j = invoke({"fig2", "--grid", "5", "--format", "json"});
    CHECK(Json::parse(j.out)["rows"].size() == 5);

    const auto path = std::filesystem::temp_directory_path() / "relent_cli_test.csv";
    const Outcome f = invoke({"fig2", "--grid", "5", "--out", path.string()});
    CHECK(f.code == 0);
    CHECK(f.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == invoke({"fig2", "--grid", "5"}).out);
    std::filesystem::remove(path);

    const Outcome p1 = invoke({"point", "--family", "spin1", "--xy", "0.2,0.3", "--theta", "pi/4", "--seed", "4"});
    const Outcome p2 = invoke({"point", "--family", "spin1", "--xy", "0.2,0.3", "--theta", "pi/4", "--seed", "4"});
    CHECK(p1.out == p2.out);
    CHECK(Json::parse(p1.out)["trace"].contains("closed_form_quarter"));
  }
}
