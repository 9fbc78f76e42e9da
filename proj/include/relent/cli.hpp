#pragma once

// Sweeps, verification report and single-point queries behind the relent
// command-line tool.

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "relent/states.hpp"
#include "relent/witness.hpp"

namespace relent::cli {

using Json = nlohmann::ordered_json;

enum class Format { Csv, Json };

struct RunConfig {
  std::string command;
  std::optional<std::size_t> grid;  // fig1: n x n (default 60); fig2: points (default 181)
  std::vector<double> thetas{0.0, std::numbers::pi / 4, std::numbers::pi / 2};
  double omega_max = std::numbers::pi / 2;
  BellWeights weights{2.0 / 3.0, 0.0, 1.0 / 8.0, 5.0 / 24.0};
  SpinOneWeights xy{0.0, 1.0};
  std::string family = "bd";
  double omega = 0.0;  // point, bd
  double theta = 0.0;  // point, spin1
  std::uint64_t seed = 1;
  WitnessFrame frame = WitnessFrame::Boosted;
  std::string out;  // empty writes to stdout
  std::optional<Format> format;
};

/// Column-named numeric table; booleans are stored as 0/1.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// 12 significant digits, "nan" for NaN, locale independent.
std::string format_number(double v);

std::string to_csv(const Table& t);
Json to_json(const Table& t);

/// (theta, x, y, physical, positivity_min, ppt_min_rest, ppt_min_boosted,
///  separable_rest, separable_boosted), x and y on [-1/4, 1].
Table fig1_table(const RunConfig& config);

/// (omega, closed_form, radicand_ok, oracle_rest_witness, oracle_rebuilt_witness).
Table fig2_table(const RunConfig& config);

enum class CheckStatus { Match, Mismatch, KnownPaperDiscrepancy };
std::string to_string(CheckStatus s);

struct VerifyCheck {
  std::string id;
  std::string description;
  CheckStatus status = CheckStatus::Match;
  double value = 0.0;      // computed by the closed form or the quantity under test
  double reference = 0.0;  // oracle or quoted value
  double residual = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool has_unexpected_mismatch() const;
  const VerifyCheck* find(const std::string& id) const;
  Json to_json() const;
  Table to_table() const;
};

/// Ids allowed to end up as known-paper-discrepancy.
const std::vector<std::string>& known_discrepancy_ids();

VerifyReport run_verify(const RunConfig& config);

/// Every quantity for one state; throws InvalidStateError on bad parameters.
Json point_report(const RunConfig& config);

/// Parses argv, runs the command and writes the output. Returns 0 on
/// success, 1 on usage errors, 2 when verify finds an unexpected mismatch.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Comma separated angles; each item is a number or a multiple of pi such
/// as "pi/4" or "3pi/8".
std::vector<double> parse_angle_list(const std::string& text);
double parse_angle(const std::string& text);

}  // namespace relent::cli
