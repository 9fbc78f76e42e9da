#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "oracles.hpp"
#include "relent/cli.hpp"
#include "relent/kinematics.hpp"
#include "relent/measures.hpp"
#include "relent/witness.hpp"

using namespace relent;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

const BellWeights kFig2{2.0 / 3.0, 0.0, 1.0 / 8.0, 5.0 / 24.0};

std::vector<SpinOneWeights> triangle(int n) {
  std::vector<SpinOneWeights> pts;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const SpinOneWeights w{-0.25 + 1.25 * i / (n - 1), -0.25 + 1.25 * j / (n - 1)};
      if (w.is_physical()) pts.push_back(w);
    }
  return pts;
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Outcome concurrence_identity() {
  std::mt19937_64 rng(2024);
  int entangled = 0, other = 0;
  double worst = 0.0;
  bool ok = true;
  while (entangled < 500) {
    const BellWeights w = oracle::random_bell(rng);
    const auto p = w.as_array();
    const double c = concurrence(rho_bd(w));
    if (*std::max_element(p.begin(), p.end()) > 0.5) {
      ++entangled;
      worst = std::max(worst, std::abs(c + trace_bd_rest(w)));
    } else {
      ++other;
      ok = ok && c == 0.0 && trace_bd_rest(w) >= 0.0;
    }
  }
  return {ok && worst < 1e-9 && other > 0,
          fmt("max |C + Tr| = %.2e over 500 entangled draws", worst) + ", " + std::to_string(other) + " separable draws"};
}

Outcome fig2_anchor() {
  const double start = trace_bd_boosted(kFig2, 0.0);
  int violations = 0;
  double prev = start;
  for (int k = 1; k <= 180; ++k) {
    const double v = trace_bd_boosted(kFig2, std::numbers::pi / 2 * k / 180.0);
    if (v < prev) ++violations;
    prev = v;
  }
  return {std::abs(start + 1.0 / 3.0) < 1e-12 && violations == 0,
          fmt("trace(0) = %.15f, %g ordering violations on 181 points", start, violations)};
}

Outcome zero_angle_reduction() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const BellWeights w = oracle::random_bell(rng);
    const auto s = bell_signed_sums(w);
    worst = std::max(worst, std::abs(trace_bd_boosted(w, 0.0) -
                                     0.5 * (1.0 - std::abs(s.a) - std::abs(s.b) - std::abs(s.c))));
  }
  return {worst < 1e-10, fmt("max deviation %.2e over 200 weight vectors", worst)};
}

Outcome spin1_spectra() {
  double worst = 0.0;
  const auto pts = triangle(60);
  for (const auto& w : pts) {
    const ComplexMatrix rho = rho_spin1(w).mat();
    worst = std::max(worst, oracle::max_diff(spin1_ppt_eigs_rest(w).multiset(),
                                             oracle::eigenvalues(oracle::partial_transpose_a(rho, 2, 3))));
    worst = std::max(worst, oracle::max_diff(spin1_positivity_eigs(w).multiset(), oracle::eigenvalues(rho)));
  }
  return {worst < 1e-12, fmt("max deviation %.2e on %g grid points", worst, static_cast<double>(pts.size()))};
}

Outcome spin1_endpoints() {
  const DensityMatrix corner = rho_spin1({0.0, 1.0});
  const double rest = expectation(build_witness(corner), corner);
  const double t0 = trace_pure_theta(0.0), t4 = trace_pure_theta(std::numbers::pi / 4),
               t2 = trace_pure_theta(std::numbers::pi / 2);
  const double ppt_min = ppt_report(boost_spin_one(corner, std::numbers::pi / 2)).min_eigenvalue;
  const bool ok = std::abs(rest + 1.0) < 1e-12 && std::abs(t0 + 1.0) < 1e-12 &&
                  std::abs(t4 + std::numbers::sqrt3 / 2) < 1e-12 && std::abs(t2) < 1e-12 && ppt_min >= -1e-10;
  return {ok, fmt("Tr(W rho) = %.15f, boosted PT min %.2e", rest, ppt_min)};
}

Outcome witness_validity() {
  std::mt19937_64 rng(11);
  double worst = 1e300;
  for (int k = 0; k < 50; ++k) {
    worst = std::min(worst, min_over_separable(build_witness(rho_bd(oracle::random_bell(rng))), 10000, 24).value);
    worst = std::min(worst, min_over_separable(build_witness(rho_spin1(oracle::random_xy(rng))), 10000, 24).value);
  }
  return {worst >= -1e-7, fmt("lowest product-state trace %.2e over 100 witnesses", worst)};
}

Outcome region_shrinkage() {
  cli::RunConfig config;
  config.grid = 60;
  const cli::Table t = cli::fig1_table(config);
  std::map<std::pair<double, double>, std::map<int, bool>> flags;
  for (const auto& row : t.rows) {
    if (row[3] == 0.0) continue;
    const int idx = static_cast<int>(std::lround(row[0] / (std::numbers::pi / 4)));
    flags[{row[1], row[2]}][idx] = row[8] == 1.0;
  }
  int violations = 0;
  for (const auto& [key, f] : flags) {
    if (f.at(0) && !f.at(1)) ++violations;
    if (!f.at(2)) ++violations;
  }
  return {violations == 0 && !flags.empty(),
          fmt("%g physical points, %g violations", static_cast<double>(flags.size()), violations)};
}

Outcome unitarity_consistency() {
  double unitarity = 0.0, spectrum = 0.0, wigner = 0.0;
  std::mt19937_64 rng(13);
  for (int k = 0; k < 50; ++k) {
    const double a = 2.0 * std::numbers::pi * (oracle::unit_draw(rng) - 0.5);
    for (const ComplexMatrix& u : {spin_half_boost_operator(a, SpinHalfAxes::Shared),
                                   spin_half_boost_operator(a, SpinHalfAxes::Opposite), spin_one_boost_operator(a)})
      unitarity = std::max(unitarity, max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(u.dim())));
    const DensityMatrix bd = rho_bd(oracle::random_bell(rng));
    const DensityMatrix b = boost_spin_half(bd, a);
    spectrum = std::max({spectrum, oracle::max_diff(b.eigenvalues(), bd.eigenvalues()),
                         std::abs(b.mat().trace() - 1.0)});
    const DensityMatrix s1 = rho_spin1(oracle::random_xy(rng));
    const DensityMatrix s = boost_spin_one(s1, a);
    spectrum = std::max({spectrum, oracle::max_diff(s.eigenvalues(), s1.eigenvalues()),
                         std::abs(s.mat().trace() - 1.0)});
  }
  for (double beta : {0.1, 0.3, 0.5, 0.7, 0.9, 0.95})
    for (double em : {1.05, 1.5, 2.0, 5.0, 10.0}) {
      BoostContext ctx;
      ctx.beta = beta;
      ctx.momentum_mag = std::sqrt(em * em - 1.0);
      wigner = std::max(wigner, std::abs(wigner_angle(ctx).omega -
                                         oracle::composition_rotation(beta, 1.0, ctx.momentum_mag, ctx.e_hat,
                                                                      ctx.p_hat).omega));
    }
  return {unitarity < 1e-12 && spectrum < 1e-10 && wigner < 1e-9,
          fmt("unitarity %.2e, spectrum/trace %.2e", unitarity, spectrum) + fmt(", Wigner angle %.2e", wigner)};
}

Outcome discrepancy_ledger() {
  const cli::VerifyReport report = cli::run_verify(cli::RunConfig{});
  bool ok = !report.has_unexpected_mismatch();
  std::string detail;
  for (const char* id : {"spin1_boosted_endpoint", "nearest_separable_distance"}) {
    const cli::VerifyCheck* c = report.find(id);
    ok = ok && c && c->status == cli::CheckStatus::KnownPaperDiscrepancy && std::isfinite(c->reference);
    if (c) detail += std::string(id) + fmt(" computed %.6f vs quoted %.6f; ", c->value, c->reference);
  }
  int matches = 0;
  for (const auto& c : report.checks) matches += c.status == cli::CheckStatus::Match;
  return {ok, detail + std::to_string(matches) + "/" + std::to_string(report.checks.size()) + " checks match"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 concurrence identity", concurrence_identity},
      {"AC2 Bell-diagonal anchor and ordering", fig2_anchor},
      {"AC3 zero-angle reduction", zero_angle_reduction},
      {"AC4 spin-1 spectra", spin1_spectra},
      {"AC5 spin-1 endpoints", spin1_endpoints},
      {"AC6 witness validity", witness_validity},
      {"AC7 region shrinkage", region_shrinkage},
      {"AC8 unitarity and Wigner angle", unitarity_consistency},
      {"AC9 known-discrepancy ledger", discrepancy_ledger},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
