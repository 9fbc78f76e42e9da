#pragma once

// Entanglement measures that do not go through the witness pipeline.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "relent/matcore.hpp"
#include "relent/states.hpp"

namespace relent {

/// Wootters concurrence of a two-qubit state. The eigenvalues of
/// rho (sy x sy) rho* (sy x sy) are taken from the Hermitian matrix
/// sqrt(rho) (sy x sy) rho* (sy x sy) sqrt(rho), which has the same spectrum.
double concurrence(const DensityMatrix& rho);

inline constexpr double kPptThreshold = -1e-10;

struct PptReport {
  double min_eigenvalue = 0.0;
  std::vector<double> eigenvalues;  // ascending
  bool is_ppt = true;
};

/// Spectrum of the partial transpose on the first party.
PptReport ppt_report(const DensityMatrix& rho);
PptReport ppt_report(const ComplexMatrix& m, BipartiteDims dims);

struct SpinOneRestPptEigs {
  double l1 = 0.0;  // (1 + 2x - 4y)/6
  double l2 = 0.0;  // (1 - x - y)/6, twice
  double l3 = 0.0;  // (1 - 4x + 2y)/6
  double l4 = 0.0;  // (1 + 2x + 2y)/6, twice

  /// All six values in ascending order.
  std::vector<double> multiset() const;
};
SpinOneRestPptEigs spin1_ppt_eigs_rest(const SpinOneWeights& w);

struct SpinOnePositivityEigs {
  double common = 0.0;  // (1 - x - y)/6, four times
  double e5 = 0.0;      // (1 + 5x - y)/6
  double e6 = 0.0;      // (1 - x + 5y)/6

  std::vector<double> multiset() const;
};
SpinOnePositivityEigs spin1_positivity_eigs(const SpinOneWeights& w);

struct BoostedQuarterEigs {
  /// tau1, (2 - 2x + 4y +- 3 sqrt(3x^2 + y^2))/12, (2 + 4x - 2y +- 3 sqrt(x^2 + 3y^2))/12.
  std::array<double, 5> printed{};
  std::vector<double> expanded;  // printed values with tau1 twice, ascending
  std::vector<double> numeric;   // PT spectrum of the state boosted by pi/4, ascending
  double max_residual = 0.0;
};

/// Pairs the printed expressions with the numeric spectrum. In one
/// dimension nearest-value matching is sorted order.
BoostedQuarterEigs spin1_ppt_eigs_boosted_quarter(const SpinOneWeights& w);

enum class SeparableFamily {
  XyTriangle,       // rho1(x, y) with every rest-frame PT eigenvalue >= 0
  ProductMixtures,  // convex hulls of at most kMaxAtoms pure product states
};

inline constexpr std::size_t kMaxAtoms = 12;

struct NearestSeparable {
  ComplexMatrix state;
  double distance_sq = 0.0;
  std::optional<SpinOneWeights> xy;  // set for XyTriangle
  std::size_t atoms = 0;             // set for ProductMixtures
};

/// Hilbert-Schmidt nearest separable state within a family. XyTriangle is
/// solved exactly (convex quadratic over a polygon) and needs a 2x3 input.
/// ProductMixtures runs `budget` fully-corrective Frank-Wolfe steps whose
/// linear step is the product-state minimiser; the best iterate is kept, so
/// the distance never increases with the budget.
NearestSeparable nearest_separable(const DensityMatrix& rho,
                                   SeparableFamily family = SeparableFamily::XyTriangle,
                                   std::size_t budget = 60, std::uint64_t seed = 1);

}  // namespace relent
