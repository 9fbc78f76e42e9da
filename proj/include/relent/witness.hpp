#pragma once

// Nonlinear entanglement witnesses built from a state's moment matrix.
//
// For local operator bases {O_i}, {Q_j} the moment matrix is
// R_ij = Tr(rho O_i (x) Q_j). With Z = (R^dagger R)^{1/2} / 2 and
// A = -R Z^+ / 2 the witness W = I (x) I + sum_ij A_ij O_i (x) Q_j has
// Tr(W rho) = 1 - ||R||_1 (trace norm), and for every pure product state
// the moment matrix has trace norm 1, so Tr(W sigma) >= 0 on separable
// states whenever ||A||_op <= 1.

#include <cstdint>
#include <numbers>
#include <vector>

#include "relent/matcore.hpp"
#include "relent/product_search.hpp"
#include "relent/states.hpp"

namespace relent {

/// How the off-diagonal basis elements are read.
enum class BasisConvention {
  /// O3 = (|0><1| + |1><0|)/sqrt2, O4 = -i(|0><1| - |1><0|)/sqrt2, and the
  /// analogous symmetric / antisymmetric pairs for the qutrit. Hermitian
  /// and orthonormal under Tr(AB).
  OffDiagonal,
  /// O3 = (O1 + O2)/sqrt2, O4 = -i(O1 - O2)/sqrt2 taken literally: all
  /// elements diagonal, O4 and Q7..Q9 anti-Hermitian.
  AsPrinted,
};

struct OperatorBasis {
  std::size_t party_dim = 0;
  std::vector<ComplexMatrix> ops;
};

/// O1..O4 for a qubit.
OperatorBasis qubit_basis(BasisConvention convention = BasisConvention::OffDiagonal);
/// Q1..Q9 for a qutrit in the order {|1>, |0>, |-1>}.
OperatorBasis qutrit_basis(BasisConvention convention = BasisConvention::OffDiagonal);
/// qubit_basis for dim 2, qutrit_basis for dim 3.
OperatorBasis basis_for(std::size_t party_dim, BasisConvention convention = BasisConvention::OffDiagonal);

/// Dense rows x cols complex matrix for moment and coefficient matrices.
class CoefficientMatrix {
 public:
  CoefficientMatrix() = default;
  CoefficientMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// Largest |imaginary part| of any entry.
  double max_imag() const;
  double max_abs_diff(const CoefficientMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// R_ij = Tr(m . O_i (x) Q_j).
CoefficientMatrix moment_matrix(const ComplexMatrix& m, const OperatorBasis& basis_a,
                                const OperatorBasis& basis_b);
CoefficientMatrix moment_matrix(const DensityMatrix& rho, const OperatorBasis& basis_a,
                                const OperatorBasis& basis_b);

struct CoefficientSolution {
  CoefficientMatrix coeffs;  // A = -R Z^+ / 2
  ComplexMatrix z;           // (R^dagger R)^{1/2} / 2
  std::vector<double> singular_values;  // of R, descending
  std::size_t rank = 0;
  bool rank_deficient = false;
};

/// Z and A from a moment matrix. Z is assembled in the eigenbasis {v_k} of
/// R^dagger R with singular values s_k = |R v_k|, which is the PSD square
/// root without squaring rounding into the small singular values; Z^+
/// drops s_k <= 1e-12 max(1, s_max).
CoefficientSolution coefficients_from_moment(const CoefficientMatrix& rho_tilde);

struct WitnessOperator {
  ComplexMatrix mat;
  CoefficientMatrix coeffs;
  OperatorBasis basis_a;
  OperatorBasis basis_b;

  BipartiteDims dims() const { return {basis_a.party_dim, basis_b.party_dim}; }
};

/// W = I (x) I + sum A_ij O_i (x) Q_j. Throws NotHermitianError when the
/// result is not Hermitian within 1e-10.
WitnessOperator assemble_witness(const CoefficientMatrix& coeffs, const OperatorBasis& basis_a,
                                 const OperatorBasis& basis_b);

/// moment_matrix -> coefficients_from_moment -> assemble_witness.
WitnessOperator build_witness(const DensityMatrix& rho,
                              BasisConvention convention = BasisConvention::OffDiagonal);

/// Coefficients of (m - I) in the product basis. With an orthonormal
/// basis this inverts assemble_witness.
CoefficientMatrix expand_in_basis(const ComplexMatrix& m, const OperatorBasis& basis_a,
                                  const OperatorBasis& basis_b);

/// Tr(W rho). Throws NumericalError when the imaginary part exceeds 1e-10.
double expectation(const WitnessOperator& w, const DensityMatrix& rho);
double expectation(const ComplexMatrix& w, const ComplexMatrix& rho);

// ---------------------------------------------------------------------------
// Closed forms for the Bell-diagonal family.

/// The three signed sums a = P1+P2-P3-P4, b = P1-P2+P3-P4, c = P1-P2-P3+P4.
struct BellSignedSums {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  bool degenerate = false;  // any sum exactly zero
};
BellSignedSums bell_signed_sums(const BellWeights& w);

struct BellClosedCoefficients {
  CoefficientMatrix coeffs;  // 4x4, sgn(0) := +1
  bool degenerate = false;
};

/// A11 = A22 = (-sgn a - 1)/2, A12 = A21 = (sgn a - 1)/2, A33 = -sgn b,
/// A44 = sgn c; all other entries zero.
BellClosedCoefficients bd_closed_form_coeffs(const BellWeights& w);

/// (1 - |a| - |b| - |c|) / 2.
double trace_bd_rest(const BellWeights& w);

struct RadicandCheck {
  double minus = 0.0;  // B - 4 sqrt(C)
  double plus = 0.0;   // B + 4 sqrt(C)
  double c = 0.0;
  bool valid = true;
};

/// Radicands of the boosted closed form; values in [-1e-12, 0) count as 0.
RadicandCheck bd_boosted_radicands(const BellWeights& w, double omega);

/// A - (sqrt(B - 4 sqrt C) + sqrt(B + 4 sqrt C)) / 4 with
///   A = 1 - (|a| + |c|) cos(W) / 2
///   B = 8 (P1 P3 + P2 P4) cos^2 W - 2 (sum P_i^2)(cos 2W - 3)
///   C = 4 (P1+P3)^2 (P2+P4)^2 + 4 ((P1^2-P3^2)^2 + (P2^2+P4^2)^2) sin^2 W
///       + 4 (P1-P3)^2 (P2-P4)^2 sin^4(2W)
/// evaluated as written. Throws NumericalError on a negative radicand.
double trace_bd_boosted(const BellWeights& w, double omega);

/// Which witness is applied to a boosted state.
enum class WitnessFrame {
  Rest,     // built once from the unboosted state
  Boosted,  // rebuilt from the boosted state
};

struct TraceComparison {
  double closed_form = 0.0;
  bool closed_form_valid = true;
  double oracle = 0.0;
  double residual = 0.0;  // |closed_form - oracle|, NaN when closed form invalid
};

/// Closed form next to Tr(W rho^Lambda) from full matrix algebra.
TraceComparison compare_bd_boosted(const BellWeights& w, double omega, WitnessFrame frame,
                                   SpinHalfAxes axes = SpinHalfAxes::Shared);

// ---------------------------------------------------------------------------
// Closed forms for the spin-1 family.

/// Coefficients as printed: A11 = A23, A12 = A22, A13 = A21, A35 = A48 = -1.
CoefficientMatrix spin1_coeffs(const SpinOneWeights& w);

/// (6 - 6|x-y| - 3|x+y| - sqrt(6 + 3(x+y)^2)) / 6.
double trace_spin1_rest(const SpinOneWeights& w);

/// The printed boosted expression (theta = pi/4):
/// 1 - sqrt3/4 (|x-y| + |x+y| + sqrt(B - 2 sqrt A) + sqrt(B + 2 sqrt A)).
/// Throws NumericalError on a negative radicand.
double trace_spin1_boosted_formula(const SpinOneWeights& w);

/// Angle at which the printed boosted spin-1 expressions apply.
inline constexpr double kQuarterTheta = std::numbers::pi / 4;

struct SpinOneBoostedTrace {
  double formula = 0.0;  // printed expression, NaN when invalid
  bool formula_valid = true;
  double oracle = 0.0;   // Tr(W rho^Lambda) at theta = pi/4
  double residual = 0.0;
};

SpinOneBoostedTrace trace_spin1_boosted(const SpinOneWeights& w,
                                        WitnessFrame frame = WitnessFrame::Boosted);

/// -cos(theta) sqrt(6 - 2 cos 2theta) / 2.
double trace_pure_theta(double theta);

// ---------------------------------------------------------------------------

struct SeparableMinimum {
  double value = 0.0;
  ProductState argmin;
};

/// Lowest Tr(W |ab><ab|) found over pure product states; see
/// minimize_product_expectation for the search schedule.
SeparableMinimum min_over_separable(const WitnessOperator& w, std::size_t samples,
                                    std::size_t refine_steps, std::uint64_t seed = 1);
SeparableMinimum min_over_separable(const ComplexMatrix& w, BipartiteDims dims, std::size_t samples,
                                    std::size_t refine_steps, std::uint64_t seed = 1);

}  // namespace relent
