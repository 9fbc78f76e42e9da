#include "relent/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace relent {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr double kWitnessHermitian = 1e-10;
constexpr double kImagResidue = 1e-10;
constexpr double kRadicandClamp = 1e-12;
constexpr double kSingularCutoff = 1e-12;

ComplexMatrix unit(std::size_t dim, std::size_t row, std::size_t col) {
  ComplexMatrix m(dim);
  m(row, col) = 1.0;
  return m;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) sum += a(i, j) * b(j, i);
  return sum;
}

double sgn(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Clamps tiny negative radicands to zero; returns false when materially negative.
bool clamp_radicand(double& r) {
  if (r >= 0.0) return true;
  if (r >= -kRadicandClamp) {
    r = 0.0;
    return true;
  }
  return false;
}

}  // namespace

OperatorBasis qubit_basis(BasisConvention convention) {
  const ComplexMatrix o1 = unit(2, 0, 0);
  const ComplexMatrix o2 = unit(2, 1, 1);
  const Complex minus_i{0.0, -1.0};
  OperatorBasis basis{2, {o1, o2}};
  if (convention == BasisConvention::AsPrinted) {
    basis.ops.push_back(kInvSqrt2 * (o1 + o2));
    basis.ops.push_back(minus_i * kInvSqrt2 * (o1 - o2));
  } else {
    const ComplexMatrix up = unit(2, 0, 1);
    const ComplexMatrix down = unit(2, 1, 0);
    basis.ops.push_back(kInvSqrt2 * (up + down));
    basis.ops.push_back(minus_i * kInvSqrt2 * (up - down));
  }
  return basis;
}

OperatorBasis qutrit_basis(BasisConvention convention) {
  OperatorBasis basis{3, {unit(3, 0, 0), unit(3, 1, 1), unit(3, 2, 2)}};
  const Complex i{0.0, 1.0};
  constexpr std::size_t pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  if (convention == BasisConvention::AsPrinted) {
    const auto& q = basis.ops;
    const std::vector<ComplexMatrix> diag{q[0], q[1], q[2]};
    for (const auto& pq : pairs) basis.ops.push_back(kInvSqrt2 * (diag[pq[0]] + diag[pq[1]]));
    for (const auto& pq : pairs) basis.ops.push_back(i * kInvSqrt2 * (diag[pq[0]] - diag[pq[1]]));
  } else {
    for (const auto& pq : pairs)
      basis.ops.push_back(kInvSqrt2 * (unit(3, pq[0], pq[1]) + unit(3, pq[1], pq[0])));
    for (const auto& pq : pairs)
      basis.ops.push_back(i * kInvSqrt2 * (unit(3, pq[0], pq[1]) - unit(3, pq[1], pq[0])));
  }
  return basis;
}

OperatorBasis basis_for(std::size_t party_dim, BasisConvention convention) {
  if (party_dim == 2) return qubit_basis(convention);
  if (party_dim == 3) return qutrit_basis(convention);
  throw DimensionError("basis_for: only party dimensions 2 and 3 are supported");
}

double CoefficientMatrix::max_imag() const {
  double worst = 0.0;
  for (const auto& z : data_) worst = std::max(worst, std::abs(z.imag()));
  return worst;
}

double CoefficientMatrix::max_abs_diff(const CoefficientMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw DimensionError("CoefficientMatrix::max_abs_diff: shape mismatch");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < data_.size(); ++k) worst = std::max(worst, std::abs(data_[k] - other.data_[k]));
  return worst;
}

CoefficientMatrix moment_matrix(const ComplexMatrix& m, const OperatorBasis& basis_a,
                                const OperatorBasis& basis_b) {
  if (m.dim() != basis_a.party_dim * basis_b.party_dim) {
    throw DimensionError("moment_matrix: state dimension " + std::to_string(m.dim()) +
                         " does not match bases " + std::to_string(basis_a.party_dim) + "x" +
                         std::to_string(basis_b.party_dim));
  }
  CoefficientMatrix out(basis_a.ops.size(), basis_b.ops.size());
  for (std::size_t i = 0; i < basis_a.ops.size(); ++i)
    for (std::size_t j = 0; j < basis_b.ops.size(); ++j)
      out(i, j) = trace_product(m, kron(basis_a.ops[i], basis_b.ops[j]));
  return out;
}

CoefficientMatrix moment_matrix(const DensityMatrix& rho, const OperatorBasis& basis_a,
                                const OperatorBasis& basis_b) {
  if (rho.dims() != BipartiteDims{basis_a.party_dim, basis_b.party_dim}) {
    throw DimensionError("moment_matrix: state dims do not match the operator bases");
  }
  return moment_matrix(rho.mat(), basis_a, basis_b);
}

CoefficientSolution coefficients_from_moment(const CoefficientMatrix& rho_tilde) {
  const std::size_t rows = rho_tilde.rows();
  const std::size_t cols = rho_tilde.cols();

  ComplexMatrix gram(cols);  // R^dagger R
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Complex sum = 0.0;
      for (std::size_t k = 0; k < rows; ++k) sum += std::conj(rho_tilde(k, i)) * rho_tilde(k, j);
      gram(i, j) = sum;
    }
  const EigenSystem es = hermitian_eigensystem(gram);

  // R v_k and its norm for every eigenvector.
  std::vector<std::vector<Complex>> images(cols, std::vector<Complex>(rows));
  std::vector<double> sigma(cols);
  for (std::size_t k = 0; k < cols; ++k) {
    double norm_sq = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      Complex sum = 0.0;
      for (std::size_t c = 0; c < cols; ++c) sum += rho_tilde(r, c) * es.vectors(c, k);
      images[k][r] = sum;
      norm_sq += std::norm(sum);
    }
    sigma[k] = std::sqrt(norm_sq);
  }
  const double s_max = *std::max_element(sigma.begin(), sigma.end());
  const double cutoff = kSingularCutoff * std::max(1.0, s_max);

  CoefficientSolution out;
  out.coeffs = CoefficientMatrix(rows, cols);
  out.z = ComplexMatrix(cols);
  for (std::size_t k = 0; k < cols; ++k) {
    for (std::size_t i = 0; i < cols; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        out.z(i, j) += 0.5 * sigma[k] * es.vectors(i, k) * std::conj(es.vectors(j, k));
    if (sigma[k] <= cutoff) continue;
    ++out.rank;
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        out.coeffs(r, c) -= images[k][r] * std::conj(es.vectors(c, k)) / sigma[k];
  }
  out.rank_deficient = out.rank < std::min(rows, cols);
  out.singular_values = sigma;
  std::sort(out.singular_values.begin(), out.singular_values.end(), std::greater<>());
  return out;
}

WitnessOperator assemble_witness(const CoefficientMatrix& coeffs, const OperatorBasis& basis_a,
                                 const OperatorBasis& basis_b) {
  if (coeffs.rows() != basis_a.ops.size() || coeffs.cols() != basis_b.ops.size()) {
    throw DimensionError("assemble_witness: coefficient shape does not match basis sizes");
  }
  ComplexMatrix w = ComplexMatrix::identity(basis_a.party_dim * basis_b.party_dim);
  for (std::size_t i = 0; i < coeffs.rows(); ++i)
    for (std::size_t j = 0; j < coeffs.cols(); ++j) {
      if (coeffs(i, j) == Complex{}) continue;
      w += coeffs(i, j) * kron(basis_a.ops[i], basis_b.ops[j]);
    }
  if (!w.is_hermitian(kWitnessHermitian)) {
    throw NotHermitianError("assemble_witness: assembled operator is not Hermitian");
  }
  return {std::move(w), coeffs, basis_a, basis_b};
}

WitnessOperator build_witness(const DensityMatrix& rho, BasisConvention convention) {
  const OperatorBasis basis_a = basis_for(rho.dims().dA, convention);
  const OperatorBasis basis_b = basis_for(rho.dims().dB, convention);
  const CoefficientSolution solution = coefficients_from_moment(moment_matrix(rho, basis_a, basis_b));
  return assemble_witness(solution.coeffs, basis_a, basis_b);
}

CoefficientMatrix expand_in_basis(const ComplexMatrix& m, const OperatorBasis& basis_a,
                                  const OperatorBasis& basis_b) {
  return moment_matrix(m - ComplexMatrix::identity(m.dim()), basis_a, basis_b);
}

double expectation(const ComplexMatrix& w, const ComplexMatrix& rho) {
  if (w.dim() != rho.dim()) throw DimensionError("expectation: dimension mismatch");
  const Complex sum = trace_product(w, rho);
  if (std::abs(sum.imag()) > kImagResidue) {
    throw NumericalError("expectation: imaginary residue " + std::to_string(sum.imag()));
  }
  return sum.real();
}

double expectation(const WitnessOperator& w, const DensityMatrix& rho) {
  if (w.dims() != rho.dims()) throw DimensionError("expectation: witness/state dims differ");
  return expectation(w.mat, rho.mat());
}

BellSignedSums bell_signed_sums(const BellWeights& w) {
  BellSignedSums s;
  s.a = w.p1 + w.p2 - w.p3 - w.p4;
  s.b = w.p1 - w.p2 + w.p3 - w.p4;
  s.c = w.p1 - w.p2 - w.p3 + w.p4;
  s.degenerate = s.a == 0.0 || s.b == 0.0 || s.c == 0.0;
  return s;
}

BellClosedCoefficients bd_closed_form_coeffs(const BellWeights& w) {
  w.validate();
  const BellSignedSums s = bell_signed_sums(w);
  BellClosedCoefficients out{CoefficientMatrix(4, 4), s.degenerate};
  // (-P1-P2+P3+P4)/|a| = -sgn(a), and so on.
  const double diag = 0.5 * (-sgn(s.a) - 1.0);
  const double cross = 0.5 * (sgn(s.a) - 1.0);
  out.coeffs(0, 0) = out.coeffs(1, 1) = diag;
  out.coeffs(0, 1) = out.coeffs(1, 0) = cross;
  out.coeffs(2, 2) = -sgn(s.b);
  out.coeffs(3, 3) = sgn(s.c);
  return out;
}

double trace_bd_rest(const BellWeights& w) {
  w.validate();
  const BellSignedSums s = bell_signed_sums(w);
  return 0.5 * (1.0 - std::abs(s.a) - std::abs(s.b) - std::abs(s.c));
}

RadicandCheck bd_boosted_radicands(const BellWeights& w, double omega) {
  const double p1 = w.p1, p2 = w.p2, p3 = w.p3, p4 = w.p4;
  const double cos_w = std::cos(omega);
  const double sin_w = std::sin(omega);
  const double sin_2w = std::sin(2.0 * omega);
  const double sum_sq = p1 * p1 + p2 * p2 + p3 * p3 + p4 * p4;
  const double big_b = 8.0 * (p1 * p3 + p2 * p4) * cos_w * cos_w -
                       2.0 * sum_sq * (-3.0 + std::cos(2.0 * omega));
  const double d13 = p1 * p1 - p3 * p3;
  const double s24 = p2 * p2 + p4 * p4;
  const double big_c = 4.0 * std::pow(p1 + p3, 2) * std::pow(p2 + p4, 2) +
                       4.0 * (d13 * d13 + s24 * s24) * sin_w * sin_w +
                       4.0 * std::pow(p1 - p3, 2) * std::pow(p2 - p4, 2) * std::pow(sin_2w, 4);
  RadicandCheck out;
  out.c = big_c;
  double root_c = big_c;
  out.valid = clamp_radicand(root_c);
  root_c = std::sqrt(root_c);
  out.minus = big_b - 4.0 * root_c;
  out.plus = big_b + 4.0 * root_c;
  out.valid = out.valid && clamp_radicand(out.minus) && clamp_radicand(out.plus);
  return out;
}

double trace_bd_boosted(const BellWeights& w, double omega) {
  w.validate();
  const BellSignedSums s = bell_signed_sums(w);
  const RadicandCheck r = bd_boosted_radicands(w, omega);
  if (!r.valid) {
    throw NumericalError("trace_bd_boosted: negative radicand at P = (" + std::to_string(w.p1) + ", " +
                         std::to_string(w.p2) + ", " + std::to_string(w.p3) + ", " +
                         std::to_string(w.p4) + "), omega = " + std::to_string(omega) +
                         " (B - 4 sqrt C = " + std::to_string(r.minus) + ")");
  }
  const double big_a = 1.0 - 0.5 * (std::abs(s.a) + std::abs(s.c)) * std::cos(omega);
  return big_a - 0.25 * (std::sqrt(r.minus) + std::sqrt(r.plus));
}

TraceComparison compare_bd_boosted(const BellWeights& w, double omega, WitnessFrame frame,
                                   SpinHalfAxes axes) {
  const DensityMatrix rho = rho_bd(w);
  const DensityMatrix boosted = boost_spin_half(rho, omega, axes);
  const WitnessOperator witness = build_witness(frame == WitnessFrame::Rest ? rho : boosted);
  TraceComparison out;
  out.oracle = expectation(witness, boosted);
  try {
    out.closed_form = trace_bd_boosted(w, omega);
    out.residual = std::abs(out.closed_form - out.oracle);
  } catch (const NumericalError&) {
    out.closed_form_valid = false;
    out.closed_form = std::numeric_limits<double>::quiet_NaN();
    out.residual = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

CoefficientMatrix spin1_coeffs(const SpinOneWeights& w) {
  w.validate();
  const double sqrt3 = std::numbers::sqrt3;
  const double s = w.x + w.y;
  const double root = std::sqrt(2.0 + s * s);
  const double a11 = (-2.0 * sqrt3 - (std::sqrt(3.0 * s * s) - 3.0 * root)) / (6.0 * root);
  const double a12 = (-1.0 + s) / std::sqrt(6.0 + 3.0 * s * s);
  const double a13 = (-2.0 * sqrt3 - (std::sqrt(3.0 * s * s) + 3.0 * root)) / (6.0 * root);
  CoefficientMatrix out(4, 9);
  out(0, 0) = out(1, 2) = a11;
  out(0, 1) = out(1, 1) = a12;
  out(0, 2) = out(1, 0) = a13;
  out(2, 4) = out(3, 7) = -1.0;
  return out;
}

double trace_spin1_rest(const SpinOneWeights& w) {
  w.validate();
  const double d = w.x - w.y;
  const double s = w.x + w.y;
  return (6.0 - 6.0 * std::sqrt(d * d) - 3.0 * std::sqrt(s * s) - std::sqrt(6.0 + 3.0 * s * s)) / 6.0;
}

double trace_spin1_boosted_formula(const SpinOneWeights& w) {
  w.validate();
  const double x = w.x;
  const double y = w.y;
  const double big_b = 4.0 + 11.0 * x * x - 8.0 * x * y + 11.0 * y * y;
  double big_a = 4.0 + 4.0 * x * x * (1.0 + x) * (5.0 * x - 1.0) -
                 4.0 * x * y * (4.0 * x + 11.0 * x * x - 9.0) +
                 y * y * (97.0 * x * x - 16.0 * x - 4.0) + 4.0 * (4.0 - 11.0 * x) * y * y * y +
                 20.0 * y * y * y * y;
  bool ok = clamp_radicand(big_a);
  double minus = ok ? big_b - 2.0 * std::sqrt(big_a) : -1.0;
  double plus = ok ? big_b + 2.0 * std::sqrt(big_a) : -1.0;
  ok = ok && clamp_radicand(minus) && clamp_radicand(plus);
  if (!ok) {
    throw NumericalError("trace_spin1_boosted_formula: negative radicand at (x, y) = (" +
                         std::to_string(x) + ", " + std::to_string(y) + ")");
  }
  return 1.0 - std::numbers::sqrt3 / 4.0 *
                   (std::abs(x - y) + std::abs(x + y) + std::sqrt(minus) + std::sqrt(plus));
}

SpinOneBoostedTrace trace_spin1_boosted(const SpinOneWeights& w, WitnessFrame frame) {
  const DensityMatrix rho = rho_spin1(w);
  const DensityMatrix boosted = boost_spin_one(rho, kQuarterTheta);
  const WitnessOperator witness = build_witness(frame == WitnessFrame::Rest ? rho : boosted);
  SpinOneBoostedTrace out;
  out.oracle = expectation(witness, boosted);
  try {
    out.formula = trace_spin1_boosted_formula(w);
    out.residual = std::abs(out.formula - out.oracle);
  } catch (const NumericalError&) {
    out.formula_valid = false;
    out.formula = std::numeric_limits<double>::quiet_NaN();
    out.residual = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

double trace_pure_theta(double theta) {
  return -0.5 * std::cos(theta) * std::sqrt(6.0 - 2.0 * std::cos(2.0 * theta));
}

SeparableMinimum min_over_separable(const ComplexMatrix& w, BipartiteDims dims, std::size_t samples,
                                    std::size_t refine_steps, std::uint64_t seed) {
  ProductSearchOptions options;
  options.samples = samples;
  options.refine_steps = refine_steps;
  options.seed = seed;
  ProductState best = minimize_product_expectation(w, dims, options);
  const double value = best.value;
  return {value, std::move(best)};
}

SeparableMinimum min_over_separable(const WitnessOperator& w, std::size_t samples,
                                    std::size_t refine_steps, std::uint64_t seed) {
  return min_over_separable(w.mat, w.dims(), samples, refine_steps, seed);
}

}  // namespace relent
