#include "relent/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "relent/product_search.hpp"

namespace relent {

namespace {

constexpr double kFeasibleTol = 1e-12;

ComplexMatrix sigma_y_pair() {
  ComplexMatrix sy{{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}};
  return kron(sy, sy);
}

// alpha + beta x + gamma y >= 0
struct HalfPlane {
  double alpha, beta, gamma;
  double at(double x, double y) const { return alpha + beta * x + gamma * y; }
};

constexpr std::array<HalfPlane, 6> kSeparableTriangle{{
    {1.0, 2.0, -4.0},
    {1.0, -1.0, -1.0},
    {1.0, -4.0, 2.0},
    {1.0, 2.0, 2.0},
    {1.0, 5.0, -1.0},
    {1.0, -1.0, 5.0},
}};

bool feasible(double x, double y) {
  return std::all_of(kSeparableTriangle.begin(), kSeparableTriangle.end(),
                     [&](const HalfPlane& h) { return h.at(x, y) >= -kFeasibleTol; });
}

double hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) sum += (std::conj(a(i, j)) * b(i, j)).real();
  return sum;
}

NearestSeparable nearest_in_triangle(const DensityMatrix& rho) {
  if (rho.dims() != kSpinOneDims) {
    throw DimensionError("nearest_separable: the xy-triangle family needs a 2x3 state");
  }
  const auto psi = spin_one_entangled_states();
  const ComplexMatrix centre = (1.0 / 6.0) * ComplexMatrix::identity(6);
  const ComplexMatrix a = ComplexMatrix::projector(psi[0]) - centre;
  const ComplexMatrix b = ComplexMatrix::projector(psi[1]) - centre;
  const ComplexMatrix c = rho.mat() - centre;
  const double aa = hs_inner(a, a), ab = hs_inner(a, b), bb = hs_inner(b, b);
  const double ca = hs_inner(c, a), cb = hs_inner(c, b), cc = hs_inner(c, c);
  auto objective = [&](double x, double y) {
    return x * x * aa + 2.0 * x * y * ab + y * y * bb - 2.0 * x * ca - 2.0 * y * cb + cc;
  };

  std::vector<std::pair<double, double>> candidates;
  const double det = aa * bb - ab * ab;
  candidates.emplace_back((ca * bb - cb * ab) / det, (cb * aa - ca * ab) / det);
  for (const HalfPlane& h : kSeparableTriangle) {
    const double n2 = h.beta * h.beta + h.gamma * h.gamma;
    const double x0 = -h.alpha * h.beta / n2;
    const double y0 = -h.alpha * h.gamma / n2;
    const double dx = -h.gamma, dy = h.beta;
    const double gx = 2.0 * (x0 * aa + y0 * ab - ca);
    const double gy = 2.0 * (x0 * ab + y0 * bb - cb);
    const double curv = 2.0 * (dx * dx * aa + 2.0 * dx * dy * ab + dy * dy * bb);
    const double t = -(gx * dx + gy * dy) / curv;
    candidates.emplace_back(x0 + t * dx, y0 + t * dy);
  }
  for (std::size_t i = 0; i < kSeparableTriangle.size(); ++i)
    for (std::size_t j = i + 1; j < kSeparableTriangle.size(); ++j) {
      const HalfPlane& p = kSeparableTriangle[i];
      const HalfPlane& q = kSeparableTriangle[j];
      const double d = p.beta * q.gamma - p.gamma * q.beta;
      if (std::abs(d) < 1e-14) continue;
      candidates.emplace_back((-p.alpha * q.gamma + q.alpha * p.gamma) / d,
                              (-p.beta * q.alpha + q.beta * p.alpha) / d);
    }

  double best_value = std::numeric_limits<double>::infinity();
  std::pair<double, double> best{0.0, 0.0};
  for (const auto& [x, y] : candidates) {
    if (!feasible(x, y)) continue;
    const double v = objective(x, y);
    if (v < best_value) {
      best_value = v;
      best = {x, y};
    }
  }
  NearestSeparable out;
  out.xy = SpinOneWeights{best.first, best.second};
  out.state = rho_spin1(*out.xy).mat();
  out.distance_sq = hs_distance_sq(rho.mat(), out.state);
  return out;
}

// Euclidean projection onto the probability simplex.
std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0, theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  for (auto& x : v) x = std::max(0.0, x - theta);
  return v;
}

// min_w w'Gw - 2c'w over the simplex, accelerated projected gradient.
std::vector<double> simplex_qp(const std::vector<std::vector<double>>& g, const std::vector<double>& c,
                               std::vector<double> w) {
  const std::size_t n = c.size();
  double lipschitz = 0.0;
  for (const auto& row : g) {
    double s = 0.0;
    for (double v : row) s += std::abs(v);
    lipschitz = std::max(lipschitz, 2.0 * s);
  }
  const double step = 1.0 / std::max(lipschitz, 1e-12);
  std::vector<double> y = w, prev = w, grad(n);
  double t = 1.0;
  for (int it = 0; it < 4000; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += g[i][j] * y[j];
      grad[i] = 2.0 * (s - c[i]);
    }
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = y[i] - step * grad[i];
    next = project_simplex(std::move(next));
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = next[i] + (t - 1.0) / t_next * (next[i] - prev[i]);
      change = std::max(change, std::abs(next[i] - prev[i]));
    }
    prev = std::move(next);
    t = t_next;
    if (change < 1e-15) break;
  }
  return prev;
}

ComplexMatrix mixture(const std::vector<ComplexMatrix>& atoms, const std::vector<double>& w) {
  ComplexMatrix out(atoms.front().dim());
  for (std::size_t k = 0; k < atoms.size(); ++k) out += w[k] * atoms[k];
  return out;
}

NearestSeparable nearest_product_mixture(const DensityMatrix& rho, std::size_t budget,
                                         std::uint64_t seed) {
  const BipartiteDims dims = rho.dims();
  ProductSearchOptions options;
  options.samples = 2000;
  options.seed = seed;

  auto product_atom = [&](const ComplexMatrix& g, std::uint64_t s) {
    options.seed = s;
    const ProductState p = minimize_product_expectation(g, dims, options);
    return ComplexMatrix::projector(kron(std::span<const Complex>(p.a), std::span<const Complex>(p.b)));
  };

  std::vector<ComplexMatrix> atoms{product_atom(-1.0 * rho.mat(), seed)};
  std::vector<double> weights{1.0};
  NearestSeparable best;
  best.state = atoms.front();
  best.distance_sq = hs_distance_sq(rho.mat(), best.state);
  best.atoms = 1;

  for (std::size_t step = 0; step < budget; ++step) {
    const ComplexMatrix sigma = mixture(atoms, weights);
    atoms.push_back(product_atom(sigma - rho.mat(), seed + step + 1));
    weights.push_back(0.0);

    const std::size_t n = atoms.size();
    std::vector<std::vector<double>> gram(n, std::vector<double>(n));
    std::vector<double> lin(n);
    for (std::size_t i = 0; i < n; ++i) {
      lin[i] = hs_inner(atoms[i], rho.mat());
      for (std::size_t j = 0; j < n; ++j) gram[i][j] = hs_inner(atoms[i], atoms[j]);
    }
    weights = simplex_qp(gram, lin, weights);

    // Drop unused atoms, then the lightest ones beyond the cap.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return weights[i] > weights[j]; });
    std::vector<ComplexMatrix> kept_atoms;
    std::vector<double> kept_weights;
    for (std::size_t i : order) {
      if (weights[i] <= 0.0 || kept_atoms.size() == kMaxAtoms) continue;
      kept_atoms.push_back(atoms[i]);
      kept_weights.push_back(weights[i]);
    }
    const double total = std::accumulate(kept_weights.begin(), kept_weights.end(), 0.0);
    for (auto& w : kept_weights) w /= total;
    atoms = std::move(kept_atoms);
    weights = std::move(kept_weights);

    const ComplexMatrix candidate = mixture(atoms, weights);
    const double d = hs_distance_sq(rho.mat(), candidate);
    if (d < best.distance_sq) {
      best.distance_sq = d;
      best.state = candidate;
      best.atoms = atoms.size();
    }
  }
  return best;
}

}  // namespace

double concurrence(const DensityMatrix& rho) {
  if (rho.dims() != kSpinHalfDims) throw DimensionError("concurrence: expected a 2x2 state");
  const ComplexMatrix yy = sigma_y_pair();
  const ComplexMatrix root = psd_sqrt(rho.mat());
  ComplexMatrix m = root * yy * rho.mat().conjugate() * yy * root;
  m = 0.5 * (m + m.adjoint());
  std::vector<double> nu = hermitian_eigenvalues(m);
  for (auto& v : nu) v = std::sqrt(std::max(0.0, v));
  std::sort(nu.begin(), nu.end(), std::greater<>());
  return std::max(0.0, nu[0] - nu[1] - nu[2] - nu[3]);
}

PptReport ppt_report(const ComplexMatrix& m, BipartiteDims dims) {
  PptReport out;
  out.eigenvalues = hermitian_eigenvalues(partial_transpose(m, dims, Party::A));
  out.min_eigenvalue = out.eigenvalues.front();
  out.is_ppt = out.min_eigenvalue >= kPptThreshold;
  return out;
}

PptReport ppt_report(const DensityMatrix& rho) { return ppt_report(rho.mat(), rho.dims()); }

std::vector<double> SpinOneRestPptEigs::multiset() const {
  std::vector<double> v{l1, l2, l2, l3, l4, l4};
  std::sort(v.begin(), v.end());
  return v;
}

SpinOneRestPptEigs spin1_ppt_eigs_rest(const SpinOneWeights& w) {
  w.validate();
  const double x = w.x, y = w.y;
  return {(1.0 + 2.0 * x - 4.0 * y) / 6.0, (1.0 - x - y) / 6.0, (1.0 - 4.0 * x + 2.0 * y) / 6.0,
          (1.0 + 2.0 * x + 2.0 * y) / 6.0};
}

std::vector<double> SpinOnePositivityEigs::multiset() const {
  std::vector<double> v{common, common, common, common, e5, e6};
  std::sort(v.begin(), v.end());
  return v;
}

SpinOnePositivityEigs spin1_positivity_eigs(const SpinOneWeights& w) {
  const double x = w.x, y = w.y;
  return {(1.0 - x - y) / 6.0, (1.0 + 5.0 * x - y) / 6.0, (1.0 - x + 5.0 * y) / 6.0};
}

BoostedQuarterEigs spin1_ppt_eigs_boosted_quarter(const SpinOneWeights& w) {
  w.validate();
  const double x = w.x, y = w.y;
  const double r1 = 3.0 * std::sqrt(3.0 * x * x + y * y);
  const double r2 = 3.0 * std::sqrt(x * x + 3.0 * y * y);
  BoostedQuarterEigs out;
  out.printed = {(1.0 - x - y) / 6.0, (2.0 - 2.0 * x + 4.0 * y + r1) / 12.0,
                 (2.0 - 2.0 * x + 4.0 * y - r1) / 12.0, (2.0 + 4.0 * x - 2.0 * y + r2) / 12.0,
                 (2.0 + 4.0 * x - 2.0 * y - r2) / 12.0};
  out.expanded.assign(out.printed.begin(), out.printed.end());
  out.expanded.push_back(out.printed[0]);
  std::sort(out.expanded.begin(), out.expanded.end());
  out.numeric = ppt_report(boost_spin_one(rho_spin1(w), std::numbers::pi / 4)).eigenvalues;
  for (std::size_t k = 0; k < out.numeric.size(); ++k)
    out.max_residual = std::max(out.max_residual, std::abs(out.expanded[k] - out.numeric[k]));
  return out;
}

NearestSeparable nearest_separable(const DensityMatrix& rho, SeparableFamily family,
                                   std::size_t budget, std::uint64_t seed) {
  if (family == SeparableFamily::XyTriangle) return nearest_in_triangle(rho);
  return nearest_product_mixture(rho, budget, seed);
}

}  // namespace relent
