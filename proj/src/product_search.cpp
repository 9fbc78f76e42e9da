#include "relent/product_search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace relent {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::array<unsigned, 6> kHaltonBases{2, 3, 5, 7, 11, 13};

void require_supported(BipartiteDims dims, const ComplexMatrix& g) {
  if (dims.dA != 2 || (dims.dB != 2 && dims.dB != 3)) {
    throw DimensionError("product search supports 2x2 and 2x3 systems only");
  }
  if (g.dim() != dims.total()) throw DimensionError("product search: operator/dims mismatch");
  if (!g.is_hermitian(1e-10)) throw NotHermitianError("product search: operator is not Hermitian");
}

double radical_inverse(std::size_t index, unsigned base) {
  double result = 0.0;
  double scale = 1.0 / base;
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale /= base;
  }
  return result;
}

// Reduced operator on party B for a fixed party-A vector: <a|G|a>.
ComplexMatrix reduce_on_a(const ComplexMatrix& g, BipartiteDims dims, const std::vector<Complex>& a) {
  ComplexMatrix out(dims.dB);
  for (std::size_t i = 0; i < dims.dA; ++i)
    for (std::size_t j = 0; j < dims.dA; ++j) {
      const Complex w = std::conj(a[i]) * a[j];
      for (std::size_t k = 0; k < dims.dB; ++k)
        for (std::size_t l = 0; l < dims.dB; ++l) out(k, l) += w * g(i * dims.dB + k, j * dims.dB + l);
    }
  return out;
}

ComplexMatrix reduce_on_b(const ComplexMatrix& g, BipartiteDims dims, const std::vector<Complex>& b) {
  ComplexMatrix out(dims.dA);
  for (std::size_t k = 0; k < dims.dB; ++k)
    for (std::size_t l = 0; l < dims.dB; ++l) {
      const Complex w = std::conj(b[k]) * b[l];
      for (std::size_t i = 0; i < dims.dA; ++i)
        for (std::size_t j = 0; j < dims.dA; ++j) out(i, j) += w * g(i * dims.dB + k, j * dims.dB + l);
    }
  return out;
}

std::vector<Complex> lowest_eigenvector(const ComplexMatrix& m) {
  const EigenSystem es = hermitian_eigensystem(m);
  std::vector<Complex> v(m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r) v[r] = es.vectors(r, 0);
  return v;
}

// Maps a point of the unit cube onto the angle domain.
std::vector<double> cube_to_angles(BipartiteDims dims, const std::vector<double>& u) {
  std::vector<double> angles(u.size());
  angles[0] = std::acos(1.0 - 2.0 * u[0]);
  angles[1] = 2.0 * kPi * u[1];
  if (dims.dB == 2) {
    angles[2] = std::acos(1.0 - 2.0 * u[2]);
    angles[3] = 2.0 * kPi * u[3];
  } else {
    angles[2] = 0.5 * kPi * u[2];
    angles[3] = 0.5 * kPi * u[3];
    angles[4] = 2.0 * kPi * u[4];
    angles[5] = 2.0 * kPi * u[5];
  }
  return angles;
}

double evaluate(const ComplexMatrix& g, BipartiteDims dims, const std::vector<double>& angles) {
  const ProductState s = product_state_from_angles(dims, angles);
  return product_expectation(g, s.a, s.b);
}

}  // namespace

std::size_t product_angle_count(BipartiteDims dims) { return dims.dB == 2 ? 4 : 6; }

ProductState product_state_from_angles(BipartiteDims dims, const std::vector<double>& angles) {
  if (angles.size() != product_angle_count(dims)) {
    throw DimensionError("product_state_from_angles: expected " +
                         std::to_string(product_angle_count(dims)) + " angles");
  }
  ProductState s;
  s.a = {std::cos(angles[0] / 2), std::polar(std::sin(angles[0] / 2), angles[1])};
  if (dims.dB == 2) {
    s.b = {std::cos(angles[2] / 2), std::polar(std::sin(angles[2] / 2), angles[3])};
  } else {
    const double c1 = std::cos(angles[2]);
    const double s1 = std::sin(angles[2]);
    s.b = {c1, std::polar(s1 * std::cos(angles[3]), angles[4]),
           std::polar(s1 * std::sin(angles[3]), angles[5])};
  }
  return s;
}

double product_expectation(const ComplexMatrix& g, const std::vector<Complex>& a,
                           const std::vector<Complex>& b) {
  const std::vector<Complex> ab = kron(std::span<const Complex>(a), std::span<const Complex>(b));
  const std::vector<Complex> gab = g * std::span<const Complex>(ab);
  Complex sum = 0.0;
  for (std::size_t k = 0; k < ab.size(); ++k) sum += std::conj(ab[k]) * gab[k];
  return sum.real();
}

std::vector<std::vector<double>> shifted_halton(std::size_t count, std::size_t dimension,
                                                std::uint64_t seed) {
  if (dimension > kHaltonBases.size()) throw DimensionError("shifted_halton: dimension too large");
  std::mt19937_64 rng(seed);
  std::vector<double> shift(dimension);
  // 53-bit mantissa draw; avoids implementation-defined distributions.
  for (auto& s : shift) s = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  std::vector<std::vector<double>> points(count, std::vector<double>(dimension));
  for (std::size_t n = 0; n < count; ++n)
    for (std::size_t d = 0; d < dimension; ++d) {
      const double v = radical_inverse(n + 1, kHaltonBases[d]) + shift[d];
      points[n][d] = v - std::floor(v);
    }
  return points;
}

ProductState minimize_product_expectation(const ComplexMatrix& g, BipartiteDims dims,
                                          const ProductSearchOptions& options) {
  require_supported(dims, g);
  const std::size_t n_angles = product_angle_count(dims);
  const auto points = shifted_halton(std::max<std::size_t>(options.samples, 1), n_angles, options.seed);

  struct Candidate {
    double value;
    std::size_t index;
    std::vector<double> angles;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    auto angles = cube_to_angles(dims, points[k]);
    candidates.push_back({evaluate(g, dims, angles), k, std::move(angles)});
  }
  // Ties broken by sample index so the selection is order independent.
  const std::size_t keep = std::min(options.refine_candidates == 0 ? 1 : options.refine_candidates,
                                    candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), [](const Candidate& x, const Candidate& y) {
                      return x.value < y.value || (x.value == y.value && x.index < y.index);
                    });
  candidates.resize(keep);

  ProductState best;
  best.value = std::numeric_limits<double>::infinity();
  for (auto& cand : candidates) {
    double step = 0.25;
    for (std::size_t round = 0; round < options.refine_steps; ++round, step *= 0.5) {
      bool improved = true;
      for (int sweep = 0; improved && sweep < 16; ++sweep) {
        improved = false;
        for (std::size_t d = 0; d < n_angles; ++d) {
          for (double dir : {1.0, -1.0}) {
            cand.angles[d] += dir * step;
            const double v = evaluate(g, dims, cand.angles);
            if (v < cand.value) {
              cand.value = v;
              improved = true;
              break;
            }
            cand.angles[d] -= dir * step;
          }
        }
      }
    }

    ProductState s = product_state_from_angles(dims, cand.angles);
    s.value = cand.value;
    for (std::size_t round = 0; round < options.polish_rounds; ++round) {
      auto b = lowest_eigenvector(reduce_on_a(g, dims, s.a));
      auto a = lowest_eigenvector(reduce_on_b(g, dims, b));
      const double v = product_expectation(g, a, b);
      if (!(v < s.value)) break;
      s = {std::move(a), std::move(b), v};
    }
    if (s.value < best.value) best = std::move(s);
  }
  return best;
}

}  // namespace relent
