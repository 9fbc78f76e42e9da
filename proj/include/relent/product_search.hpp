#pragma once

// Minimisation of <a (x) b| G |a (x) b> over pure product states of a
// qubit (x) qudit system (dB = 2 or 3).

#include <cstdint>
#include <vector>

#include "relent/matcore.hpp"

namespace relent {

struct ProductSearchOptions {
  std::size_t samples = 10000;       // quasi-random starting points
  std::size_t refine_steps = 24;     // step halvings in coordinate descent
  std::size_t refine_candidates = 8; // best samples handed to refinement
  std::size_t polish_rounds = 20;    // alternating eigenvector sweeps
  std::uint64_t seed = 1;
};

struct ProductState {
  std::vector<Complex> a;  // first party (qubit), normalised
  std::vector<Complex> b;  // second party, normalised
  double value = 0.0;      // <a b| G |a b>
};

/// Number of real angles used to parametrise a product state: two for the
/// qubit plus two (qubit) or four (qutrit) for the second party.
std::size_t product_angle_count(BipartiteDims dims);

/// Unit vectors from angles; exposed for tests.
ProductState product_state_from_angles(BipartiteDims dims, const std::vector<double>& angles);

/// Real part of <a b| G |a b>.
double product_expectation(const ComplexMatrix& g, const std::vector<Complex>& a,
                           const std::vector<Complex>& b);

/// Halton points (bases 2, 3, 5, 7, 11, 13) with a seeded Cranley-Patterson
/// shift; deterministic for a given seed.
std::vector<std::vector<double>> shifted_halton(std::size_t count, std::size_t dimension,
                                                std::uint64_t seed);

/// Quasi-random sampling, coordinate-descent refinement of the best
/// candidates with a halving step schedule, then alternating polish where
/// each party is replaced by the lowest eigenvector of the reduced operator.
/// Identical inputs give identical results.
ProductState minimize_product_expectation(const ComplexMatrix& g, BipartiteDims dims,
                                          const ProductSearchOptions& options = {});

}  // namespace relent
