#pragma once

#include "qkd/bell_diagonal.hpp"
#include "qkd/rng.hpp"
#include "qkd/states.hpp"

namespace qkd {

/// Random two-qubit state: a Haar-like pure state (normalized vector of
/// standard-normal complex components) mixed with 1/4 at a uniform random
/// weight. Covers both near-pure and near-mixed regimes.
DensityOperator random_density_operator(Rng& rng);

/// Uniform (Dirichlet) point on the Bell-weight simplex; with
/// g2_symmetric set, lam01 == lam10 exactly.
BellDiagonal random_bell_diagonal(Rng& rng, bool g2_symmetric);

}  // namespace qkd
