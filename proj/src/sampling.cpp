#include "qkd/sampling.hpp"

#include <cmath>

namespace qkd {

DensityOperator random_density_operator(Rng& rng) {
  Mat v(4, 1);
  double norm2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Complex z(rng.gaussian(), rng.gaussian());
    v(i, 0) = z;
    norm2 += std::norm(z);
  }
  const double inv_norm = 1.0 / std::sqrt(norm2);
  const Mat pure = ops::ket_bra(inv_norm * v);
  const double w = rng.uniform();
  return DensityOperator(w * pure + (0.25 * (1.0 - w)) * ops::identity4());
}

BellDiagonal random_bell_diagonal(Rng& rng, bool g2_symmetric) {
  if (g2_symmetric) {
    // Dirichlet over (lam00, lam01 + lam10, lam11), split evenly.
    double e[3];
    double sum = 0.0;
    for (double& x : e) {
      x = -std::log(1.0 - rng.uniform());
      sum += x;
    }
    const double m = 0.5 * e[1] / sum;
    return BellDiagonal(e[0] / sum, m, m, e[2] / sum);
  }
  double e[4];
  double sum = 0.0;
  for (double& x : e) {
    x = -std::log(1.0 - rng.uniform());
    sum += x;
  }
  return BellDiagonal(e[0] / sum, e[1] / sum, e[2] / sum, e[3] / sum);
}

}  // namespace qkd
