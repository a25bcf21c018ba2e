#pragma once

#include <array>
#include <complex>
#include <cstdlib>

#include "qkd/matrix.hpp"
#include "qkd/rng.hpp"
#include "qkd/states.hpp"

// Test-only helpers and independent oracles. The oracles deliberately avoid
// the library's Mat/state machinery so they can cross-check it.
namespace testsupport {

using cplx = std::complex<double>;
using Grid4 = std::array<std::array<cplx, 4>, 4>;

inline Grid4 to_grid(const qkd::Mat& m) {
  Grid4 g{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) g[r][c] = m(r, c);
  return g;
}

// QBER from first principles: plain loops over projector entries, no Mat.
inline double brute_force_qber(const Grid4& rho) {
  // proj[b][l][i][j] = (H^b |l><l| H^b)_{ij}
  double proj[2][2][2][2];
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        proj[0][l][i][j] = (i == l && j == l) ? 1.0 : 0.0;
        const double si = (i == 0) ? 1.0 : -1.0;
        const double sj = (j == 0) ? 1.0 : -1.0;
        proj[1][l][i][j] = 0.5 * (l == 0 ? 1.0 : si * sj);
      }
  double d = 0.0;
  for (int b = 0; b < 2; ++b)
    for (int l = 0; l < 2; ++l) {
      const int m = l ^ 1;
      cplx tr = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap)
          for (int bb = 0; bb < 2; ++bb)
            for (int bp = 0; bp < 2; ++bp) {
              tr += proj[b][l][a][ap] * proj[b][m][bb][bp] * rho[2 * ap + bp][2 * a + bb];
            }
      d += tr.real();
    }
  return 0.5 * d;
}

inline qkd::Mat random_hermitian(qkd::Rng& rng, int n) {
  qkd::Mat b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = qkd::Complex(rng.gaussian(), rng.gaussian());
  return 0.5 * (b + b.adjoint());
}

// Random unitary assembled from the module's own named operators.
inline qkd::Mat random_unitary_from_constants(qkd::Rng& rng) {
  using namespace qkd::ops;
  const qkd::Mat* choices[5] = {&hadamard(), &pauli_x(), &pauli_y(), &pauli_z(), &identity2()};
  qkd::Mat u = qkd::Mat::identity(4);
  for (int k = 0; k < 3; ++k) {
    const qkd::Mat& a = *choices[rng.uniform_below(5)];
    const qkd::Mat& b = *choices[rng.uniform_below(5)];
    u = u * qkd::kron(a, b);
  }
  return u;
}

// Closed-form single-step recurrence for Werner input with fidelity f.
inline double werner_step_fidelity(double f) {
  const double num = f * f + (1.0 - f) * (1.0 - f) / 9.0;
  const double den =
      f * f + 2.0 * f * (1.0 - f) / 3.0 + 5.0 * (1.0 - f) * (1.0 - f) / 9.0;
  return num / den;
}

inline double werner_step_success(double f) {
  return f * f + 2.0 * f * (1.0 - f) / 3.0 + 5.0 * (1.0 - f) * (1.0 - f) / 9.0;
}

}  // namespace testsupport
