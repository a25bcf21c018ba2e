#include "qkd/purification.hpp"

#include <stdexcept>

#include "qkd/errors.hpp"

namespace qkd {

EppStepResult epp_step(const BellDiagonal& lam) {
  const double a = lam.lam00();   // Phi+
  const double b = lam.lam11();   // Psi-
  const double c = lam.lam01();   // Psi+
  const double d = lam.lam10();   // Phi-
  const double n = (a + b) * (a + b) + (c + d) * (c + d);
  if (n <= 0.0) {
    throw std::domain_error("epp_step: degenerate input, success probability zero");
  }
  const double a2 = (a * a + b * b) / n;
  const double b2 = 2.0 * c * d / n;
  const double c2 = (c * c + d * d) / n;
  const double d2 = 2.0 * a * b / n;
  // Renormalize exactly; the four terms sum to n up to rounding.
  const double s = a2 + b2 + c2 + d2;
  return EppStepResult{BellDiagonal(a2 / s, d2 / s, c2 / s, b2 / s), n};
}

namespace {

BellDiagonal swap_sectors(const BellDiagonal& lam) {
  // lam00 <-> lam11, lam10 <-> lam01: conjugation by 1(x)Y.
  return BellDiagonal(lam.lam11(), lam.lam01(), lam.lam10(), lam.lam00());
}

}  // namespace

EppState purify_until(const BellDiagonal& lam, double target_fidelity, int max_rounds,
                      const EppRoundObserver& on_round) {
  if (!(target_fidelity > 0.5 && target_fidelity < 1.0)) {
    throw std::invalid_argument("purify_until: target fidelity must lie in (1/2, 1)");
  }
  if (max_rounds < 0) {
    throw std::invalid_argument("purify_until: max_rounds must be nonnegative");
  }
  const bool toward_psi_minus = lam.lam11() > 0.5;
  if (!toward_psi_minus && lam.lam00() <= 0.5) {
    throw NonDistillableError(
        "purify_until: dominant Bell weight at or below the 1/2 fixed-point threshold");
  }

  BellDiagonal current = toward_psi_minus ? swap_sectors(lam) : lam;
  double yield = 1.0;
  int round = 0;
  while (current.lam00() < target_fidelity && round < max_rounds) {
    const EppStepResult step = epp_step(current);
    current = step.lam;
    yield *= 0.5 * step.p_success;
    ++round;
    if (on_round) {
      on_round(round, toward_psi_minus ? swap_sectors(current) : current, step.p_success,
               yield);
    }
  }
  return EppState{toward_psi_minus ? swap_sectors(current) : current, round, yield};
}

}  // namespace qkd
