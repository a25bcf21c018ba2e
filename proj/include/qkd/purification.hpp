#pragma once

#include <functional>

#include "qkd/bell_diagonal.hpp"

namespace qkd {

struct EppStepResult {
  BellDiagonal lam;
  double p_success;
};

struct EppState {
  BellDiagonal lam;
  int rounds;
  double cumulative_yield;  // product over rounds of p_success/2 (2->1 halving)
};

/// One 2->1 recurrence step on Bell weights. With
/// (A, B, C, D) = (lamPhi+, lamPsi-, lamPsi+, lamPhi-) and
/// N = (A+B)^2 + (C+D)^2:
///   A' = (A^2+B^2)/N, B' = 2CD/N, C' = (C^2+D^2)/N, D' = 2AB/N,
/// succeeding with probability N. Throws std::domain_error when N == 0.
EppStepResult epp_step(const BellDiagonal& lam);

using EppRoundObserver =
    std::function<void(int round, const BellDiagonal& lam, double p_success, double yield)>;

/// Iterates epp_step until the dominant Bell weight reaches target_fidelity
/// or max_rounds is exhausted. Inputs with lamPsi- > 1/2 are purified toward
/// Psi- by relabeling the sectors (the 1(x)Y frame) and relabeled back on
/// output. Throws NonDistillableError when max(lamPhi+, lamPsi-) <= 1/2, the
/// recurrence fixed-point threshold. Requires 1/2 < target_fidelity < 1.
EppState purify_until(const BellDiagonal& lam, double target_fidelity, int max_rounds,
                      const EppRoundObserver& on_round = {});

}  // namespace qkd
