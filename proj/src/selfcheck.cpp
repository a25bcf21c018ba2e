#include "qkd/selfcheck.hpp"

#include <cmath>
#include <cstdio>

#include "qkd/sampling.hpp"
#include "qkd/witness.hpp"

namespace qkd {

bool SelfcheckReport::pass() const {
  return identity_max_dev < 1e-12 && twirl_qber_max_dev < 1e-10 && twirl_offdiag_max < 1e-12 &&
         twirl_g2_asym_max < 1e-12 && twirl_idem_max_dev < 1e-12 && oracle_mismatches == 0;
}

std::string SelfcheckReport::format() const {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "conjugation identities   max deviation %.3e (limit 1e-12)\n"
                "twirl QBER invariance    max deviation %.3e (limit 1e-10)\n"
                "twirl Bell coherences    max deviation %.3e (limit 1e-12)\n"
                "twirl lam01/lam10 split  max deviation %.3e (limit 1e-12)\n"
                "twirl idempotence        max deviation %.3e (limit 1e-12)\n"
                "verdict oracle agreement %d mismatches in %d samples\n"
                "result: %s\n",
                identity_max_dev, twirl_qber_max_dev, twirl_offdiag_max, twirl_g2_asym_max,
                twirl_idem_max_dev, oracle_mismatches, oracle_samples, pass() ? "pass" : "FAIL");
  return buf;
}

SelfcheckReport run_selfcheck(std::uint64_t seed, const QubitOps& qubit_ops) {
  SelfcheckReport r;
  r.identity_max_dev = verify_symmetry_identities(qubit_ops).max_deviation;

  Rng rng(seed);
  const auto& basis = ops::bell_basis();
  for (int i = 0; i < 200; ++i) {
    const DensityOperator rho = random_density_operator(rng);
    const DensityOperator twirled = twirl(rho);

    r.twirl_qber_max_dev =
        std::max(r.twirl_qber_max_dev, std::abs(qber_of_state(rho) - qber_of_state(twirled)));

    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        if (a == b) continue;
        const Complex coherence = (basis[a].adjoint() * twirled.mat() * basis[b])(0, 0);
        r.twirl_offdiag_max = std::max(r.twirl_offdiag_max, std::abs(coherence));
      }

    const BellDiagonal lam = bell_diagonal_of(twirled);
    r.twirl_g2_asym_max = std::max(r.twirl_g2_asym_max, std::abs(lam.lam01() - lam.lam10()));

    r.twirl_idem_max_dev = std::max(
        r.twirl_idem_max_dev, Mat::max_abs_diff(twirl(twirled).mat(), twirled.mat()));
  }

  r.oracle_samples = 2000;
  for (int i = 0; i < r.oracle_samples; ++i) {
    const BellDiagonal lam = random_bell_diagonal(rng, i % 2 == 0);
    const SeparabilityVerdict closed = ppt_verdict_bell(lam);
    const SeparabilityVerdict numeric = ppt_verdict_numeric(reconstruct(lam));
    if (closed.verdict != numeric.verdict ||
        std::abs(closed.min_pt_eigenvalue - numeric.min_pt_eigenvalue) > tol::kEigTol) {
      ++r.oracle_mismatches;
    }
  }
  return r;
}

}  // namespace qkd
