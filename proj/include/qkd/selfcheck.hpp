#pragma once

#include <cstdint>
#include <string>

#include "qkd/twirl.hpp"

namespace qkd {

inline constexpr std::uint64_t kSelfcheckSeed = 20240917;

/// Deviations gathered by the built-in consistency battery. All sampling is
/// driven by the seed, so repeated runs produce identical reports.
struct SelfcheckReport {
  double identity_max_dev = 0.0;       // conjugation identities, limit 1e-12
  double twirl_qber_max_dev = 0.0;     // QBER invariance, limit 1e-10
  double twirl_offdiag_max = 0.0;      // Bell coherences after twirl, limit 1e-12
  double twirl_g2_asym_max = 0.0;      // |lam01 - lam10| after twirl, limit 1e-12
  double twirl_idem_max_dev = 0.0;     // twirl o twirl vs twirl, limit 1e-12
  int oracle_samples = 0;
  int oracle_mismatches = 0;           // closed-form vs eigensolve verdicts, limit 0

  bool pass() const;
  std::string format() const;
};

SelfcheckReport run_selfcheck(std::uint64_t seed = kSelfcheckSeed,
                              const QubitOps& ops = canonical_qubit_ops());

}  // namespace qkd
