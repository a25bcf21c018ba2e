#pragma once

#include <iosfwd>
#include <vector>

#include "qkd/bell_diagonal.hpp"
#include "qkd/states.hpp"

namespace qkd {

enum class Verdict { Entangled, Separable, Infeasible };

const char* to_string(Verdict v);

/// Outcome of a separability test. For two qubits the partial-transpose
/// criterion is exact, so Entangled/Separable verdicts are definitive.
/// slack13 = (lam01 + lam11) - |lam00 - lam10| and
/// slack14 = (lam00 + lam10) - |lam01 - lam11| are the margins of the two
/// closed-form inequalities; a state is separable exactly when both are
/// nonnegative (boundary counted separable, threshold -1e-12).
struct SeparabilityVerdict {
  Verdict verdict;
  double min_pt_eigenvalue;
  double slack13;
  double slack14;
};

/// Peres-Horodecki test by explicit eigensolve of the partial transpose.
/// Entangled iff the minimum eigenvalue falls below tol::kPsdTol. The slack
/// fields are evaluated on the Bell-basis diagonal of rho; they coincide
/// with the closed-form margins whenever rho is Bell-diagonal.
SeparabilityVerdict ppt_verdict_numeric(const DensityOperator& rho);

/// Closed-form test on Bell weights. The partial-transpose spectrum of a
/// Bell mixture is {(a+b +- (c-d))/2, (c+d +- (a-b))/2} with
/// (a,b,c,d) = (lam00, lam10, lam01, lam11), so the minimum eigenvalue is
/// min(slack13, slack14)/2.
SeparabilityVerdict ppt_verdict_bell(const BellDiagonal& lam);

/// Coordinates of the disturbance/Bell-asymmetry plane: D is the QBER,
/// G = lam00 - lam10. Together with normalization and lam01 == lam10 they
/// imply lam00 = (1-D+G)/2, lam01 = lam10 = (1-D-G)/2, lam11 = (3D+G-1)/2.
struct RegionPoint {
  double d;
  double g;
};

struct ImpliedWeights {
  double lam00, lam10, lam01, lam11;
  bool feasible;  // all weights >= -1e-12
};

ImpliedWeights implied_weights(const RegionPoint& p);

/// Infeasible when an implied weight is negative beyond tolerance, otherwise
/// the closed-form verdict of the implied weights. Feasible points are
/// separable exactly when D >= |G| and 1-D >= |1-2D-G|.
SeparabilityVerdict classify_region(const RegionPoint& p);

/// The separable reference family defined for D in [1/4, 3/4]:
///   sigma(D) = (4D-1) 1/4
///            + |1-2D| sum_k [ (|kk><kk|)/2 + sigma_c(k) (x) sigma_c(k) ]
/// with sigma_c(k) = (|0><k| + |1><1+k|)/2. The printed form normalizes
/// only for D <= 1/2; larger D is reached by conjugating sigma(1-D) with
/// 1(x)Y, the local unitary that swaps the Phi+ and Psi- sectors and maps
/// QBER D' to 1-D'. In Bell weights the whole family reads
/// (3/4-D, 1/4, 1/4, D-1/4), the line joining the two threshold points.
DensityOperator separable_family(double d);

struct SweepRow {
  double d;
  double g;
  Verdict verdict;
  double min_pt_eig;  // closed-form value, defined for infeasible rows too
  double slack13;
  double slack14;
};

struct SweepResult {
  std::vector<double> d_values;
  std::vector<double> g_values;
  std::vector<SweepRow> rows;  // ordered by D, then G
  long feasible_points = 0;
  long separable_points = 0;
  // Embedded checks, all required to hold:
  bool low_region_all_entangled = false;   // every feasible D < 1/4 point
  bool high_region_all_entangled = false;  // every feasible D > 3/4 point
  bool separable_exists_per_mid_d = false; // each grid D in [1/4, 3/4]
  bool numeric_agreement = false;          // closed form vs eigensolve, all feasible rows
  bool reflection_symmetric = false;       // separable counts equal at D and 1-D
  bool all_ok() const;
};

/// Grid sweep of the (D, G) plane with the given step (0 < step <= 0.01).
/// The D axis always contains 0.25 and 0.75 and the G axis +-0.25, where the
/// separable region pinches to single points.
SweepResult threshold_scan(double step);

/// Header `D,G,verdict,min_pt_eig,slack13,slack14`; floats with 9
/// significant digits; byte-stable across runs.
void write_sweep_csv(const SweepResult& result, std::ostream& out);

}  // namespace qkd
