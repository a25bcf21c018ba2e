#pragma once

#include <array>

#include <json.hpp>

#include "qkd/bell_diagonal.hpp"
#include "qkd/matrix.hpp"

namespace qkd {

/// Measurement basis selector: b = 0 is the Z eigenbasis, b = 1 the
/// Hadamard-rotated (X) eigenbasis.
enum class Basis : int { z = 0, x = 1 };

namespace ops {

// Single-qubit operators in the Z eigenbasis.
const Mat& hadamard();
const Mat& pauli_x();
const Mat& pauli_y();
const Mat& pauli_z();
const Mat& identity2();
const Mat& identity4();

// Bell vectors as 4x1 unit columns, ordered (Phi+, Phi-, Psi+, Psi-) to
// match the BellDiagonal weight order.
const std::array<Mat, 4>& bell_basis();
const Mat& bell_phi_plus();
const Mat& bell_phi_minus();
const Mat& bell_psi_plus();
const Mat& bell_psi_minus();

/// |v><v| for a column vector.
Mat ket_bra(const Mat& v);

/// H^b |l><l| H^b, the rank-one projector measured in basis b.
Mat basis_projector(Basis b, int l);

}  // namespace ops

/// Trace-one positive Hermitian operator on one or two qubits; the universal
/// state currency. The checked constructor enforces Hermiticity within
/// tol::kHermTol, unit trace within 1e-12 and eigenvalues >= tol::kPsdTol.
class DensityOperator {
 public:
  explicit DensityOperator(Mat m);

  /// Skips validation; for internal construction of states that are valid by
  /// construction (convex mixtures, unitary conjugates, channel outputs).
  static DensityOperator unchecked(Mat m);

  const Mat& mat() const { return m_; }
  int dim() const { return m_.rows(); }

 private:
  struct UncheckedTag {};
  DensityOperator(Mat m, UncheckedTag) : m_(std::move(m)) {}
  Mat m_;
};

struct ProbTable {
  // p[l][m]: Alice reads l, Bob reads m.
  std::array<std::array<double, 2>, 2> p;
};

/// Joint outcome distribution of measuring both qubits of rho in basis b.
ProbTable joint_outcome_probs(const DensityOperator& rho, Basis b);

/// Average error probability over both measurement bases:
/// (1/2) sum_b sum_l p_b(l, l xor 1).
double qber_of_state(const DensityOperator& rho);

/// <Phi+| rho |Phi+>.
double fidelity_phi_plus(const DensityOperator& rho);

// JSON form: {"dim": d, "entries": [[re, im], ...]} row-major; exact
// round-trip.
void to_json(nlohmann::json& j, const DensityOperator& rho);
DensityOperator density_operator_from_json(const nlohmann::json& j);

}  // namespace qkd
