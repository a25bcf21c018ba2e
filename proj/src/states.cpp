#include "qkd/states.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qkd {

namespace ops {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

const Mat& hadamard() {
  static const Mat m(2, 2, {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2});
  return m;
}

const Mat& pauli_x() {
  static const Mat m(2, 2, {0.0, 1.0, 1.0, 0.0});
  return m;
}

const Mat& pauli_y() {
  static const Mat m(2, 2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0});
  return m;
}

const Mat& pauli_z() {
  static const Mat m(2, 2, {1.0, 0.0, 0.0, -1.0});
  return m;
}

const Mat& identity2() {
  static const Mat m = Mat::identity(2);
  return m;
}

const Mat& identity4() {
  static const Mat m = Mat::identity(4);
  return m;
}

const std::array<Mat, 4>& bell_basis() {
  static const std::array<Mat, 4> basis = {
      Mat(4, 1, {kInvSqrt2, 0.0, 0.0, kInvSqrt2}),    // Phi+
      Mat(4, 1, {kInvSqrt2, 0.0, 0.0, -kInvSqrt2}),   // Phi-
      Mat(4, 1, {0.0, kInvSqrt2, kInvSqrt2, 0.0}),    // Psi+
      Mat(4, 1, {0.0, kInvSqrt2, -kInvSqrt2, 0.0}),   // Psi-
  };
  return basis;
}

const Mat& bell_phi_plus() { return bell_basis()[0]; }
const Mat& bell_phi_minus() { return bell_basis()[1]; }
const Mat& bell_psi_plus() { return bell_basis()[2]; }
const Mat& bell_psi_minus() { return bell_basis()[3]; }

Mat ket_bra(const Mat& v) {
  if (v.cols() != 1) throw std::invalid_argument("ket_bra: expected a column vector");
  return v * v.adjoint();
}

Mat basis_projector(Basis b, int l) {
  if (l != 0 && l != 1) throw std::invalid_argument("basis_projector: l must be 0 or 1");
  Mat ket(2, 1);
  ket(l, 0) = 1.0;
  Mat proj = ket_bra(ket);
  if (b == Basis::x) proj = hadamard() * proj * hadamard();
  return proj;
}

}  // namespace ops

DensityOperator::DensityOperator(Mat m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || (m_.rows() != 2 && m_.rows() != 4)) {
    throw std::invalid_argument("DensityOperator: expected a 2x2 or 4x4 matrix");
  }
  if (!m_.is_hermitian()) {
    throw std::invalid_argument("DensityOperator: matrix not Hermitian within tolerance");
  }
  if (std::abs(m_.trace() - Complex(1.0, 0.0)) > 1e-12) {
    throw std::invalid_argument("DensityOperator: trace differs from one");
  }
  const std::vector<double> ev = hermitian_eigenvalues(m_);
  if (ev.front() < tol::kPsdTol) {
    throw std::invalid_argument("DensityOperator: negative eigenvalue beyond tolerance");
  }
}

DensityOperator DensityOperator::unchecked(Mat m) {
  return DensityOperator(std::move(m), UncheckedTag{});
}

ProbTable joint_outcome_probs(const DensityOperator& rho, Basis b) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("joint_outcome_probs: expected a two-qubit state");
  }
  ProbTable t{};
  for (int l = 0; l < 2; ++l) {
    for (int m = 0; m < 2; ++m) {
      const Mat effect = kron(ops::basis_projector(b, l), ops::basis_projector(b, m));
      t.p[l][m] = (effect * rho.mat()).trace().real();
    }
  }
  return t;
}

double qber_of_state(const DensityOperator& rho) {
  double d = 0.0;
  for (Basis b : {Basis::z, Basis::x}) {
    const ProbTable t = joint_outcome_probs(rho, b);
    d += t.p[0][1] + t.p[1][0];
  }
  return 0.5 * d;
}

double qber_of_bell_diagonal(const BellDiagonal& lam) {
  return lam.lam11() + 0.5 * (lam.lam01() + lam.lam10());
}

double fidelity_phi_plus(const DensityOperator& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("fidelity_phi_plus: expected a two-qubit state");
  }
  const Mat& v = ops::bell_phi_plus();
  return (v.adjoint() * rho.mat() * v)(0, 0).real();
}

BellDiagonal::BellDiagonal(double l00, double l10, double l01, double l11)
    : lam_{l00, l10, l01, l11} {
  double sum = 0.0;
  for (double& l : lam_) {
    if (l < -1e-12) {
      throw std::invalid_argument("BellDiagonal: negative weight beyond tolerance");
    }
    if (l < 0.0) l = 0.0;
    sum += l;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("BellDiagonal: weights do not sum to one");
  }
}

bool BellDiagonal::g2_symmetric(double tolerance) const {
  return std::abs(lam_[2] - lam_[1]) <= tolerance;
}

void to_json(nlohmann::json& j, const BellDiagonal& lam) {
  j = nlohmann::json::array({lam.lam00(), lam.lam10(), lam.lam01(), lam.lam11()});
}

BellDiagonal bell_diagonal_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw std::invalid_argument("BellDiagonal: expected a JSON array of four weights");
  }
  return BellDiagonal(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
                      j[3].get<double>());
}

void to_json(nlohmann::json& j, const DensityOperator& rho) {
  nlohmann::json entries = nlohmann::json::array();
  const Mat& m = rho.mat();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      entries.push_back({m(r, c).real(), m(r, c).imag()});
    }
  j = nlohmann::json{{"dim", rho.dim()}, {"entries", entries}};
}

DensityOperator density_operator_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw std::invalid_argument("DensityOperator: expected {dim, entries}");
  }
  const int dim = j.at("dim").get<int>();
  const auto& entries = j.at("entries");
  if (!entries.is_array() || static_cast<int>(entries.size()) != dim * dim) {
    throw std::invalid_argument("DensityOperator: entry count does not match dim");
  }
  std::vector<Complex> v;
  v.reserve(entries.size());
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2) {
      throw std::invalid_argument("DensityOperator: entries must be [re, im] pairs");
    }
    v.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return DensityOperator(Mat(dim, dim, v));
}

}  // namespace qkd
