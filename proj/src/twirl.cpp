#include "qkd/twirl.hpp"

#include <cmath>
#include <utility>

#include "qkd/errors.hpp"

namespace qkd {

const std::array<GroupElement, 4>& group_g1() {
  static const std::array<GroupElement, 4> g = {
      GroupElement{GroupElementName::g1, kron(ops::pauli_x(), ops::pauli_x())},
      GroupElement{GroupElementName::g2, kron(ops::pauli_z(), ops::pauli_z())},
      GroupElement{GroupElementName::g3,
                   kron(ops::pauli_x() * ops::pauli_z(), ops::pauli_x() * ops::pauli_z())},
      GroupElement{GroupElementName::g4, ops::identity4()},
  };
  return g;
}

const std::array<GroupElement, 2>& group_g2() {
  static const std::array<GroupElement, 2> g = {
      GroupElement{GroupElementName::h1, kron(ops::hadamard(), ops::hadamard())},
      GroupElement{GroupElementName::h2, ops::identity4()},
  };
  return g;
}

DensityOperator twirl(const DensityOperator& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("twirl: expected a two-qubit state");
  Mat acc(4, 4);
  for (const GroupElement& h : group_g2()) {
    for (const GroupElement& g : group_g1()) {
      const Mat w = h.unitary * g.unitary;
      acc += w * rho.mat() * w.adjoint();
    }
  }
  return DensityOperator(0.125 * acc);
}

BellDiagonal bell_diagonal_of(const DensityOperator& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("bell_diagonal_of: expected a two-qubit state");
  }
  const auto& basis = ops::bell_basis();
  std::array<double, 4> lam{};
  double max_coherence = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Complex overlap = (basis[i].adjoint() * rho.mat() * basis[j])(0, 0);
      if (i == j) {
        lam[i] = overlap.real();
      } else {
        max_coherence = std::max(max_coherence, std::abs(overlap));
      }
    }
  }
  if (max_coherence > 1e-10) {
    throw NotBellDiagonalError("bell_diagonal_of: Bell-basis coherence " +
                               std::to_string(max_coherence));
  }
  return BellDiagonal(lam[0], lam[1], lam[2], lam[3]);
}

DensityOperator reconstruct(const BellDiagonal& lam) {
  const auto& basis = ops::bell_basis();
  Mat acc(4, 4);
  for (int i = 0; i < 4; ++i) acc += lam.weights()[i] * ops::ket_bra(basis[i]);
  return DensityOperator(std::move(acc));
}

QubitOps canonical_qubit_ops() {
  return QubitOps{ops::hadamard(), ops::pauli_x(), ops::pauli_z()};
}

namespace {

Mat rotated_projector(const QubitOps& o, int b, int l) {
  Mat ket(2, 1);
  ket(l & 1, 0) = 1.0;
  Mat proj = ket * ket.adjoint();
  if (b == 1) proj = o.h * proj * o.h;
  return proj;
}

}  // namespace

SymmetryIdentityReport verify_symmetry_identities(const QubitOps& o) {
  SymmetryIdentityReport report;
  for (int family = 0; family < 3; ++family) {
    for (int b = 0; b < 2; ++b) {
      for (int l = 0; l < 2; ++l) {
        const Mat proj = rotated_projector(o, b, l);
        Mat lhs(2, 2);
        int shifted = 0;
        switch (family) {
          case 0:
            lhs = o.x * proj * o.x;
            shifted = l ^ 1 ^ b;
            break;
          case 1:
            lhs = o.z * proj * o.z;
            shifted = l ^ b;
            break;
          default:
            lhs = o.x * o.z * proj * o.z * o.x;
            shifted = l ^ 1;
            break;
        }
        const Mat rhs = rotated_projector(o, b, shifted);
        const double dev = Mat::max_abs_diff(lhs, rhs);
        report.cases.push_back({family, b, l, dev});
        report.max_deviation = std::max(report.max_deviation, dev);
      }
    }
  }
  return report;
}

}  // namespace qkd
