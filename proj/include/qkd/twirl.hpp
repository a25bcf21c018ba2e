#pragma once

#include <array>
#include <vector>

#include "qkd/bell_diagonal.hpp"
#include "qkd/states.hpp"

namespace qkd {

enum class GroupElementName { g1, g2, g3, g4, h1, h2 };

/// One element of the twirling groups, carried as its 4x4 unitary
/// representation on the qubit pair.
struct GroupElement {
  GroupElementName name;
  Mat unitary;
};

/// G1 = {X(x)X, Z(x)Z, XZ(x)XZ, 1(x)1}; its common eigenbasis is the Bell
/// basis. Note XZ(x)XZ equals -Y(x)Y exactly.
const std::array<GroupElement, 4>& group_g1();

/// G2 = {H(x)H, 1(x)1}; the Hadamard pair swaps Phi- and Psi+.
const std::array<GroupElement, 2>& group_g2();

/// Average of rho over G1 x G2 (eight conjugations). The output is
/// Bell-diagonal with lam01 == lam10 and carries the same QBER as the input.
DensityOperator twirl(const DensityOperator& rho);

/// Bell-basis weights of a (numerically) Bell-diagonal state. Throws
/// NotBellDiagonalError if any Bell-basis coherence exceeds 1e-10.
BellDiagonal bell_diagonal_of(const DensityOperator& rho);

/// Convex sum of Bell projectors with the given weights.
DensityOperator reconstruct(const BellDiagonal& lam);

/// The single-qubit operator set the conjugation identities are built from.
/// Tests substitute a corrupted set as a negative control.
struct QubitOps {
  Mat h, x, z;
};

QubitOps canonical_qubit_ops();

struct SymmetryIdentityCase {
  int family;  // 0: X-conjugation, 1: Z-conjugation, 2: XZ-conjugation
  int b;
  int l;
  double deviation;
};

struct SymmetryIdentityReport {
  std::vector<SymmetryIdentityCase> cases;
  double max_deviation = 0.0;
};

/// Evaluates the three conjugation-identity families for b, l in {0,1}:
///   X H^b |l><l| H^b X  == H^b |l+1+b><l+1+b| H^b
///   Z H^b |l><l| H^b Z  == H^b |l+b><l+b| H^b
///   XZ H^b |l><l| H^b ZX == H^b |l+1><l+1| H^b     (indices mod 2)
/// Report-only; callers compare max_deviation against tolerance.
SymmetryIdentityReport verify_symmetry_identities(const QubitOps& ops = canonical_qubit_ops());

}  // namespace qkd
