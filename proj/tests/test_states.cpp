#include <doctest.h>

#include <cmath>

#include "qkd/sampling.hpp"
#include "qkd/states.hpp"
#include "qkd/twirl.hpp"
#include "support.hpp"

using namespace qkd;

TEST_CASE("operator constants satisfy their algebra") {
  CHECK(Mat::max_abs_diff(ops::hadamard() * ops::hadamard(), ops::identity2()) < 1e-15);
  CHECK(ops::pauli_x() * ops::pauli_x() == ops::identity2());
  CHECK(ops::pauli_y() * ops::pauli_y() == ops::identity2());
  CHECK(ops::pauli_z() * ops::pauli_z() == ops::identity2());

  // H X H = Z and H Z H = X: the two protocol bases are conjugate.
  CHECK(Mat::max_abs_diff(ops::hadamard() * ops::pauli_x() * ops::hadamard(), ops::pauli_z()) <
        1e-15);
}

TEST_CASE("Bell vectors are orthonormal and Phi+ matches its definition") {
  const auto& basis = ops::bell_basis();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Complex overlap = (basis[i].adjoint() * basis[j])(0, 0);
      CHECK(std::abs(overlap - (i == j ? 1.0 : 0.0)) < 1e-15);
    }
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(ops::bell_phi_plus() == Mat(4, 1, {s, 0.0, 0.0, s}));
}

TEST_CASE("DensityOperator validates its invariants") {
  CHECK_NOTHROW(DensityOperator(0.25 * Mat::identity(4)));
  CHECK_NOTHROW(DensityOperator(0.5 * Mat::identity(2)));
  // Wrong trace.
  CHECK_THROWS_AS(DensityOperator(Mat::identity(4)), std::invalid_argument);
  // Not Hermitian.
  CHECK_THROWS_AS(DensityOperator(Mat(2, 2, {0.5, 0.3, 0.1, 0.5})), std::invalid_argument);
  // Negative eigenvalue.
  CHECK_THROWS_AS(DensityOperator(Mat(2, 2, {1.5, 0.0, 0.0, -0.5})), std::invalid_argument);
  // Unsupported dimension.
  CHECK_THROWS_AS(DensityOperator(Mat::identity(3)), std::invalid_argument);
}

TEST_CASE("joint outcome probabilities of named states") {
  const DensityOperator phi(ops::ket_bra(ops::bell_phi_plus()));

  const ProbTable z = joint_outcome_probs(phi, Basis::z);
  CHECK(z.p[0][0] == doctest::Approx(0.5).epsilon(0).scale(1e-12));
  CHECK(z.p[1][1] == doctest::Approx(0.5).epsilon(0).scale(1e-12));
  CHECK(std::abs(z.p[0][1]) < 1e-12);
  CHECK(std::abs(z.p[1][0]) < 1e-12);

  // Phi+ is invariant under H (x) H, so the X-basis table is identical.
  const ProbTable x = joint_outcome_probs(phi, Basis::x);
  CHECK(x.p[0][0] == doctest::Approx(0.5).epsilon(0).scale(1e-12));
  CHECK(x.p[1][1] == doctest::Approx(0.5).epsilon(0).scale(1e-12));
  CHECK(std::abs(x.p[0][1]) < 1e-12);

  const DensityOperator mixed(0.25 * Mat::identity(4));
  for (Basis b : {Basis::z, Basis::x}) {
    const ProbTable t = joint_outcome_probs(mixed, b);
    for (int l = 0; l < 2; ++l)
      for (int m = 0; m < 2; ++m) CHECK(t.p[l][m] == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("outcome tables are normalized and marginalize to the reduced states") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityOperator rho = random_density_operator(rng);
    for (Basis b : {Basis::z, Basis::x}) {
      const ProbTable t = joint_outcome_probs(rho, b);
      double sum = 0.0;
      for (int l = 0; l < 2; ++l)
        for (int m = 0; m < 2; ++m) {
          CHECK(t.p[l][m] > -1e-12);
          sum += t.p[l][m];
        }
      CHECK(std::abs(sum - 1.0) < 1e-12);

      const Mat red_a = partial_trace(rho.mat(), Subsystem::B);
      const Mat red_b = partial_trace(rho.mat(), Subsystem::A);
      for (int l = 0; l < 2; ++l) {
        const double row = t.p[l][0] + t.p[l][1];
        const double col = t.p[0][l] + t.p[1][l];
        const double marg_a = (ops::basis_projector(b, l) * red_a).trace().real();
        const double marg_b = (ops::basis_projector(b, l) * red_b).trace().real();
        CHECK(std::abs(row - marg_a) < 1e-12);
        CHECK(std::abs(col - marg_b) < 1e-12);
      }
    }
  }
}

TEST_CASE("qber of named states") {
  CHECK(qber_of_state(DensityOperator(ops::ket_bra(ops::bell_phi_plus()))) ==
        doctest::Approx(0.0).epsilon(0).scale(1e-12));
  CHECK(qber_of_state(DensityOperator(ops::ket_bra(ops::bell_psi_minus()))) ==
        doctest::Approx(1.0).epsilon(0).scale(1e-12));
  // Brute-force over all four outcomes in both bases gives 1/2.
  CHECK(qber_of_state(DensityOperator(0.25 * Mat::identity(4))) ==
        doctest::Approx(0.5).epsilon(0).scale(1e-12));
}

TEST_CASE("qber agrees with an independent brute-force evaluation") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const DensityOperator rho = random_density_operator(rng);
    const double expected = testsupport::brute_force_qber(testsupport::to_grid(rho.mat()));
    CHECK(std::abs(qber_of_state(rho) - expected) < 1e-12);
  }
}

TEST_CASE("qber is invariant under exchanging the two subsystems") {
  // SWAP permutes |ab> -> |ba|.
  Mat swap(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityOperator rho = random_density_operator(rng);
    const DensityOperator flipped = DensityOperator::unchecked(swap * rho.mat() * swap);
    CHECK(std::abs(qber_of_state(rho) - qber_of_state(flipped)) < 1e-12);
  }
}

TEST_CASE("qber of Bell weight vectors") {
  CHECK(qber_of_bell_diagonal(BellDiagonal(1, 0, 0, 0)) == 0.0);
  CHECK(qber_of_bell_diagonal(BellDiagonal(0.25, 0.25, 0.25, 0.25)) == 0.5);
  // Twirl of |00><00|; cross-checked against the measurement definition below.
  CHECK(qber_of_bell_diagonal(BellDiagonal(0.5, 0.25, 0.25, 0.0)) == 0.25);

  Mat ket00(4, 1);
  ket00(0, 0) = 1.0;
  CHECK(qber_of_state(DensityOperator(ops::ket_bra(ket00))) ==
        doctest::Approx(0.25).epsilon(0).scale(1e-12));
}

TEST_CASE("qber_of_bell_diagonal matches the reconstructed state for random weights") {
  Rng rng(37);
  for (int trial = 0; trial < 500; ++trial) {
    const BellDiagonal lam = random_bell_diagonal(rng, trial % 2 == 0);
    CHECK(std::abs(qber_of_bell_diagonal(lam) - qber_of_state(reconstruct(lam))) < 1e-12);
  }
}

TEST_CASE("fidelity with Phi+") {
  const DensityOperator phi(ops::ket_bra(ops::bell_phi_plus()));
  CHECK(fidelity_phi_plus(phi) == doctest::Approx(1.0).epsilon(0).scale(1e-12));
  CHECK(fidelity_phi_plus(DensityOperator(0.25 * Mat::identity(4))) ==
        doctest::Approx(0.25).epsilon(0).scale(1e-12));
  const DensityOperator werner(0.6 * phi.mat() + 0.1 * Mat::identity(4));
  CHECK(fidelity_phi_plus(werner) == doctest::Approx(0.7).epsilon(0).scale(1e-12));
}

TEST_CASE("density operators round-trip exactly through JSON") {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityOperator rho = random_density_operator(rng);
    nlohmann::json j = rho;
    const nlohmann::json reparsed = nlohmann::json::parse(j.dump());
    const DensityOperator back = density_operator_from_json(reparsed);
    CHECK(back.mat() == rho.mat());
  }
  CHECK_THROWS_AS(density_operator_from_json(nlohmann::json{{"dim", 4}}),
                  std::invalid_argument);
}

TEST_CASE("Bell weight vectors validate and round-trip through JSON") {
  CHECK_THROWS_AS(BellDiagonal(0.5, 0.5, 0.5, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(BellDiagonal(0.5, 0.4, 0.2, 0.1), std::invalid_argument);
  // Clamping of -1e-13 to zero.
  const BellDiagonal clamped(0.6, 0.4 + 1e-13, -1e-13, 0.0);
  CHECK(clamped.lam01() == 0.0);

  const BellDiagonal lam(0.4, 0.3, 0.2, 0.1);
  nlohmann::json j = lam;
  const BellDiagonal back = bell_diagonal_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.weights() == lam.weights());
}
