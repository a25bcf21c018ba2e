#include <doctest.h>

#include <cmath>

#include "qkd/matrix.hpp"
#include "qkd/states.hpp"
#include "support.hpp"

using namespace qkd;

TEST_CASE("Mat constructors reject bad input") {
  CHECK_THROWS_AS(Mat(5, 5), std::invalid_argument);  // 25 entries > capacity
  CHECK_THROWS_AS(Mat(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(Mat(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Mat(2, 2, {1.0, 0.0, 0.0, inf}), std::invalid_argument);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Mat(2, 2, {Complex(0.0, nan), 0.0, 0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("kron identity and diagonal cases") {
  CHECK(kron(Mat::identity(2), Mat::identity(2)) == Mat::identity(4));

  const Mat zz = kron(ops::pauli_z(), ops::pauli_z());
  const Mat diag(4, 4, {1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1});
  CHECK(zz == diag);
}

TEST_CASE("kron of X with X is the antidiagonal ones matrix") {
  // By-hand 4x4 expansion of X (x) X.
  const Mat expected(4, 4, {0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0});
  CHECK(kron(ops::pauli_x(), ops::pauli_x()) == expected);
}

TEST_CASE("kron is associative on integer matrices") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Mat a(2, 1), b(1, 2), c(2, 2);
    for (int i = 0; i < 2; ++i) {
      a(i, 0) = static_cast<double>(rng.uniform_below(7)) - 3.0;
      b(0, i) = static_cast<double>(rng.uniform_below(7)) - 3.0;
      for (int j = 0; j < 2; ++j) c(i, j) = static_cast<double>(rng.uniform_below(7)) - 3.0;
    }
    CHECK(kron(kron(a, b), c) == kron(a, kron(b, c)));
  }
}

TEST_CASE("kron rejects shapes beyond the 4x4 cap") {
  CHECK_THROWS_AS(kron(Mat::identity(4), Mat::identity(2)), std::invalid_argument);
}

TEST_CASE("partial trace of named states") {
  const Mat half_i2 = 0.5 * Mat::identity(2);

  const Mat phi = ops::ket_bra(ops::bell_phi_plus());
  CHECK(Mat::max_abs_diff(partial_trace(phi, Subsystem::B), half_i2) < 1e-15);
  CHECK(Mat::max_abs_diff(partial_trace(phi, Subsystem::A), half_i2) < 1e-15);

  Mat ket00(4, 1);
  ket00(0, 0) = 1.0;
  const Mat rho00 = ops::ket_bra(ket00);
  Mat proj0(2, 2, {1, 0, 0, 0});
  CHECK(partial_trace(rho00, Subsystem::A) == proj0);

  CHECK(Mat::max_abs_diff(partial_trace(0.25 * Mat::identity(4), Subsystem::B), half_i2) <
        1e-15);
}

TEST_CASE("partial trace preserves the total trace") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat m = testsupport::random_hermitian(rng, 4);
    for (Subsystem s : {Subsystem::A, Subsystem::B}) {
      CHECK(std::abs(partial_trace(m, s).trace() - m.trace()) < 1e-12);
    }
  }
  CHECK_THROWS_AS(partial_trace(Mat::identity(2), Subsystem::A), std::invalid_argument);
}

TEST_CASE("partial transpose is an involution preserving trace and Hermiticity") {
  const Mat quarter_i4 = 0.25 * Mat::identity(4);
  CHECK(partial_transpose_b(quarter_i4) == quarter_i4);

  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat m = testsupport::random_hermitian(rng, 4);
    const Mat pt = partial_transpose_b(m);
    CHECK(partial_transpose_b(pt) == m);          // exact entry permutation
    CHECK(pt.trace() == m.trace());               // diagonal untouched
    CHECK(pt.is_hermitian(0.0));                  // exact, not just within tolerance
  }
  CHECK_THROWS_AS(partial_transpose_b(Mat::identity(2)), std::invalid_argument);
}

TEST_CASE("partial transpose of Phi+ has spectrum (-1/2, 1/2, 1/2, 1/2)") {
  const Mat pt = partial_transpose_b(ops::ket_bra(ops::bell_phi_plus()));
  const std::vector<double> ev = hermitian_eigenvalues(pt);
  REQUIRE(ev.size() == 4);
  CHECK(ev[0] == doctest::Approx(-0.5).epsilon(0).scale(1e-12));
  CHECK(ev[1] == doctest::Approx(0.5).epsilon(0).scale(1e-12));
  CHECK(ev[2] == doctest::Approx(0.5).epsilon(0).scale(1e-12));
  CHECK(ev[3] == doctest::Approx(0.5).epsilon(0).scale(1e-12));
}

TEST_CASE("hermitian_eigenvalues on closed-form cases") {
  const Mat d(4, 4, {3, 0, 0, 0, 0, 1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0});
  const std::vector<double> ev = hermitian_eigenvalues(d);
  CHECK(ev == std::vector<double>({0.0, 1.0, 2.0, 3.0}));

  const std::vector<double> pauli = hermitian_eigenvalues(ops::pauli_x());
  CHECK(std::abs(pauli[0] + 1.0) < 1e-13);
  CHECK(std::abs(pauli[1] - 1.0) < 1e-13);

  const std::vector<double> y = hermitian_eigenvalues(ops::pauli_y());
  CHECK(std::abs(y[0] + 1.0) < 1e-13);
  CHECK(std::abs(y[1] - 1.0) < 1e-13);
}

TEST_CASE("eigenvalue sum matches trace and spectrum is unitarily invariant") {
  Rng rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat m = testsupport::random_hermitian(rng, 4);
    const std::vector<double> ev = hermitian_eigenvalues(m);
    double sum = 0.0;
    for (double e : ev) sum += e;
    CHECK(std::abs(sum - m.trace().real()) < 1e-10);

    const Mat u = testsupport::random_unitary_from_constants(rng);
    const std::vector<double> rotated = hermitian_eigenvalues(u * m * u.adjoint());
    for (int i = 0; i < 4; ++i) CHECK(std::abs(ev[i] - rotated[i]) < 1e-10);
  }
}

TEST_CASE("hermitian_eigenvalues rejects non-Hermitian input") {
  const Mat m(2, 2, {0, 1, 0, 0});
  CHECK_THROWS_AS(hermitian_eigenvalues(m), std::invalid_argument);
}
