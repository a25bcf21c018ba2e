#pragma once

#include <array>
#include <complex>
#include <initializer_list>
#include <vector>

namespace qkd {

using Complex = std::complex<double>;

namespace tol {
// Centralized tolerances. Every quantity handled by this library is O(1),
// so absolute thresholds are safe.
inline constexpr double kHermTol = 1e-12;       // max elementwise |m - m^dag|
inline constexpr double kEigTol = 1e-10;        // eigenvalue accuracy target
inline constexpr double kPsdTol = -1e-10;       // eigenvalues above this count as nonnegative
inline constexpr double kJacobiOffTol = 1e-13;  // off-diagonal Frobenius stopping norm
inline constexpr int kJacobiMaxSweeps = 100;
}  // namespace tol

/// Dense complex matrix with inline storage, capped at 16 entries.
/// Everything in this library lives on one or two qubits, so 4x4 is the
/// largest shape ever needed. Entries are row-major; constructors reject
/// non-finite values.
class Mat {
 public:
  static constexpr int kMaxElems = 16;

  Mat() = default;
  Mat(int rows, int cols);
  Mat(int rows, int cols, std::initializer_list<Complex> entries);
  Mat(int rows, int cols, const std::vector<Complex>& entries);

  static Mat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int size() const { return rows_ * cols_; }

  Complex& operator()(int r, int c) { return a_[r * cols_ + c]; }
  const Complex& operator()(int r, int c) const { return a_[r * cols_ + c]; }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat& operator+=(const Mat& o);
  friend Mat operator*(Complex s, const Mat& m);
  friend Mat operator*(double s, const Mat& m);

  Mat adjoint() const;
  Complex trace() const;

  bool operator==(const Mat& o) const;
  bool is_hermitian(double tolerance = tol::kHermTol) const;

  static double max_abs_diff(const Mat& a, const Mat& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::array<Complex, kMaxElems> a_{};

  void check_shape_compatible(const Mat& o) const;
};

enum class Subsystem { A, B };

/// Kronecker product; result dimensions multiply (and must stay within 4x4).
Mat kron(const Mat& a, const Mat& b);

/// Trace out one qubit of a 4x4 two-qubit operator. Convention: qubit A is
/// the high-order index (row = 2a + b).
Mat partial_trace(const Mat& m, Subsystem traced_out);

/// Transpose the second (B) index pair of a 4x4 operator. Involution; trace
/// and Hermiticity are preserved exactly (entry permutation + conjugation).
Mat partial_transpose_b(const Mat& m);

/// Eigenvalues of a Hermitian matrix, ascending. Cyclic Jacobi with complex
/// rotations, iterated until the off-diagonal Frobenius norm drops below
/// tol::kJacobiOffTol (at most tol::kJacobiMaxSweeps sweeps). Throws
/// std::invalid_argument on non-Hermitian input and std::runtime_error if
/// the sweep cap is hit.
std::vector<double> hermitian_eigenvalues(const Mat& m);

}  // namespace qkd
