#include "qkd/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qkd {

namespace {

void check_finite(const Complex& v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw std::invalid_argument("Mat: non-finite entry");
  }
}

void check_dims(int rows, int cols) {
  if (rows < 1 || cols < 1 || rows * cols > Mat::kMaxElems) {
    throw std::invalid_argument("Mat: unsupported shape " + std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
}

}  // namespace

Mat::Mat(int rows, int cols) : rows_(rows), cols_(cols) { check_dims(rows, cols); }

Mat::Mat(int rows, int cols, std::initializer_list<Complex> entries) : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  if (static_cast<int>(entries.size()) != rows * cols) {
    throw std::invalid_argument("Mat: entry count does not match shape");
  }
  int i = 0;
  for (const Complex& v : entries) {
    check_finite(v);
    a_[i++] = v;
  }
}

Mat::Mat(int rows, int cols, const std::vector<Complex>& entries) : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  if (static_cast<int>(entries.size()) != rows * cols) {
    throw std::invalid_argument("Mat: entry count does not match shape");
  }
  for (int i = 0; i < rows * cols; ++i) {
    check_finite(entries[i]);
    a_[i] = entries[i];
  }
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

void Mat::check_shape_compatible(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw std::invalid_argument("Mat: shape mismatch");
  }
}

Mat Mat::operator+(const Mat& o) const {
  check_shape_compatible(o);
  Mat r(rows_, cols_);
  for (int i = 0; i < size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  check_shape_compatible(o);
  Mat r(rows_, cols_);
  for (int i = 0; i < size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

Mat& Mat::operator+=(const Mat& o) {
  check_shape_compatible(o);
  for (int i = 0; i < size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("Mat: product shape mismatch");
  Mat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const Complex v = (*this)(i, k);
      if (v == Complex{}) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
    }
  }
  return r;
}

Mat operator*(Complex s, const Mat& m) {
  check_finite(s);
  Mat r(m.rows_, m.cols_);
  for (int i = 0; i < m.size(); ++i) r.a_[i] = s * m.a_[i];
  return r;
}

Mat operator*(double s, const Mat& m) { return Complex(s, 0.0) * m; }

Mat Mat::adjoint() const {
  Mat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Complex Mat::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("Mat: trace of non-square matrix");
  Complex t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

bool Mat::operator==(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (int i = 0; i < size(); ++i)
    if (a_[i] != o.a_[i]) return false;
  return true;
}

bool Mat::is_hermitian(double tolerance) const {
  if (rows_ != cols_) return false;
  return max_abs_diff(*this, adjoint()) <= tolerance;
}

double Mat::max_abs_diff(const Mat& a, const Mat& b) {
  a.check_shape_compatible(b);
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.a_[i] - b.a_[i]));
  return m;
}

Mat kron(const Mat& a, const Mat& b) {
  check_dims(a.rows() * b.rows(), a.cols() * b.cols());
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const Complex v = a(i, j);
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) {
          r(i * b.rows() + k, j * b.cols() + l) = v * b(k, l);
        }
    }
  return r;
}

Mat partial_trace(const Mat& m, Subsystem traced_out) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw std::invalid_argument("partial_trace: expected a 4x4 operator");
  }
  Mat r(2, 2);
  if (traced_out == Subsystem::B) {
    for (int a = 0; a < 2; ++a)
      for (int ap = 0; ap < 2; ++ap)
        for (int b = 0; b < 2; ++b) r(a, ap) += m(2 * a + b, 2 * ap + b);
  } else {
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp)
        for (int a = 0; a < 2; ++a) r(b, bp) += m(2 * a + b, 2 * a + bp);
  }
  return r;
}

Mat partial_transpose_b(const Mat& m) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw std::invalid_argument("partial_transpose_b: expected a 4x4 operator");
  }
  Mat r(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) {
          r(2 * a + b, 2 * ap + bp) = m(2 * a + bp, 2 * ap + b);
        }
  return r;
}

namespace {

double off_diagonal_norm(const Mat& m) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const Mat& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
  }
  if (!m.is_hermitian()) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix not Hermitian within tolerance");
  }
  const int n = m.rows();

  // Work on the exactly Hermitian part; kills the (tolerated) asymmetric dust.
  Mat a = 0.5 * (m + m.adjoint());

  bool converged = false;
  for (int sweep = 0; sweep < tol::kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < tol::kJacobiOffTol) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        // Phase such that apq = r * e^{i phi}.
        const Complex phase = apq / r;
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double zeta = (alpha - beta) / (2.0 * r);
        const double sign = (zeta >= 0.0) ? 1.0 : -1.0;
        const double t = sign / (std::abs(zeta) + std::sqrt(zeta * zeta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // A <- U^dag A U with U_pp = c, U_pq = -s e^{i phi},
        //                     U_qp = s e^{-i phi}, U_qq = c.
        for (int k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + s * std::conj(phase) * akq;
          a(k, q) = -s * phase * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + s * phase * aqk;
          a(q, k) = -s * std::conj(phase) * apk + c * aqk;
        }
      }
    }
    // Re-symmetrize once per sweep to keep rounding drift out of the diagonal.
    a = 0.5 * (a + a.adjoint());
  }
  if (!converged) {
    throw std::runtime_error("hermitian_eigenvalues: Jacobi sweeps did not converge");
  }

  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace qkd
