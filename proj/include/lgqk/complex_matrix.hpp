#ifndef LGQK_COMPLEX_MATRIX_HPP
#define LGQK_COMPLEX_MATRIX_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "lgqk/errors.hpp"
#include "lgqk/linalg.hpp"

namespace lgqk {

using cdouble = std::complex<double>;

/// Dense complex matrix, row-major. General carrier for unitaries,
/// density matrices and observables.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), entries_(checked_size(rows, cols), cdouble{0.0, 0.0}) {}

  static ComplexMatrix from_row_major(int rows, int cols, std::vector<cdouble> entries) {
    if (entries.size() != checked_size(rows, cols))
      throw dimension_error("ComplexMatrix: entry count does not match rows*cols");
    for (const cdouble& z : entries)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw value_error("ComplexMatrix: non-finite entry");
    ComplexMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.entries_ = std::move(entries);
    return m;
  }

  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cdouble& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  const cdouble& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  cdouble trace() const {
    if (rows_ != cols_) throw dimension_error("ComplexMatrix::trace: matrix not square");
    cdouble t{0.0, 0.0};
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw dimension_error("ComplexMatrix: product shape mismatch");
    ComplexMatrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const cdouble aik = a(i, k);
        if (aik == cdouble{0.0, 0.0}) continue;
        for (int j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw dimension_error("ComplexMatrix: sum shape mismatch");
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
    return out;
  }

  friend ComplexMatrix operator*(cdouble s, const ComplexMatrix& a) {
    ComplexMatrix out = a;
    for (cdouble& z : out.entries_) z *= s;
    return out;
  }

  const std::vector<cdouble>& data() const { return entries_; }

 private:
  static std::size_t checked_size(int rows, int cols) {
    if (rows <= 0 || cols <= 0) throw dimension_error("ComplexMatrix: dimensions must be positive");
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<cdouble> entries_;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ia = 0; ia < a.rows(); ++ia)
    for (int ja = 0; ja < a.cols(); ++ja) {
      const cdouble s = a(ia, ja);
      if (s == cdouble{0.0, 0.0}) continue;
      for (int ib = 0; ib < b.rows(); ++ib)
        for (int jb = 0; jb < b.cols(); ++jb) out(ia * b.rows() + ib, ja * b.cols() + jb) = s * b(ib, jb);
    }
  return out;
}

/// n-fold Kronecker power.
inline ComplexMatrix kron_power(const ComplexMatrix& a, int n) {
  if (n < 1) throw value_error("kron_power: exponent must be >= 1");
  ComplexMatrix out = a;
  for (int i = 1; i < n; ++i) out = kron(out, a);
  return out;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw dimension_error("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i; j < a.cols(); ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
  return true;
}

/// Eigenvalues of a Hermitian matrix via the symmetric real embedding
/// [[Re, -Im], [Im, Re]]; each eigenvalue of the input appears twice in
/// the embedding, so every other one is kept. Intended for invariant
/// checks on small matrices.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw dimension_error("hermitian_eigenvalues: matrix not square");
  if (!is_hermitian(a, 1e-10)) throw symmetry_error("hermitian_eigenvalues: input not Hermitian within 1e-10");
  const int n = a.rows();
  std::vector<double> raw(static_cast<std::size_t>(2 * n) * (2 * n), 0.0);
  auto put = [&](int r, int c, double vv) { raw[static_cast<std::size_t>(r) * 2 * n + c] = vv; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cdouble z = 0.5 * (a(i, j) + std::conj(a(j, i)));
      put(i, j, z.real());
      put(i + n, j + n, z.real());
      put(i + n, j, z.imag());
      put(i, j + n, -z.imag());
    }
  const EigenDecomposition eig = eigh_desc(RealSymMatrix::from_row_major(2 * n, std::move(raw)));
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = eig.eigenvalues[2 * i];  // doubled spectrum, take every other
  return out;
}

}  // namespace lgqk

#endif  // LGQK_COMPLEX_MATRIX_HPP
