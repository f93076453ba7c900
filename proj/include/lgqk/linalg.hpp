#ifndef LGQK_LINALG_HPP
#define LGQK_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lgqk/errors.hpp"

namespace lgqk {

inline constexpr double kSymmetryTol = 1e-12;

/// Dense rectangular matrix of doubles, row-major.
class RealMatrix {
 public:
  RealMatrix() = default;

  RealMatrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), entries_(checked_size(rows, cols), fill) {}

  static RealMatrix from_row_major(int rows, int cols, std::vector<double> entries) {
    if (entries.size() != checked_size(rows, cols))
      throw dimension_error("RealMatrix: entry count does not match rows*cols");
    RealMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.entries_ = std::move(entries);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::span<const double> row(int i) const {
    return {entries_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)};
  }

  const std::vector<double>& data() const { return entries_; }
  std::vector<double>& data() { return entries_; }

 private:
  static std::size_t checked_size(int rows, int cols) {
    if (rows < 0 || cols < 0) throw dimension_error("RealMatrix: negative dimension");
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> entries_;
};

/// Dense symmetric matrix. Stored full, row-major; writes keep both
/// triangles in sync, so instances are symmetric by construction.
/// `from_row_major` accepts externally built data and enforces
/// |A_ij - A_ji| <= 1e-12.
class RealSymMatrix {
 public:
  RealSymMatrix() = default;

  explicit RealSymMatrix(int dim) : dim_(checked_dim(dim)), entries_(static_cast<std::size_t>(dim) * dim, 0.0) {}

  static RealSymMatrix from_row_major(int dim, std::vector<double> entries) {
    if (entries.size() != static_cast<std::size_t>(checked_dim(dim)) * dim)
      throw dimension_error("RealSymMatrix: entry count does not match dim*dim");
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) {
        const double a = entries[static_cast<std::size_t>(i) * dim + j];
        const double b = entries[static_cast<std::size_t>(j) * dim + i];
        if (std::abs(a - b) > kSymmetryTol)
          throw symmetry_error("RealSymMatrix: asymmetry " + std::to_string(std::abs(a - b)) + " at (" +
                               std::to_string(i) + "," + std::to_string(j) + ") exceeds 1e-12");
      }
    RealSymMatrix m;
    m.dim_ = dim;
    m.entries_ = std::move(entries);
    return m;
  }

  static RealSymMatrix identity(int dim) {
    RealSymMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.entries_[static_cast<std::size_t>(i) * dim + i] = 1.0;
    return m;
  }

  static RealSymMatrix diagonal(std::span<const double> d) {
    RealSymMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim_; ++i) m.entries_[static_cast<std::size_t>(i) * m.dim_ + i] = d[i];
    return m;
  }

  int dim() const { return dim_; }

  double operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * dim_ + j]; }

  void set(int i, int j, double v) {
    entries_[static_cast<std::size_t>(i) * dim_ + j] = v;
    entries_[static_cast<std::size_t>(j) * dim_ + i] = v;
  }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  /// max_ij |A_ij| over off-diagonal entries; 0 for dim <= 1.
  double max_abs_offdiag() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        if (i != j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
  }

  std::vector<double> matvec(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_) throw dimension_error("RealSymMatrix::matvec: length mismatch");
    std::vector<double> out(dim_, 0.0);
    for (int i = 0; i < dim_; ++i) {
      double acc = 0.0;
      const double* row = entries_.data() + static_cast<std::size_t>(i) * dim_;
      for (int j = 0; j < dim_; ++j) acc += row[j] * x[j];
      out[i] = acc;
    }
    return out;
  }

  const std::vector<double>& data() const { return entries_; }

 private:
  static int checked_dim(int dim) {
    if (dim <= 0) throw dimension_error("RealSymMatrix: dimension must be positive");
    return dim;
  }

  int dim_ = 0;
  std::vector<double> entries_;
};

/// Result of a symmetric eigendecomposition. Eigenvalues are sorted
/// descending; eigenvector j (matching eigenvalues[j]) is the contiguous
/// column vectors[j*dim .. j*dim+dim).
struct EigenDecomposition {
  int dim = 0;
  std::vector<double> eigenvalues;
  std::vector<double> vectors;  // column-major

  std::span<const double> eigenvector(int j) const {
    return {vectors.data() + static_cast<std::size_t>(j) * dim, static_cast<std::size_t>(dim)};
  }
};

namespace detail {

// Householder reduction of a symmetric matrix to tridiagonal form with
// accumulation of the orthogonal transformation, followed by the implicit
// shift QL algorithm (EISPACK tred2/tql2 lineage). `v` is column-major:
// v[j*n + k] is component k of column j.
inline void householder_tridiagonalize(int n, std::vector<double>& v, std::vector<double>& d,
                                       std::vector<double>& e) {
  auto at = [&](int row, int col) -> double& { return v[static_cast<std::size_t>(col) * n + row]; };

  for (int j = 0; j < n; ++j) d[j] = at(n - 1, j);

  for (int i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (int k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (int j = 0; j < i; ++j) {
        d[j] = at(i - 1, j);
        at(i, j) = 0.0;
        at(j, i) = 0.0;
      }
    } else {
      for (int k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = (f > 0.0) ? -std::sqrt(h) : std::sqrt(h);
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (int j = 0; j < i; ++j) e[j] = 0.0;

      // Apply similarity transformation to remaining columns.
      for (int j = 0; j < i; ++j) {
        f = d[j];
        at(j, i) = f;
        g = e[j] + at(j, j) * f;
        for (int k = j + 1; k <= i - 1; ++k) {
          g += at(k, j) * d[k];
          e[k] += at(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (int j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (int j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (int k = j; k <= i - 1; ++k) at(k, j) -= f * e[k] + g * d[k];
        d[j] = at(i - 1, j);
        at(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  // Accumulate transformations.
  for (int i = 0; i < n - 1; ++i) {
    at(n - 1, i) = at(i, i);
    at(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (int k = 0; k <= i; ++k) d[k] = at(k, i + 1) / h;
      for (int j = 0; j <= i; ++j) {
        double g = 0.0;
        for (int k = 0; k <= i; ++k) g += at(k, i + 1) * at(k, j);
        for (int k = 0; k <= i; ++k) at(k, j) -= g * d[k];
      }
    }
    for (int k = 0; k <= i; ++k) at(k, i + 1) = 0.0;
  }
  for (int j = 0; j < n; ++j) {
    d[j] = at(n - 1, j);
    at(n - 1, j) = 0.0;
  }
  at(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

inline void tridiagonal_ql(int n, std::vector<double>& v, std::vector<double>& d, std::vector<double>& e) {
  constexpr int kMaxIter = 60;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    int m = l;
    while (m < n && std::abs(e[m]) > eps * tst1) ++m;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxIter)
          throw convergence_error("eigh_desc: QL iteration cap exceeded at eigenvalue " + std::to_string(l));

        // Implicit shift.
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0.0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (int i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        // Implicit QL sweep, rotating rows m-1..l.
        p = d[m];
        double c = 1.0, c2 = c, c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);

          double* col_i = v.data() + static_cast<std::size_t>(i) * n;
          double* col_i1 = v.data() + static_cast<std::size_t>(i + 1) * n;
          for (int k = 0; k < n; ++k) {
            const double t = col_i1[k];
            col_i1[k] = s * col_i[k] + c * t;
            col_i[k] = c * col_i[k] - s * t;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace detail

/// Eigendecomposition of a symmetric matrix, eigenvalues descending.
/// Deterministic (no randomness, fixed sweep order); ties keep the
/// solver's output order.
inline EigenDecomposition eigh_desc(const RealSymMatrix& a) {
  const int n = a.dim();
  EigenDecomposition out;
  out.dim = n;
  out.vectors.resize(static_cast<std::size_t>(n) * n);

  // Column-major working copy (input is symmetric, so the transpose
  // relabeling is a no-op).
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) out.vectors[static_cast<std::size_t>(j) * n + i] = a(i, j);

  std::vector<double> d(n, 0.0), e(n, 0.0);
  if (n == 1) {
    d[0] = a(0, 0);
    out.vectors[0] = 1.0;
  } else {
    detail::householder_tridiagonalize(n, out.vectors, d, e);
    detail::tridiagonal_ql(n, out.vectors, d, e);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return d[i] > d[j]; });

  out.eigenvalues.resize(n);
  std::vector<double> sorted(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    out.eigenvalues[j] = d[order[j]];
    std::copy_n(out.vectors.data() + static_cast<std::size_t>(order[j]) * n, n,
                sorted.data() + static_cast<std::size_t>(j) * n);
  }
  out.vectors = std::move(sorted);
  return out;
}

/// Relative spectral cutoff of the pseudo-inverse, matching the default
/// of the common numerical packages. Eigenvalues at or below
/// kPinvRcond * max|lambda| are treated as zero.
inline constexpr double kPinvRcond = 1e-15;

/// Minimum-norm least-squares solve A+ y through the eigendecomposition.
inline std::vector<double> pinv_apply(const RealSymMatrix& a, std::span<const double> y) {
  const int n = a.dim();
  if (static_cast<int>(y.size()) != n) throw dimension_error("pinv_apply: rhs length does not match matrix dim");

  const EigenDecomposition eig = eigh_desc(a);
  double lam_max = 0.0;
  for (double lam : eig.eigenvalues) lam_max = std::max(lam_max, std::abs(lam));
  const double cutoff = kPinvRcond * lam_max;

  std::vector<double> out(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const double lam = eig.eigenvalues[j];
    if (std::abs(lam) <= cutoff) continue;
    const auto vj = eig.eigenvector(j);
    double proj = 0.0;
    for (int i = 0; i < n; ++i) proj += vj[i] * y[i];
    const double w = proj / lam;
    for (int i = 0; i < n; ++i) out[i] += w * vj[i];
  }
  return out;
}

/// Solves (A + rho I) x = y by Cholesky factorization. Requires the
/// shifted matrix to be positive definite; at rho = 0 a singular system
/// raises singular_error (use pinv_apply there instead).
inline std::vector<double> solve_shifted(const RealSymMatrix& a, double rho, std::span<const double> y) {
  const int n = a.dim();
  if (static_cast<int>(y.size()) != n) throw dimension_error("solve_shifted: rhs length does not match matrix dim");
  if (rho < 0.0) throw value_error("solve_shifted: rho must be nonnegative");

  // Lower-triangular Cholesky factor, packed row-major.
  std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a(i, i) + rho));
  const double pivot_floor = n * std::numeric_limits<double>::epsilon() * max_diag;

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = a(i, j) + (i == j ? rho : 0.0);
      for (int k = 0; k < j; ++k) sum -= l[static_cast<std::size_t>(i) * n + k] * l[static_cast<std::size_t>(j) * n + k];
      if (i == j) {
        if (sum <= pivot_floor)
          throw singular_error("solve_shifted: system singular or indefinite at shift " + std::to_string(rho));
        l[static_cast<std::size_t>(i) * n + j] = std::sqrt(sum);
      } else {
        l[static_cast<std::size_t>(i) * n + j] = sum / l[static_cast<std::size_t>(j) * n + j];
      }
    }
  }

  std::vector<double> x(y.begin(), y.end());
  for (int i = 0; i < n; ++i) {
    double sum = x[i];
    for (int k = 0; k < i; ++k) sum -= l[static_cast<std::size_t>(i) * n + k] * x[k];
    x[i] = sum / l[static_cast<std::size_t>(i) * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double sum = x[i];
    for (int k = i + 1; k < n; ++k) sum -= l[static_cast<std::size_t>(k) * n + i] * x[k];
    x[i] = sum / l[static_cast<std::size_t>(i) * n + i];
  }
  return x;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw dimension_error("dot: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace lgqk

#endif  // LGQK_LINALG_HPP
