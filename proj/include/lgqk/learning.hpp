#ifndef LGQK_LEARNING_HPP
#define LGQK_LEARNING_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lgqk/errors.hpp"
#include "lgqk/kernels.hpp"
#include "lgqk/linalg.hpp"

namespace lgqk {

struct RegressionMode {
  enum class Kind { ridgeless, ridge };
  Kind kind = Kind::ridgeless;
  double rho = 0.0;

  static RegressionMode ridgeless() { return {Kind::ridgeless, 0.0}; }
  static RegressionMode ridge(double rho) {
    if (rho < 0.0) throw value_error("RegressionMode: ridge shift must be nonnegative");
    return {Kind::ridge, rho};
  }

  std::string label() const {
    return kind == Kind::ridgeless ? "ridgeless" : ("ridge(" + std::to_string(rho) + ")");
  }
};

inline double mse(std::span<const double> pred, std::span<const double> truth) {
  if (pred.size() != truth.size()) throw dimension_error("mse: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - truth[i];
    acc += d * d;
  }
  return acc / static_cast<double>(pred.size());
}

struct FitResult {
  std::vector<double> alpha;
  RegressionMode mode;
  double train_mse = 0.0;
  KernelSpec spec;
  std::string dataset_digest;
};

/// Ridgeless fit is the minimum-norm interpolant alpha = K+ y; ridge(rho)
/// solves (K + rho I) alpha = y.
inline FitResult fit(const GramMatrix& k, std::span<const double> y, RegressionMode mode) {
  const int n = k.size();
  if (static_cast<int>(y.size()) != n) throw dimension_error("fit: target length does not match Gram size");

  FitResult out;
  out.mode = mode;
  out.spec = k.spec;
  out.dataset_digest = k.dataset_digest;
  out.alpha = (mode.kind == RegressionMode::Kind::ridgeless) ? pinv_apply(k.entries, y)
                                                             : solve_shifted(k.entries, mode.rho, y);
  out.train_mse = mse(k.entries.matvec(out.alpha), y);
  return out;
}

/// Predictions alpha^T k_cross, one per test column.
inline std::vector<double> predict(const FitResult& f, const RealMatrix& k_cross) {
  const int n = static_cast<int>(f.alpha.size());
  if (k_cross.rows() != n) throw dimension_error("predict: cross-kernel rows do not match training size");
  std::vector<double> pred(k_cross.cols(), 0.0);
  for (int i = 0; i < n; ++i) {
    const double ai = f.alpha[i];
    if (ai == 0.0) continue;
    const auto row = k_cross.row(i);
    for (int j = 0; j < k_cross.cols(); ++j) pred[j] += ai * row[j];
  }
  return pred;
}

/// Spectral diagnostics of a local-global Gram matrix: its spectrum, the
/// spikiness of the global-only component, and how well the trailing
/// eigenspace flattens to a multiple of the identity.
///
/// Two flat-tail curves are reported, both over split levels l in
/// {1..n-1} with K_trunc(l) keeping the top l eigencomponents:
///   flat_tail_residual[l-1]     = max|K - K_trunc(l) - rho_reference I|,
///     the deviation from the configured shift (the structure the
///     global component is supposed to supply);
///   flat_tail_residual_lsq[l-1] = max|K - K_trunc(l) - rho_bar_l I|,
///     with rho_bar_l the mean of the trailing eigenvalues, i.e. the
///     least-squares flat fit of the tail.
struct SpectrumReport {
  std::vector<double> eigenvalues;
  double max_abs_offdiag_global = 0.0;
  std::vector<double> flat_tail_residual;
  std::vector<double> flat_tail_residual_lsq;
  double rho_reference = 0.0;

  double min_eigenvalue() const { return eigenvalues.back(); }
  double min_flat_tail_residual() const {
    return *std::min_element(flat_tail_residual.begin(), flat_tail_residual.end());
  }
};

inline SpectrumReport spectrum_report(const KernelSpec& spec, const RealMatrix& x, double rho_reference) {
  spec.validate();
  if (x.rows() < 2) throw value_error("spectrum_report: need at least 2 samples");
  const int n = x.rows();

  const RealSymMatrix base = base_gram(spec, x);
  const GramMatrix k = gram_from_base(spec, base, content_digest(x.data()));

  SpectrumReport report;
  report.rho_reference = rho_reference;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      report.max_abs_offdiag_global =
          std::max(report.max_abs_offdiag_global, std::abs(std::pow(base(i, j), spec.degree)));

  const EigenDecomposition eig = eigh_desc(k.entries);
  report.eigenvalues = eig.eigenvalues;

  std::vector<double> tail_sum(n + 1, 0.0);
  for (int i = n - 1; i >= 0; --i) tail_sum[i] = tail_sum[i + 1] + eig.eigenvalues[i];

  // Peel eigencomponents off a working copy of K one at a time; after
  // removing the top l the remainder is K - K_trunc(l).
  std::vector<double> m(k.entries.data());
  report.flat_tail_residual.reserve(n - 1);
  report.flat_tail_residual_lsq.reserve(n - 1);
  for (int l = 1; l <= n - 1; ++l) {
    const double lam = eig.eigenvalues[l - 1];
    const auto v = eig.eigenvector(l - 1);
    const double rho_bar = tail_sum[l] / static_cast<double>(n - l);
    double worst_ref = 0.0, worst_lsq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double vi = lam * v[i];
      double* row = m.data() + static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) {
        row[j] -= vi * v[j];
        const double off = row[j];
        if (i == j) {
          worst_ref = std::max(worst_ref, std::abs(off - rho_reference));
          worst_lsq = std::max(worst_lsq, std::abs(off - rho_bar));
        } else {
          const double r = std::abs(off);
          worst_ref = std::max(worst_ref, r);
          worst_lsq = std::max(worst_lsq, r);
        }
      }
    }
    report.flat_tail_residual.push_back(worst_ref);
    report.flat_tail_residual_lsq.push_back(worst_lsq);
  }
  return report;
}

}  // namespace lgqk

#endif  // LGQK_LEARNING_HPP
