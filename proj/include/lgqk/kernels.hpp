#ifndef LGQK_KERNELS_HPP
#define LGQK_KERNELS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lgqk/digest.hpp"
#include "lgqk/errors.hpp"
#include "lgqk/linalg.hpp"

namespace lgqk {

enum class KernelFamily { angle, fourier };

inline const char* to_string(KernelFamily f) { return f == KernelFamily::angle ? "angle" : "fourier"; }

/// Full description of a local-global kernel
///   k_LG(x, z) = lambda_local * k(x, z) + lambda_global * k(x, z)^degree,
/// where the base kernel k comes from angle or Fourier encoding with
/// bandwidth c. For the Fourier family each component is carried by an
/// s-qubit block whose diagonal generator has the listed eigenvalues.
struct KernelSpec {
  KernelFamily family = KernelFamily::angle;
  double bandwidth = 1.0;      // c
  int subsystem_qubits = 1;    // s (Fourier block size; angle is 1 per component)
  int degree = 1;              // q
  double lambda_local = 1.0;   // weight of k, already divided by 2^{t-s}
  double lambda_global = 0.0;  // weight of k^q
  std::vector<double> fourier_eigenvalues;

  void validate() const {
    if (!(bandwidth > 0.0)) throw value_error("KernelSpec: bandwidth must be positive");
    if (subsystem_qubits < 1) throw value_error("KernelSpec: subsystem size must be >= 1");
    if (degree < 1) throw value_error("KernelSpec: degree must be >= 1");
    if (lambda_local < 0.0 || lambda_global < 0.0) throw value_error("KernelSpec: weights must be nonnegative");
    if (!(lambda_local + lambda_global > 0.0)) throw value_error("KernelSpec: weights must not both vanish");
    if (family == KernelFamily::fourier &&
        fourier_eigenvalues.size() != (std::size_t{1} << subsystem_qubits))
      throw value_error("KernelSpec: Fourier eigenvalue list must have length 2^s");
  }
};

/// Base kernel of angle encoding: prod_j cos^2(c (x_j - z_j) / 2).
/// Evaluated on |x_j - z_j| so that k(x, z) and k(z, x) are the same
/// floating-point number.
inline double angle_base_kernel(double c, std::span<const double> x, std::span<const double> z) {
  if (x.size() != z.size() || x.empty()) throw dimension_error("angle_base_kernel: inputs must have equal dimension >= 1");
  double k = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double cj = std::cos(0.5 * c * std::abs(x[j] - z[j]));
    k *= cj * cj;
  }
  return std::clamp(k, 0.0, 1.0);
}

/// Base kernel of the Fourier encoding:
///   prod_j |2^{-s} sum_a exp(-i c lambda_a (x_j - z_j))|^2,
/// the O(2^s) squared-magnitude form of the (a, b) double sum.
inline double fourier_base_kernel(const KernelSpec& spec, std::span<const double> x, std::span<const double> z) {
  if (x.size() != z.size() || x.empty())
    throw dimension_error("fourier_base_kernel: inputs must have equal dimension >= 1");
  const std::size_t block_dim = std::size_t{1} << spec.subsystem_qubits;
  if (spec.fourier_eigenvalues.size() != block_dim)
    throw value_error("fourier_base_kernel: eigenvalue list missing or not of length 2^s");
  const double inv = 1.0 / static_cast<double>(block_dim);
  double k = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double delta = std::abs(x[j] - z[j]);
    double re = 0.0, im = 0.0;
    for (double lam : spec.fourier_eigenvalues) {
      const double phase = spec.bandwidth * lam * delta;
      re += std::cos(phase);
      im -= std::sin(phase);
    }
    k *= (re * re + im * im) * inv * inv;
  }
  return std::clamp(k, 0.0, 1.0);
}

/// Eigenvalue list (1/1, 1/2, ..., 1/2^{s-1}) followed by its negation.
inline std::vector<double> harmonic_eigenvalues(int s) {
  if (s < 1) throw value_error("harmonic_eigenvalues: s must be >= 1");
  const std::size_t half = std::size_t{1} << (s - 1);
  std::vector<double> lam(2 * half);
  for (std::size_t m = 1; m <= half; ++m) {
    lam[m - 1] = 1.0 / static_cast<double>(m);
    lam[half + m - 1] = -1.0 / static_cast<double>(m);
  }
  return lam;
}

inline double base_kernel(const KernelSpec& spec, std::span<const double> x, std::span<const double> z) {
  return spec.family == KernelFamily::angle ? angle_base_kernel(spec.bandwidth, x, z)
                                            : fourier_base_kernel(spec, x, z);
}

inline double combine_local_global(const KernelSpec& spec, double k) {
  return spec.lambda_local * k + spec.lambda_global * std::pow(k, spec.degree);
}

/// k_LG(x, z) = lambda_local * k + lambda_global * k^q.
inline double local_global_kernel(const KernelSpec& spec, std::span<const double> x, std::span<const double> z) {
  return combine_local_global(spec, base_kernel(spec, x, z));
}

/// Global component alone, k(x, z)^q.
inline double global_kernel_only(const KernelSpec& spec, std::span<const double> x, std::span<const double> z) {
  return std::pow(base_kernel(spec, x, z), spec.degree);
}

/// Symmetric base-kernel Gram matrix; the diagonal is written as exactly
/// 1 (k(x, x) = 1 analytically for both families) and the upper triangle
/// is mirrored, never recomputed.
inline RealSymMatrix base_gram(const KernelSpec& spec, const RealMatrix& x) {
  if (x.rows() < 1) throw value_error("base_gram: empty dataset");
  const int n = x.rows();
  RealSymMatrix k(n);
  for (int i = 0; i < n; ++i) {
    k.set(i, i, 1.0);
    for (int j = i + 1; j < n; ++j) k.set(i, j, base_kernel(spec, x.row(i), x.row(j)));
  }
  return k;
}

/// Symmetric n x n matrix of local-global kernel values with provenance.
struct GramMatrix {
  RealSymMatrix entries;
  KernelSpec spec;
  std::string dataset_digest;
  std::uint64_t seed = 0;

  int size() const { return entries.dim(); }
};

/// Lifts a base-kernel Gram to the local-global Gram of `spec`. Diagonal
/// entries become lambda_local + lambda_global with no evaluation.
inline GramMatrix gram_from_base(const KernelSpec& spec, const RealSymMatrix& base, std::string dataset_digest,
                                 std::uint64_t seed = 0) {
  spec.validate();
  const int n = base.dim();
  RealSymMatrix k(n);
  const double diag = spec.lambda_local + spec.lambda_global;
  for (int i = 0; i < n; ++i) {
    k.set(i, i, diag);
    for (int j = i + 1; j < n; ++j) k.set(i, j, combine_local_global(spec, base(i, j)));
  }
  return GramMatrix{std::move(k), spec, std::move(dataset_digest), seed};
}

/// K_ij = k_LG(x_i, x_j), with the diagonal written directly.
inline GramMatrix gram(const KernelSpec& spec, const RealMatrix& x, std::uint64_t seed = 0) {
  spec.validate();
  return gram_from_base(spec, base_gram(spec, x), content_digest(x.data()), seed);
}

/// Base-kernel values between two datasets; entry (i, j) pairs train row
/// i with test row j.
inline RealMatrix base_cross_gram(const KernelSpec& spec, const RealMatrix& x_train, const RealMatrix& x_test) {
  if (x_train.cols() != x_test.cols()) throw dimension_error("cross_gram: train/test dimension mismatch");
  RealMatrix k(x_train.rows(), x_test.rows());
  for (int i = 0; i < x_train.rows(); ++i)
    for (int j = 0; j < x_test.rows(); ++j) k(i, j) = base_kernel(spec, x_train.row(i), x_test.row(j));
  return k;
}

inline RealMatrix cross_from_base(const KernelSpec& spec, const RealMatrix& base) {
  RealMatrix k(base.rows(), base.cols());
  for (int i = 0; i < base.rows(); ++i)
    for (int j = 0; j < base.cols(); ++j) k(i, j) = combine_local_global(spec, base(i, j));
  return k;
}

/// Entry (i, j) = k_LG(train_i, test_j).
inline RealMatrix cross_gram(const KernelSpec& spec, const RealMatrix& x_train, const RealMatrix& x_test) {
  spec.validate();
  return cross_from_base(spec, base_cross_gram(spec, x_train, x_test));
}

}  // namespace lgqk

#endif  // LGQK_KERNELS_HPP
