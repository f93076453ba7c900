#ifndef LGQK_DATASET_HPP
#define LGQK_DATASET_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "lgqk/errors.hpp"
#include "lgqk/kernels.hpp"
#include "lgqk/linalg.hpp"
#include "lgqk/rng.hpp"

namespace lgqk {

enum class TargetKind { none, rkhs_sum, cos_sum, sin_sum };

inline const char* to_string(TargetKind t) {
  switch (t) {
    case TargetKind::rkhs_sum: return "rkhs-sum";
    case TargetKind::cos_sum: return "cos-sum";
    case TargetKind::sin_sum: return "sin-sum";
    default: return "none";
  }
}

inline TargetKind parse_target_kind(const std::string& s) {
  if (s == "rkhs-sum") return TargetKind::rkhs_sum;
  if (s == "cos-sum") return TargetKind::cos_sum;
  if (s == "sin-sum") return TargetKind::sin_sum;
  if (s == "none") return TargetKind::none;
  throw config_error("unknown target kind '" + s + "'");
}

struct Dataset {
  RealMatrix x;
  std::vector<double> y;
  TargetKind target_kind = TargetKind::none;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  double lo = -1.0;
  double hi = 1.0;
};

/// n x d matrix of independent U([lo, hi)) draws, deterministic per seed.
inline RealMatrix gen_uniform(int n, int d, double lo, double hi, std::uint64_t seed) {
  if (n < 1 || d < 1) throw value_error("gen_uniform: n and d must be >= 1");
  if (!(lo < hi)) throw value_error("gen_uniform: invalid bounds (lo must be < hi)");
  Rng rng(seed);
  RealMatrix x(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = rng.uniform(lo, hi);
  return x;
}

/// Centers of the in-RKHS target, drawn uniformly on [-0.75, 0.75].
inline std::vector<double> rkhs_centers(int num_centers, std::uint64_t center_seed) {
  if (num_centers < 1) throw value_error("rkhs_centers: need at least one center");
  Rng rng(center_seed);
  std::vector<double> w(num_centers);
  for (double& wi : w) wi = rng.uniform(-0.75, 0.75);
  return w;
}

/// f(x) = 1 + sum_i k_c(x, w_i) for scalar inputs.
inline std::vector<double> eval_rkhs_sum(const RealMatrix& x, double c, std::span<const double> centers) {
  if (x.cols() != 1) throw dimension_error("rkhs-sum target is defined for d = 1 only");
  std::vector<double> y(x.rows());
  for (int i = 0; i < x.rows(); ++i) {
    double f = 1.0;
    for (double w : centers) f += angle_base_kernel(c, x.row(i), std::span<const double>(&w, 1));
    y[i] = f;
  }
  return y;
}

inline std::vector<double> gen_target_rkhs_sum(const RealMatrix& x, double c, int num_centers,
                                               std::uint64_t center_seed) {
  return eval_rkhs_sum(x, c, rkhs_centers(num_centers, center_seed));
}

/// y_i = sum_j cos(0.01 pi x_ij).
inline std::vector<double> gen_target_cos_sum(const RealMatrix& x) {
  std::vector<double> y(x.rows());
  for (int i = 0; i < x.rows(); ++i) {
    double acc = 0.0;
    for (int j = 0; j < x.cols(); ++j) acc += std::cos(0.01 * std::numbers::pi * x(i, j));
    y[i] = acc;
  }
  return y;
}

/// y_i = sin(sum_j x_ij).
inline std::vector<double> gen_target_sin_sum(const RealMatrix& x) {
  std::vector<double> y(x.rows());
  for (int i = 0; i < x.rows(); ++i) {
    double acc = 0.0;
    for (int j = 0; j < x.cols(); ++j) acc += x(i, j);
    y[i] = std::sin(acc);
  }
  return y;
}

inline std::vector<double> add_gaussian_noise(std::span<const double> y, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw value_error("add_gaussian_noise: sigma must be nonnegative");
  std::vector<double> out(y.begin(), y.end());
  if (sigma == 0.0) return out;
  Rng rng(seed);
  for (double& v : out) v += sigma * rng.normal();
  return out;
}

}  // namespace lgqk

#endif  // LGQK_DATASET_HPP
