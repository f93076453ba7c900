#ifndef LGQK_EXPERIMENTS_HPP
#define LGQK_EXPERIMENTS_HPP

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "lgqk/config.hpp"
#include "lgqk/dataset.hpp"
#include "lgqk/io.hpp"
#include "lgqk/kernels.hpp"
#include "lgqk/learning.hpp"
#include "lgqk/version.hpp"

namespace lgqk {

// Per-repetition streams: the data matrix uses the repetition seed
// directly, everything else derives from it by a fixed salt.
inline constexpr std::uint64_t kCenterSalt = 0xC3A5C85C97CB3127ULL;
inline constexpr std::uint64_t kNoiseSalt = 0xB492B66FBE98F273ULL;
inline constexpr std::uint64_t kTestSalt = 0x9AE16A3B2F90404FULL;

inline std::uint64_t repetition_seed(const ExperimentConfig& cfg, int rep) {
  return cfg.master_seed + static_cast<std::uint64_t>(rep);
}

struct ResultRow {
  std::string experiment;
  std::string seed;  // decimal repetition seed, or "mean"
  KernelSpec spec;
  double regression_rho = 0.0;  // 0 means ridgeless
  double train_mse = 0.0;
  double test_mse = 0.0;
};

inline std::string results_csv_header() {
  return "experiment,seed,family,c,s,q,lambda_local,lambda_global,rho,train_mse,test_mse";
}

inline std::string to_csv(const ResultRow& r) {
  return join_csv({r.experiment, r.seed, to_string(r.spec.family), format_g17(r.spec.bandwidth),
                   std::to_string(r.spec.subsystem_qubits), std::to_string(r.spec.degree),
                   format_g17(r.spec.lambda_local), format_g17(r.spec.lambda_global), format_g17(r.regression_rho),
                   format_g17(r.train_mse), format_g17(r.test_mse)});
}

inline void write_results_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows) {
  std::string out = results_csv_header() + "\n";
  for (const ResultRow& r : rows) out += to_csv(r) + "\n";
  write_text_file(path, out);
}

inline void write_manifest(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  std::string m;
  m += "artifact = " + std::string(kArtifactVersion) + "\n";
  m += "experiment = " + std::string(to_string(cfg.id)) + "\n";
  m += "master_seed = " + std::to_string(cfg.master_seed) + "\n";
  m += "repetitions = " + std::to_string(cfg.repetitions) + "\n";
  m += "rng = " + std::string(kRngDescription) + "\n";
  m += "seed_derivation = data: s, centers: s xor 0xC3A5C85C97CB3127, noise: s xor 0xB492B66FBE98F273, "
       "test: s xor 0x9AE16A3B2F90404F, with s = master_seed + repetition_index\n";
  m += "float_format = %.17g\n";
  m += "kernel.family = " + std::string(to_string(cfg.kernel.family)) + "\n";
  m += "kernel.c = " + format_g17(cfg.kernel.bandwidth) + "\n";
  m += "kernel.s = " + std::to_string(cfg.kernel.subsystem_qubits) + "\n";
  m += "kernel.q = " + std::to_string(cfg.kernel.degree) + "\n";
  m += "kernel.lambda_local = " + format_g17(cfg.kernel.lambda_local) + "\n";
  m += "kernel.lambda_global = " + format_g17(cfg.kernel.lambda_global) + "\n";
  if (cfg.kernel.family == KernelFamily::fourier) {
    std::string lams;
    for (std::size_t i = 0; i < cfg.kernel.fourier_eigenvalues.size(); ++i) {
      if (i) lams += ' ';
      lams += format_g17(cfg.kernel.fourier_eigenvalues[i]);
    }
    m += "kernel.fourier_eigenvalues = " + lams + "\n";
  }
  m += "data.n = " + std::to_string(cfg.data.n) + "\n";
  m += "data.d = " + std::to_string(cfg.data.d) + "\n";
  m += "data.lo = " + format_g17(cfg.data.lo) + "\n";
  m += "data.hi = " + format_g17(cfg.data.hi) + "\n";
  m += "data.target = " + std::string(to_string(cfg.data.target)) + "\n";
  m += "data.noise_sigma = " + format_g17(cfg.data.noise_sigma) + "\n";
  m += "regression.mode = " + std::string(cfg.regression.kind == RegressionMode::Kind::ridge ? "ridge" : "ridgeless") +
       "\n";
  m += "regression.rho = " + format_g17(cfg.regression.rho) + "\n";
  m += "test.n = " + std::to_string(cfg.test_n) + "\n";
  for (int rep = 0; rep < cfg.repetitions; ++rep)
    m += "rep_seed." + std::to_string(rep) + " = " + std::to_string(repetition_seed(cfg, rep)) + "\n";
  write_text_file(dir / "manifest.txt", m);
}

/// Column vector of n evenly spaced points covering [lo, hi].
inline RealMatrix linspace_column(double lo, double hi, int n) {
  RealMatrix x(n, 1);
  for (int i = 0; i < n; ++i) x(i, 0) = (n == 1) ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return x;
}

namespace detail {

inline std::vector<double> clean_target(const ExperimentConfig& cfg, const RealMatrix& x,
                                        std::span<const double> centers) {
  switch (cfg.data.target) {
    case TargetKind::rkhs_sum: return eval_rkhs_sum(x, cfg.kernel.bandwidth, centers);
    case TargetKind::cos_sum: return gen_target_cos_sum(x);
    case TargetKind::sin_sum: return gen_target_sin_sum(x);
    default: return std::vector<double>(x.rows(), 0.0);
  }
}

}  // namespace detail

/// One regression variant evaluated inside an experiment. All models of
/// one experiment share the base kernel (same family, bandwidth and
/// block), differing only in degree, weights and regression mode.
struct ModelVariant {
  std::string label;
  KernelSpec spec;
  RegressionMode mode;
};

inline ModelVariant local_ridgeless_variant(KernelSpec base) {
  base.lambda_local = 1.0;
  base.lambda_global = 0.0;
  base.degree = 1;
  return {"local_ridgeless", base, RegressionMode::ridgeless()};
}

inline ModelVariant local_ridge_variant(KernelSpec base, double rho) {
  base.lambda_local = 1.0;
  base.lambda_global = 0.0;
  base.degree = 1;
  return {"local_ridge", base, RegressionMode::ridge(rho)};
}

inline ModelVariant lg_ridgeless_variant(KernelSpec base, int degree) {
  base.lambda_local = 1.0;
  base.degree = degree;
  return {"lg_q" + std::to_string(degree), base, RegressionMode::ridgeless()};
}

struct FitExperimentOutput {
  std::vector<ResultRow> rows;                           // per rep, per model; then mean rows
  std::vector<std::vector<double>> first_rep_predictions;  // one vector per model
  std::vector<double> first_rep_truth;
  RealMatrix first_rep_test_x;
};

/// Shared engine for the regression experiments: per repetition draws a
/// dataset, fits every model on the same Gram base, and scores against a
/// noise-free test target.
inline FitExperimentOutput run_fit_models(const ExperimentConfig& cfg, const std::vector<ModelVariant>& models,
                                          bool grid_test) {
  FitExperimentOutput out;
  std::vector<double> train_sum(models.size(), 0.0), test_sum(models.size(), 0.0);

  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    const std::uint64_t seed = repetition_seed(cfg, rep);
    const RealMatrix x = gen_uniform(cfg.data.n, cfg.data.d, cfg.data.lo, cfg.data.hi, seed);
    std::vector<double> centers;
    if (cfg.data.target == TargetKind::rkhs_sum) centers = rkhs_centers(5, seed ^ kCenterSalt);
    const std::vector<double> y_clean = detail::clean_target(cfg, x, centers);
    const std::vector<double> y = add_gaussian_noise(y_clean, cfg.data.noise_sigma, seed ^ kNoiseSalt);

    const RealMatrix x_test = grid_test ? linspace_column(cfg.data.lo, cfg.data.hi, cfg.test_n)
                                        : gen_uniform(cfg.test_n, cfg.data.d, cfg.data.lo, cfg.data.hi,
                                                      seed ^ kTestSalt);
    const std::vector<double> truth = detail::clean_target(cfg, x_test, centers);

    const RealSymMatrix base = base_gram(models.front().spec, x);
    const RealMatrix base_cross = base_cross_gram(models.front().spec, x, x_test);
    const std::string digest = content_digest(x.data());

    for (std::size_t mi = 0; mi < models.size(); ++mi) {
      const ModelVariant& model = models[mi];
      const GramMatrix k = gram_from_base(model.spec, base, digest, seed);
      const FitResult f = fit(k, y, model.mode);
      const std::vector<double> pred = predict(f, cross_from_base(model.spec, base_cross));
      const double test_mse = mse(pred, truth);

      ResultRow row;
      row.experiment = to_string(cfg.id);
      row.seed = std::to_string(seed);
      row.spec = model.spec;
      row.regression_rho = (model.mode.kind == RegressionMode::Kind::ridge) ? model.mode.rho : 0.0;
      row.train_mse = f.train_mse;
      row.test_mse = test_mse;
      out.rows.push_back(row);

      train_sum[mi] += f.train_mse;
      test_sum[mi] += test_mse;
      if (rep == 0) out.first_rep_predictions.push_back(pred);
    }
    if (rep == 0) {
      out.first_rep_truth = truth;
      out.first_rep_test_x = x_test;
    }
  }

  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    ResultRow row;
    row.experiment = to_string(cfg.id);
    row.seed = "mean";
    row.spec = models[mi].spec;
    row.regression_rho = (models[mi].mode.kind == RegressionMode::Kind::ridge) ? models[mi].mode.rho : 0.0;
    row.train_mse = train_sum[mi] / cfg.repetitions;
    row.test_mse = test_sum[mi] / cfg.repetitions;
    out.rows.push_back(row);
  }
  return out;
}

namespace detail {

inline void run_fig2(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  const std::vector<int> degrees{4, 8, 16};
  const double step = 1.0 / 256.0;
  const double zero = 0.0;
  std::string csv = "x,k_local";
  for (int q : degrees) csv += ",k_lg_q" + std::to_string(q);
  csv += "\n";

  const long steps = std::lround((cfg.data.hi - cfg.data.lo) / step);
  for (long i = 0; i <= steps; ++i) {
    const double x = cfg.data.lo + static_cast<double>(i) * step;
    std::vector<std::string> fields{format_g17(x)};
    fields.push_back(format_g17(angle_base_kernel(cfg.kernel.bandwidth, std::span<const double>(&x, 1),
                                                  std::span<const double>(&zero, 1))));
    for (int q : degrees) {
      KernelSpec s = cfg.kernel;
      s.degree = q;
      fields.push_back(
          format_g17(local_global_kernel(s, std::span<const double>(&x, 1), std::span<const double>(&zero, 1))));
    }
    csv += join_csv(fields) + "\n";
  }
  write_text_file(dir / "curve.csv", csv);
}

inline void run_fig3(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  const std::vector<int> dims{1, 5, 20};
  std::string csv = "d,mean_abs_offdiag\n";
  for (int d : dims) {
    const RealMatrix x = gen_uniform(cfg.data.n, d, cfg.data.lo, cfg.data.hi, cfg.master_seed);
    const RealSymMatrix base = base_gram(cfg.kernel, x);
    double acc = 0.0;
    long count = 0;
    for (int i = 0; i < base.dim(); ++i)
      for (int j = 0; j < base.dim(); ++j)
        if (i != j) {
          acc += std::abs(base(i, j));
          ++count;
        }
    csv += std::to_string(d) + "," + format_g17(acc / static_cast<double>(count)) + "\n";
    write_heatmap_pgm(base, dir / ("gram_d" + std::to_string(d) + ".pgm"));
  }
  write_text_file(dir / "offdiag.csv", csv);
}

inline void run_fig4(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  std::vector<ModelVariant> models{local_ridgeless_variant(cfg.kernel),
                                   local_ridge_variant(cfg.kernel, cfg.regression.rho)};
  for (int q : {4, 8, 16}) models.push_back(lg_ridgeless_variant(cfg.kernel, q));

  const FitExperimentOutput out = run_fit_models(cfg, models, /*grid_test=*/true);
  write_results_csv(dir / "results.csv", out.rows);

  std::string csv = "x,f_true";
  for (const ModelVariant& m : models) csv += ",pred_" + m.label;
  csv += "\n";
  for (int i = 0; i < out.first_rep_test_x.rows(); ++i) {
    std::vector<std::string> fields{format_g17(out.first_rep_test_x(i, 0)), format_g17(out.first_rep_truth[i])};
    for (const auto& pred : out.first_rep_predictions) fields.push_back(format_g17(pred[i]));
    csv += join_csv(fields) + "\n";
  }
  write_text_file(dir / "curves.csv", csv);
}

inline void run_table(const ExperimentConfig& cfg, const std::filesystem::path& dir, bool with_ridge,
                      const std::vector<int>& degrees) {
  std::vector<ModelVariant> models{local_ridgeless_variant(cfg.kernel)};
  if (with_ridge) models.push_back(local_ridge_variant(cfg.kernel, cfg.regression.rho));
  for (int q : degrees) models.push_back(lg_ridgeless_variant(cfg.kernel, q));
  const FitExperimentOutput out = run_fit_models(cfg, models, /*grid_test=*/false);
  write_results_csv(dir / "results.csv", out.rows);
}

inline void run_custom(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  const std::vector<ModelVariant> models{{"custom", cfg.kernel, cfg.regression}};
  const FitExperimentOutput out = run_fit_models(cfg, models, /*grid_test=*/false);
  write_results_csv(dir / "results.csv", out.rows);
}

inline void write_spectrum_csv(const std::filesystem::path& path, std::span<const double> eigenvalues) {
  std::string csv = "index,eigenvalue\n";
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    csv += std::to_string(i) + "," + format_g17(eigenvalues[i]) + "\n";
  write_text_file(path, csv);
}

inline void run_fig5(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  const RealMatrix x = gen_uniform(cfg.data.n, cfg.data.d, cfg.data.lo, cfg.data.hi, cfg.master_seed);
  const double rho_ref = cfg.kernel.lambda_global;

  std::string summary = "label,q,max_abs_offdiag_global,lambda_min,min_flat_tail_residual\n";
  auto report_one = [&](const std::string& label, const KernelSpec& spec) {
    const SpectrumReport rep = spectrum_report(spec, x, rho_ref);
    write_spectrum_csv(dir / ("spectrum_" + label + ".csv"), rep.eigenvalues);
    std::string ft = "l,residual,residual_lsq\n";
    for (std::size_t l = 1; l <= rep.flat_tail_residual.size(); ++l)
      ft += std::to_string(l) + "," + format_g17(rep.flat_tail_residual[l - 1]) + "," +
            format_g17(rep.flat_tail_residual_lsq[l - 1]) + "\n";
    write_text_file(dir / ("flattail_" + label + ".csv"), ft);
    summary += label + "," + std::to_string(spec.degree) + "," + format_g17(rep.max_abs_offdiag_global) + "," +
               format_g17(rep.min_eigenvalue()) + "," + format_g17(rep.min_flat_tail_residual()) + "\n";
  };

  KernelSpec local = cfg.kernel;
  local.lambda_global = 0.0;
  local.degree = 1;
  report_one("local", local);
  for (int q : {5, 10, 50, 100}) {
    KernelSpec s = cfg.kernel;
    s.degree = q;
    report_one("q" + std::to_string(q), s);
  }
  write_text_file(dir / "summary.csv", summary);
}

}  // namespace detail

/// Runs the configured experiment, writing every artifact plus a
/// manifest into cfg.out_dir. Reruns with the same configuration produce
/// byte-identical files.
inline void run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::filesystem::path dir(cfg.out_dir);
  ensure_directory(dir);
  switch (cfg.id) {
    case ExperimentId::fig2: detail::run_fig2(cfg, dir); break;
    case ExperimentId::fig3: detail::run_fig3(cfg, dir); break;
    case ExperimentId::fig4: detail::run_fig4(cfg, dir); break;
    case ExperimentId::table1: detail::run_table(cfg, dir, /*with_ridge=*/true, {3, 5, 7}); break;
    case ExperimentId::table2: detail::run_table(cfg, dir, /*with_ridge=*/false, {5, 10, 50, 100}); break;
    case ExperimentId::fig5: detail::run_fig5(cfg, dir); break;
    case ExperimentId::custom: detail::run_custom(cfg, dir); break;
  }
  write_manifest(cfg, dir);
}

}  // namespace lgqk

#endif  // LGQK_EXPERIMENTS_HPP
