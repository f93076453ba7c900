// Command-line front end: kernel evaluation, Gram/spectrum dumps,
// regression fits, the bundled experiments, and the oracle verification
// suite.
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lgqk/config.hpp"
#include "lgqk/dataset.hpp"
#include "lgqk/experiments.hpp"
#include "lgqk/io.hpp"
#include "lgqk/kernels.hpp"
#include "lgqk/learning.hpp"
#include "lgqk/verification.hpp"
#include "lgqk/version.hpp"

namespace fs = std::filesystem;
using namespace lgqk;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int reps = 0;  // 0 = keep the experiment default
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "key = value configuration file");
  cmd->add_option("--seed", opts.seed, "master seed");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--reps", opts.reps, "number of repetitions");
}

ExperimentConfig resolve(ExperimentId id, const CommonOpts& opts) {
  ExperimentConfig cfg = default_config(id);
  if (!opts.config_path.empty()) load_config_file(cfg, opts.config_path);
  cfg.master_seed = opts.seed;
  if (opts.reps > 0) cfg.repetitions = opts.reps;
  cfg.out_dir = opts.out_dir;
  cfg.validate();
  return cfg;
}

Dataset build_dataset(const ExperimentConfig& cfg) {
  Dataset ds;
  ds.x = gen_uniform(cfg.data.n, cfg.data.d, cfg.data.lo, cfg.data.hi, cfg.master_seed);
  ds.target_kind = cfg.data.target;
  ds.noise_sigma = cfg.data.noise_sigma;
  ds.seed = cfg.master_seed;
  ds.lo = cfg.data.lo;
  ds.hi = cfg.data.hi;
  switch (cfg.data.target) {
    case TargetKind::rkhs_sum:
      ds.y = gen_target_rkhs_sum(ds.x, cfg.kernel.bandwidth, 5, cfg.master_seed ^ kCenterSalt);
      break;
    case TargetKind::cos_sum: ds.y = gen_target_cos_sum(ds.x); break;
    case TargetKind::sin_sum: ds.y = gen_target_sin_sum(ds.x); break;
    case TargetKind::none: ds.y.assign(cfg.data.n, 0.0); break;
  }
  ds.y = add_gaussian_noise(ds.y, cfg.data.noise_sigma, cfg.master_seed ^ kNoiseSalt);
  return ds;
}

int run_kernel(const CommonOpts& opts, const std::string& pairs_path) {
  ExperimentConfig cfg = resolve(ExperimentId::custom, opts);
  const RealMatrix pairs = read_numeric_csv(pairs_path);
  if (pairs.cols() % 2 != 0)
    throw io_error("pairs file must have 2d columns (x followed by z per row)");
  const int d = pairs.cols() / 2;

  std::string csv = "k_lg\n";
  for (int i = 0; i < pairs.rows(); ++i) {
    const auto row = pairs.row(i);
    csv += format_g17(local_global_kernel(cfg.kernel, row.subspan(0, d), row.subspan(d, d))) + "\n";
  }
  ensure_directory(opts.out_dir);
  write_text_file(fs::path(opts.out_dir) / "kernel.csv", csv);
  std::printf("wrote %s (%d pairs)\n", (fs::path(opts.out_dir) / "kernel.csv").c_str(), pairs.rows());
  return 0;
}

int run_gram(const CommonOpts& opts) {
  ExperimentConfig cfg = resolve(ExperimentId::custom, opts);
  const Dataset ds = build_dataset(cfg);
  const GramMatrix k = gram(cfg.kernel, ds.x, cfg.master_seed);
  ensure_directory(opts.out_dir);
  const fs::path dir(opts.out_dir);
  write_matrix_csv(dir / "gram.csv", k.entries);
  write_heatmap_pgm(k.entries, dir / "gram.pgm");
  write_manifest(cfg, dir);
  std::printf("wrote gram.csv and gram.pgm for n=%d (digest %s)\n", k.size(), k.dataset_digest.c_str());
  return 0;
}

int run_fit(const CommonOpts& opts) {
  ExperimentConfig cfg = resolve(ExperimentId::custom, opts);
  run_experiment(cfg);
  std::printf("wrote %s\n", (fs::path(cfg.out_dir) / "results.csv").c_str());
  return 0;
}

int run_spectrum(const CommonOpts& opts) {
  ExperimentConfig cfg = resolve(ExperimentId::custom, opts);
  const Dataset ds = build_dataset(cfg);
  const SpectrumReport rep = spectrum_report(cfg.kernel, ds.x, cfg.regression.rho);

  ensure_directory(opts.out_dir);
  const fs::path dir(opts.out_dir);
  std::string csv = "index,eigenvalue\n";
  for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i)
    csv += std::to_string(i) + "," + format_g17(rep.eigenvalues[i]) + "\n";
  write_text_file(dir / "spectrum.csv", csv);

  std::string ft = "l,residual,residual_lsq\n";
  for (std::size_t l = 1; l <= rep.flat_tail_residual.size(); ++l)
    ft += std::to_string(l) + "," + format_g17(rep.flat_tail_residual[l - 1]) + "," +
          format_g17(rep.flat_tail_residual_lsq[l - 1]) + "\n";
  write_text_file(dir / "flattail.csv", ft);
  write_manifest(cfg, dir);
  std::printf("wrote spectrum.csv and flattail.csv (lambda_min %s, max global offdiag %s)\n",
              format_g17(rep.min_eigenvalue()).c_str(), format_g17(rep.max_abs_offdiag_global).c_str());
  return 0;
}

int run_experiment_cmd(const std::string& id_name, const CommonOpts& opts) {
  const ExperimentConfig cfg = resolve(parse_experiment_id(id_name), opts);
  run_experiment(cfg);
  std::printf("experiment %s finished, outputs in %s\n", id_name.c_str(), cfg.out_dir.c_str());
  return 0;
}

int run_verify(const CommonOpts& opts) {
  const int rounds = opts.reps > 0 ? opts.reps : 1;
  bool all_ok = true;
  std::string report;
  for (int round = 0; round < rounds; ++round) {
    const std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(round);
    for (const CheckResult& r : run_verification(seed)) {
      const std::string line = std::string(r.passed ? "PASS" : "FAIL") + "  " + r.name + " (worst error " +
                               format_g17(r.worst_error) + ", tolerance " + format_g17(r.tolerance) + ", seed " +
                               std::to_string(seed) + ")";
      std::printf("%s\n", line.c_str());
      report += line + "\n";
      all_ok = all_ok && r.passed;
    }
  }
  if (!opts.out_dir.empty() && opts.out_dir != "out") {
    ensure_directory(opts.out_dir);
    write_text_file(fs::path(opts.out_dir) / "verify.txt", report);
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kArtifactVersion) + " - local-global quantum kernel regression toolkit"};
  app.require_subcommand(1);

  CommonOpts kernel_opts, gram_opts, fit_opts, spectrum_opts, exp_opts, verify_opts;
  std::string pairs_path, experiment_id;

  CLI::App* kernel_cmd = app.add_subcommand("kernel", "evaluate the local-global kernel on pairs from a CSV");
  add_common(kernel_cmd, kernel_opts);
  kernel_cmd->add_option("--pairs", pairs_path, "CSV with 2d columns per row: x then z")->required();

  CLI::App* gram_cmd = app.add_subcommand("gram", "emit the Gram matrix as CSV and PGM heatmap");
  add_common(gram_cmd, gram_opts);

  CLI::App* fit_cmd = app.add_subcommand("fit", "train/test regression, results to CSV");
  add_common(fit_cmd, fit_opts);

  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalue and flat-tail diagnostics to CSV");
  add_common(spectrum_cmd, spectrum_opts);

  CLI::App* exp_cmd = app.add_subcommand("experiment", "run a bundled experiment preset");
  exp_cmd->add_option("id", experiment_id, "one of fig2, fig3, fig4, table1, table2, fig5, custom")->required();
  add_common(exp_cmd, exp_opts);

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the closed-form vs simulator equivalence suite");
  add_common(verify_cmd, verify_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (kernel_cmd->parsed()) return run_kernel(kernel_opts, pairs_path);
    if (gram_cmd->parsed()) return run_gram(gram_opts);
    if (fit_cmd->parsed()) return run_fit(fit_opts);
    if (spectrum_cmd->parsed()) return run_spectrum(spectrum_opts);
    if (exp_cmd->parsed()) return run_experiment_cmd(experiment_id, exp_opts);
    if (verify_cmd->parsed()) return run_verify(verify_opts);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
