#include <catch2/catch.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <vector>

#include "lgqk/config.hpp"
#include "lgqk/dataset.hpp"
#include "lgqk/digest.hpp"
#include "lgqk/experiments.hpp"
#include "lgqk/io.hpp"
#include "lgqk/rng.hpp"
#include "lgqk/verification.hpp"

using namespace lgqk;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lgqk_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct ParsedPgm {
  int width = 0, height = 0, maxval = 0;
  std::vector<int> pixels;
};

ParsedPgm parse_pgm(const fs::path& path) {
  std::istringstream in(read_text_file(path));
  std::string magic;
  in >> magic;
  REQUIRE(magic == "P2");
  ParsedPgm img;
  in >> img.width >> img.height >> img.maxval;
  int v;
  while (in >> v) img.pixels.push_back(v);
  return img;
}

}  // namespace

TEST_CASE("Rng determinism and distributions") {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.uniform() == b.uniform());
    CHECK(a.normal() == b.normal());
  }
  Rng r(5);
  double mean = 0.0, sq = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double g = r.normal();
    mean += g;
    sq += g * g;
  }
  mean /= n;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(std::sqrt(sq / n - mean * mean) - 1.0) < 0.02);
}

TEST_CASE("gen_uniform") {
  const RealMatrix x = gen_uniform(3, 2, -1.0, 1.0, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(x(i, j) >= -1.0);
      CHECK(x(i, j) < 1.0);
    }
  const RealMatrix y = gen_uniform(3, 2, -1.0, 1.0, 9);
  CHECK(x.data() == y.data());

  const RealMatrix big = gen_uniform(10000, 1, -1.0, 1.0, 11);
  double mean = 0.0;
  for (int i = 0; i < big.rows(); ++i) mean += big(i, 0);
  CHECK(std::abs(mean / big.rows()) < 0.03);

  CHECK_THROWS_AS(gen_uniform(3, 2, 1.0, -1.0, 0), value_error);
  CHECK_THROWS_AS(gen_uniform(0, 2, -1.0, 1.0, 0), value_error);
}

TEST_CASE("rkhs-sum target") {
  const double c = 3.0 * std::numbers::pi / 4.0;
  const auto centers = rkhs_centers(5, 77);
  for (double w : centers) {
    CHECK(w >= -0.75);
    CHECK(w <= 0.75);
  }

  // at a center the own-kernel term is 1, everything else nonnegative
  const RealMatrix at_center = RealMatrix::from_row_major(1, 1, {centers[0]});
  const auto f_center = eval_rkhs_sum(at_center, c, centers);
  CHECK(f_center[0] >= 2.0);

  const RealMatrix grid = linspace_column(-0.75, 0.75, 64);
  const auto f = eval_rkhs_sum(grid, c, centers);
  for (int i = 0; i < 64; ++i) {
    CHECK(f[i] >= 1.0);
    CHECK(f[i] <= 6.0);
    // re-evaluation through the raw formula
    double expect = 1.0;
    for (double w : centers) {
      const double cj = std::cos(0.5 * c * std::abs(grid(i, 0) - w));
      expect += cj * cj;
    }
    CHECK(f[i] == Approx(expect).margin(1e-14));
  }

  CHECK_THROWS_AS(eval_rkhs_sum(RealMatrix(2, 2, 0.0), c, centers), dimension_error);
}

TEST_CASE("cos-sum and sin-sum targets") {
  const RealMatrix zeros(1, 20, 0.0);
  CHECK(gen_target_cos_sum(zeros)[0] == Approx(20.0).margin(1e-14));

  const RealMatrix x100 = RealMatrix::from_row_major(1, 1, {100.0});
  CHECK(gen_target_cos_sum(x100)[0] == Approx(-1.0).margin(1e-14));

  Rng rng(13);
  RealMatrix row(1, 6);
  for (int j = 0; j < 6; ++j) row(0, j) = rng.uniform(-2.0, 2.0);
  double cos_expect = 0.0, sum = 0.0;
  for (int j = 0; j < 6; ++j) {
    cos_expect += std::cos(0.01 * std::numbers::pi * row(0, j));
    sum += row(0, j);
  }
  CHECK(gen_target_cos_sum(row)[0] == Approx(cos_expect).margin(1e-14));
  CHECK(gen_target_sin_sum(row)[0] == Approx(std::sin(sum)).margin(1e-14));

  CHECK(gen_target_sin_sum(RealMatrix(1, 3, 0.0))[0] == 0.0);
  CHECK(gen_target_sin_sum(RealMatrix::from_row_major(1, 1, {1.0}))[0] == Approx(0.8414709848078965).margin(1e-12));
  const RealMatrix many = gen_uniform(50, 4, -3.0, 3.0, 21);
  for (double v : gen_target_sin_sum(many)) {
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("add_gaussian_noise") {
  const std::vector<double> y{1.0, 2.0, 3.0};
  CHECK(add_gaussian_noise(y, 0.0, 4) == y);
  CHECK(add_gaussian_noise(y, 0.3, 4) == add_gaussian_noise(y, 0.3, 4));
  CHECK_THROWS_AS(add_gaussian_noise(y, -1.0, 4), value_error);

  const std::vector<double> base(100000, 0.0);
  const auto noisy = add_gaussian_noise(base, 1.0, 8);
  double mean = 0.0, sq = 0.0;
  for (double v : noisy) {
    mean += v;
    sq += v * v;
  }
  mean /= noisy.size();
  CHECK(std::abs(std::sqrt(sq / noisy.size() - mean * mean) - 1.0) < 0.02);
}

TEST_CASE("content digest") {
  const std::vector<double> a{1.0, 2.0, 3.0};
  const std::vector<double> b{1.0, 2.0, 3.0000000001};
  CHECK(content_digest(a) == content_digest(a));
  CHECK(content_digest(a) != content_digest(b));
  CHECK(content_digest(a).size() == 16);
}

TEST_CASE("config parsing") {
  ExperimentConfig cfg = default_config(ExperimentId::custom);
  apply_config_text(cfg,
                    "# comment line\n"
                    "kernel.family = fourier\n"
                    "kernel.c = 2.5\n"
                    "kernel.s = 3\n"
                    "kernel.q = 7\n"
                    "kernel.lambda_local = 0.5\n"
                    "kernel.lambda_global = 0.25  # trailing comment\n"
                    "data.n = 17\n"
                    "data.d = 4\n"
                    "data.lo = -2\n"
                    "data.hi = 2\n"
                    "data.target = sin-sum\n"
                    "data.noise_sigma = 0.05\n"
                    "regression.mode = ridge\n"
                    "regression.rho = 0.01\n"
                    "test.n = 33\n");
  CHECK(cfg.kernel.family == KernelFamily::fourier);
  CHECK(cfg.kernel.bandwidth == 2.5);
  CHECK(cfg.kernel.subsystem_qubits == 3);
  CHECK(cfg.kernel.degree == 7);
  CHECK(cfg.kernel.lambda_local == 0.5);
  CHECK(cfg.kernel.lambda_global == 0.25);
  CHECK(cfg.kernel.fourier_eigenvalues == harmonic_eigenvalues(3));  // auto-filled
  CHECK(cfg.data.n == 17);
  CHECK(cfg.data.d == 4);
  CHECK(cfg.data.target == TargetKind::sin_sum);
  CHECK(cfg.regression.kind == RegressionMode::Kind::ridge);
  CHECK(cfg.regression.rho == 0.01);
  CHECK(cfg.test_n == 33);
  CHECK_NOTHROW(cfg.validate());

  CHECK_THROWS_AS(apply_config_text(cfg, "mystery.key = 1\n"), config_error);
  CHECK_THROWS_AS(apply_config_text(cfg, "kernel.c = abc\n"), config_error);
  CHECK_THROWS_AS(apply_config_text(cfg, "no equals sign\n"), config_error);

  ExperimentConfig bad = default_config(ExperimentId::custom);
  bad.data.n = 0;
  CHECK_THROWS_AS(bad.validate(), config_error);
  bad = default_config(ExperimentId::custom);
  bad.repetitions = 0;
  CHECK_THROWS_AS(bad.validate(), config_error);
}

TEST_CASE("format_g17 round-trips doubles") {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const double v = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform(-12.0, 12.0));
    CHECK(std::strtod(format_g17(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("heatmap PGM") {
  const fs::path dir = fresh_dir("pgm");

  SECTION("identity scaling") {
    write_heatmap_pgm(RealSymMatrix::identity(2), dir / "eye.pgm");
    const ParsedPgm img = parse_pgm(dir / "eye.pgm");
    CHECK(img.width == 2);
    CHECK(img.maxval == 255);
    CHECK(img.pixels == std::vector<int>{255, 0, 0, 255});
    const std::string side = read_text_file(dir / "eye.pgm.scale.txt");
    CHECK(side.find("min = 0") != std::string::npos);
    CHECK(side.find("max = 1") != std::string::npos);
  }
  SECTION("constant matrix renders as zeros with a degenerate-range note") {
    RealSymMatrix m(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j <= i; ++j) m.set(i, j, 0.7);
    write_heatmap_pgm(m, dir / "const.pgm");
    const ParsedPgm img = parse_pgm(dir / "const.pgm");
    for (int v : img.pixels) CHECK(v == 0);
    CHECK(read_text_file(dir / "const.pgm.scale.txt").find("degenerate") != std::string::npos);
  }
  SECTION("round trip recovers the scaled pixels exactly") {
    Rng rng(32);
    RealSymMatrix m(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j <= i; ++j) m.set(i, j, rng.uniform(-2.0, 5.0));
    write_heatmap_pgm(m, dir / "rand.pgm");
    const ParsedPgm img = parse_pgm(dir / "rand.pgm");
    double lo = m(0, 0), hi = m(0, 0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        lo = std::min(lo, m(i, j));
        hi = std::max(hi, m(i, j));
      }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(img.pixels[i * 3 + j] == static_cast<int>(std::lround(255.0 * (m(i, j) - lo) / (hi - lo))));
  }
}

TEST_CASE("read_numeric_csv") {
  const fs::path dir = fresh_dir("csv");
  write_text_file(dir / "pairs.csv", "0.5, 1.5\n-0.25 0.75\n# comment\n\n2,3\n");
  const RealMatrix m = read_numeric_csv(dir / "pairs.csv");
  REQUIRE(m.rows() == 3);
  REQUIRE(m.cols() == 2);
  CHECK(m(1, 0) == -0.25);
  CHECK(m(2, 1) == 3.0);

  write_text_file(dir / "ragged.csv", "1,2\n3\n");
  CHECK_THROWS_AS(read_numeric_csv(dir / "ragged.csv"), io_error);
}

TEST_CASE("fig2 experiment emits the kernel section curve") {
  const fs::path dir = fresh_dir("fig2");
  ExperimentConfig cfg = default_config(ExperimentId::fig2);
  cfg.out_dir = dir.string();
  run_experiment(cfg);

  const std::string csv = read_text_file(dir / "curve.csv");
  std::istringstream in(csv);
  std::string header, first;
  std::getline(in, header);
  CHECK(header == "x,k_local,k_lg_q4,k_lg_q8,k_lg_q16");
  std::getline(in, first);
  int rows = 1;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 1025);  // [-2, 2] at 1/256 steps

  // first row is x = -2; check values against scalar evaluation
  std::istringstream fr(first);
  std::vector<double> fields;
  std::string tok;
  while (std::getline(fr, tok, ',')) fields.push_back(std::strtod(tok.c_str(), nullptr));
  REQUIRE(fields.size() == 5);
  CHECK(fields[0] == -2.0);
  const double zero = 0.0, xv = -2.0;
  const double c = cfg.kernel.bandwidth;
  const double k = angle_base_kernel(c, std::span<const double>(&xv, 1), std::span<const double>(&zero, 1));
  CHECK(fields[1] == k);
  CHECK(fields[2] == k + 0.5 * std::pow(k, 4));
  CHECK(read_text_file(dir / "manifest.txt").find("experiment = fig2") != std::string::npos);
}

TEST_CASE("fig3 experiment emits heatmaps with shrinking off-diagonals") {
  const fs::path dir = fresh_dir("fig3");
  ExperimentConfig cfg = default_config(ExperimentId::fig3);
  cfg.out_dir = dir.string();
  cfg.master_seed = 3;
  run_experiment(cfg);

  for (int d : {1, 5, 20}) CHECK(fs::exists(dir / ("gram_d" + std::to_string(d) + ".pgm")));
  std::istringstream in(read_text_file(dir / "offdiag.csv"));
  std::string line;
  std::getline(in, line);  // header
  double prev = 1e9;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    const double v = std::strtod(line.substr(comma + 1).c_str(), nullptr);
    CHECK(v < prev);
    prev = v;
    ++rows;
  }
  CHECK(rows == 3);
  CHECK(prev < 0.01);
}

TEST_CASE("custom experiment writes per-repetition rows plus a mean row") {
  const fs::path dir = fresh_dir("custom");
  ExperimentConfig cfg = default_config(ExperimentId::custom);
  cfg.data.n = 20;
  cfg.test_n = 30;
  cfg.repetitions = 3;
  cfg.master_seed = 5;
  cfg.kernel.degree = 4;
  cfg.kernel.lambda_global = 0.1;
  cfg.out_dir = dir.string();
  run_experiment(cfg);

  std::istringstream in(read_text_file(dir / "results.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == results_csv_header());
  std::vector<std::string> rows;
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(line);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].find("custom,5,angle") == 0);
  CHECK(rows[3].find("custom,mean,") == 0);

  const std::string manifest = read_text_file(dir / "manifest.txt");
  CHECK(manifest.find("rep_seed.0 = 5") != std::string::npos);
  CHECK(manifest.find("rep_seed.2 = 7") != std::string::npos);
  CHECK(manifest.find(kArtifactVersion) != std::string::npos);
}

TEST_CASE("experiment reruns are byte-identical") {
  ExperimentConfig cfg = default_config(ExperimentId::fig4);
  cfg.repetitions = 3;
  cfg.master_seed = 11;

  const fs::path d1 = fresh_dir("det1"), d2 = fresh_dir("det2");
  cfg.out_dir = d1.string();
  run_experiment(cfg);
  cfg.out_dir = d2.string();
  run_experiment(cfg);

  CHECK(read_text_file(d1 / "results.csv") == read_text_file(d2 / "results.csv"));
  CHECK(read_text_file(d1 / "curves.csv") == read_text_file(d2 / "curves.csv"));
  CHECK(read_text_file(d1 / "manifest.txt") == read_text_file(d2 / "manifest.txt"));
}

TEST_CASE("fig5 experiment at reduced size emits spectra and flat-tail curves") {
  const fs::path dir = fresh_dir("fig5");
  ExperimentConfig cfg = default_config(ExperimentId::fig5);
  cfg.data.n = 60;
  cfg.kernel.lambda_global = 1.0 / 60.0;
  cfg.out_dir = dir.string();
  cfg.master_seed = 2;
  run_experiment(cfg);

  for (const char* name : {"spectrum_local.csv", "spectrum_q5.csv", "spectrum_q100.csv", "flattail_q10.csv",
                           "summary.csv"})
    CHECK(fs::exists(dir / name));

  std::istringstream in(read_text_file(dir / "spectrum_q100.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "index,eigenvalue");
  double prev = std::numeric_limits<double>::infinity();
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const double v = std::strtod(line.substr(line.find(',') + 1).c_str(), nullptr);
    CHECK(v <= prev);
    prev = v;
    ++rows;
  }
  CHECK(rows == 60);
}

TEST_CASE("oracle verification suite is green") {
  for (const CheckResult& r : run_verification(2024)) {
    INFO(r.name << " worst error " << r.worst_error << " tol " << r.tolerance);
    CHECK(r.passed);
  }
}

namespace {

// Test-MSE chain local, then each listed degree, on one drawn dataset.
std::vector<double> risk_chain(const KernelSpec& kernel, int n, int d, TargetKind target, double sigma,
                               const std::vector<int>& degrees, std::uint64_t seed) {
  const RealMatrix x = gen_uniform(n, d, -1.0, 1.0, seed);
  std::vector<double> clean;
  switch (target) {
    case TargetKind::cos_sum: clean = gen_target_cos_sum(x); break;
    default: clean = gen_target_sin_sum(x); break;
  }
  const auto y = add_gaussian_noise(clean, sigma, seed ^ kNoiseSalt);
  const RealMatrix xt = gen_uniform(n, d, -1.0, 1.0, seed ^ kTestSalt);
  const auto truth = target == TargetKind::cos_sum ? gen_target_cos_sum(xt) : gen_target_sin_sum(xt);

  KernelSpec local = kernel;
  local.lambda_global = 0.0;
  local.degree = 1;
  const RealSymMatrix base = base_gram(local, x);
  const RealMatrix cross = base_cross_gram(local, x, xt);

  std::vector<double> chain;
  {
    const auto f = fit(gram_from_base(local, base, "", seed), y, RegressionMode::ridgeless());
    chain.push_back(mse(predict(f, cross_from_base(local, cross)), truth));
  }
  for (int q : degrees) {
    KernelSpec s = kernel;
    s.degree = q;
    const auto f = fit(gram_from_base(s, base, "", seed), y, RegressionMode::ridgeless());
    chain.push_back(mse(predict(f, cross_from_base(s, cross)), truth));
  }
  return chain;
}

}  // namespace

TEST_CASE("risk orderings hold across master seeds") {
  SECTION("wide-dimension angle benchmark, full size") {
    KernelSpec spec;
    spec.family = KernelFamily::angle;
    spec.bandwidth = std::numbers::pi / 20.0;
    spec.lambda_local = 1.0;
    spec.lambda_global = 0.07;
    int ok = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto c = risk_chain(spec, 200, 20, TargetKind::cos_sum, 0.5, {3, 5, 7}, 9000 + s);
      if (c[0] > c[1] && c[1] > c[2] && c[2] > c[3]) ++ok;
    }
    CHECK(ok >= 18);
  }
  SECTION("Fourier benchmark at reduced size") {
    // The q=50 vs q=100 step only separates at the full n=1000 scale
    // (the acceptance suite covers it); the rest of the chain is
    // scale-robust and checked here at n=300.
    KernelSpec spec;
    spec.family = KernelFamily::fourier;
    spec.bandwidth = 1.0;
    spec.subsystem_qubits = 5;
    spec.lambda_local = 1.0;
    spec.lambda_global = 1.0 / 300.0;
    spec.fourier_eigenvalues = harmonic_eigenvalues(5);
    int ok = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto c = risk_chain(spec, 300, 5, TargetKind::sin_sum, 0.1, {5, 10, 50}, 9100 + s);
      if (c[0] > c[1] && c[1] > c[2] && c[2] > c[3]) ++ok;
    }
    CHECK(ok >= 18);
  }
}
