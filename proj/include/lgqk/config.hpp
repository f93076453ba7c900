#ifndef LGQK_CONFIG_HPP
#define LGQK_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lgqk/dataset.hpp"
#include "lgqk/errors.hpp"
#include "lgqk/kernels.hpp"
#include "lgqk/learning.hpp"

namespace lgqk {

enum class ExperimentId { fig2, fig3, fig4, table1, table2, fig5, custom };

inline const char* to_string(ExperimentId id) {
  switch (id) {
    case ExperimentId::fig2: return "fig2";
    case ExperimentId::fig3: return "fig3";
    case ExperimentId::fig4: return "fig4";
    case ExperimentId::table1: return "table1";
    case ExperimentId::table2: return "table2";
    case ExperimentId::fig5: return "fig5";
    default: return "custom";
  }
}

inline ExperimentId parse_experiment_id(const std::string& s) {
  if (s == "fig2") return ExperimentId::fig2;
  if (s == "fig3") return ExperimentId::fig3;
  if (s == "fig4") return ExperimentId::fig4;
  if (s == "table1") return ExperimentId::table1;
  if (s == "table2") return ExperimentId::table2;
  if (s == "fig5") return ExperimentId::fig5;
  if (s == "custom") return ExperimentId::custom;
  throw config_error("unknown experiment id '" + s + "'");
}

struct DataConfig {
  int n = 50;
  int d = 1;
  double lo = -1.0;
  double hi = 1.0;
  TargetKind target = TargetKind::none;
  double noise_sigma = 0.0;
};

struct ExperimentConfig {
  ExperimentId id = ExperimentId::custom;
  KernelSpec kernel;
  DataConfig data;
  RegressionMode regression = RegressionMode::ridgeless();
  int test_n = 1000;
  int repetitions = 1;
  std::uint64_t master_seed = 0;
  std::string out_dir = "out";

  void validate() const {
    kernel.validate();
    if (data.n < 1) throw config_error("data.n must be >= 1");
    if (data.d < 1) throw config_error("data.d must be >= 1");
    if (!(data.lo < data.hi)) throw config_error("data.lo must be < data.hi");
    if (data.noise_sigma < 0.0) throw config_error("data.noise_sigma must be nonnegative");
    if (test_n < 1) throw config_error("test.n must be >= 1");
    if (repetitions < 1) throw config_error("repetitions must be >= 1");
    if (regression.rho < 0.0) throw config_error("regression.rho must be nonnegative");
  }
};

/// Bundled experiment presets; `custom` starts from a small generic
/// setup and is meant to be overridden by a config file.
inline ExperimentConfig default_config(ExperimentId id) {
  ExperimentConfig cfg;
  cfg.id = id;
  switch (id) {
    case ExperimentId::fig2:
      cfg.kernel = {KernelFamily::angle, 3.0 * std::numbers::pi / 4.0, 1, 4, 1.0, 0.5, {}};
      cfg.data = {1, 1, -2.0, 2.0, TargetKind::none, 0.0};
      break;
    case ExperimentId::fig3:
      cfg.kernel = {KernelFamily::angle, 3.0 * std::numbers::pi / 4.0, 1, 1, 1.0, 0.0, {}};
      cfg.data = {40, 20, -1.0, 1.0, TargetKind::none, 0.0};
      break;
    case ExperimentId::fig4:
      cfg.kernel = {KernelFamily::angle, 3.0 * std::numbers::pi / 4.0, 1, 16, 1.0, 0.1, {}};
      cfg.data = {8, 1, -0.75, 0.75, TargetKind::rkhs_sum, 0.5};
      cfg.regression = RegressionMode::ridge(0.1);
      cfg.test_n = 512;
      cfg.repetitions = 50;
      break;
    case ExperimentId::table1:
      cfg.kernel = {KernelFamily::angle, std::numbers::pi / 20.0, 1, 7, 1.0, 0.07, {}};
      cfg.data = {200, 20, -1.0, 1.0, TargetKind::cos_sum, 0.5};
      cfg.regression = RegressionMode::ridge(0.07);
      cfg.test_n = 1000;
      cfg.repetitions = 20;
      break;
    case ExperimentId::table2:
    case ExperimentId::fig5:
      cfg.kernel = {KernelFamily::fourier, 1.0, 5, 100, 1.0, 1.0 / 1000.0, harmonic_eigenvalues(5)};
      cfg.data = {1000, 5, -1.0, 1.0, TargetKind::sin_sum, 0.1};
      cfg.regression = RegressionMode::ridgeless();
      cfg.test_n = 1000;
      cfg.repetitions = (id == ExperimentId::table2) ? 5 : 1;
      break;
    case ExperimentId::custom:
      cfg.kernel = {KernelFamily::angle, 1.0, 1, 1, 1.0, 0.0, {}};
      cfg.data = {50, 2, -1.0, 1.0, TargetKind::cos_sum, 0.1};
      cfg.test_n = 200;
      break;
  }
  return cfg;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "': cannot parse '" + v + "' as a number");
  }
}

inline long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "': cannot parse '" + v + "' as an integer");
  }
}

}  // namespace detail

/// Applies `key = value` lines (with # comments) on top of an existing
/// configuration.
inline void apply_config_text(ExperimentConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));

    if (key == "kernel.family") {
      if (value == "angle")
        cfg.kernel.family = KernelFamily::angle;
      else if (value == "fourier")
        cfg.kernel.family = KernelFamily::fourier;
      else
        throw config_error("kernel.family must be 'angle' or 'fourier'");
    } else if (key == "kernel.c") {
      cfg.kernel.bandwidth = detail::parse_double(key, value);
    } else if (key == "kernel.s") {
      cfg.kernel.subsystem_qubits = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "kernel.q") {
      cfg.kernel.degree = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "kernel.lambda_local") {
      cfg.kernel.lambda_local = detail::parse_double(key, value);
    } else if (key == "kernel.lambda_global") {
      cfg.kernel.lambda_global = detail::parse_double(key, value);
    } else if (key == "data.n") {
      cfg.data.n = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "data.d") {
      cfg.data.d = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "data.lo") {
      cfg.data.lo = detail::parse_double(key, value);
    } else if (key == "data.hi") {
      cfg.data.hi = detail::parse_double(key, value);
    } else if (key == "data.target") {
      cfg.data.target = parse_target_kind(value);
    } else if (key == "data.noise_sigma") {
      cfg.data.noise_sigma = detail::parse_double(key, value);
    } else if (key == "regression.mode") {
      if (value == "ridgeless")
        cfg.regression = RegressionMode::ridgeless();
      else if (value == "ridge")
        cfg.regression = RegressionMode{RegressionMode::Kind::ridge, cfg.regression.rho};
      else
        throw config_error("regression.mode must be 'ridgeless' or 'ridge'");
    } else if (key == "regression.rho") {
      cfg.regression.rho = detail::parse_double(key, value);
    } else if (key == "test.n") {
      cfg.test_n = static_cast<int>(detail::parse_int(key, value));
    } else {
      throw config_error("unknown config key '" + key + "'");
    }
  }

  // A Fourier kernel configured without an explicit eigenvalue list gets
  // the reciprocal ladder of its block size.
  if (cfg.kernel.family == KernelFamily::fourier &&
      cfg.kernel.fourier_eigenvalues.size() != (std::size_t{1} << cfg.kernel.subsystem_qubits))
    cfg.kernel.fourier_eigenvalues = harmonic_eigenvalues(cfg.kernel.subsystem_qubits);
}

inline void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str());
}

}  // namespace lgqk

#endif  // LGQK_CONFIG_HPP
