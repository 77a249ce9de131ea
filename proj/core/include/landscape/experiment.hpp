#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "landscape/certify.hpp"
#include "landscape/generate.hpp"
#include "landscape/optimize.hpp"

namespace landscape {

inline constexpr const char* kVersion = "0.1.0";

struct OptimizerConfig {
  double step_size = 0.0;  // 0: family-specific default
  long max_iters = 50000;
  double grad_tol = 1e-9;
  bool use_perturbation = true;
  double perturb_radius = 1e-3;
  double perturb_grad_threshold = 0.0;  // 0: 10 * grad_tol
  long perturb_cooldown_iters = 0;      // 0: ceil(2 / step)
  double x0_radius = 1.0;
};

// One experiment = one runnable, seeded check of a landscape statement.
// Every field has a default; the resolved config (defaults included) is
// echoed into the report.
struct ExperimentConfig {
  std::string experiment;  // check-grad | optimize | certify | landscape-sweep
                           // | concentration | scaling-study
  GeneratorSpec generator;
  OptimizerConfig optimizer;
  ClassifierThresholds certifier;
  int n_runs = 1;
  std::uint64_t master_seed = 1;
  std::string output_dir;

  // check-grad
  int fd_points = 100;
  double fd_rel_tol = 1e-5;
  double fd_step_h = 1e-5;

  // landscape-sweep
  std::string sweep_kind = "classify";  // classify | condition
  std::string condition = "weak_quasi_convex";
  double condition_parameter = 0.0;  // 0: family default (glm: 2*gamma)
  int n_samples = 500;
  bool use_population_proxy = false;
  int proxy_samples = 100000;

  // concentration
  int n_trials = 1000;

  // scaling-study
  int scaling_n_small = 10000;
  int scaling_factor = 4;

  // assertion thresholds
  double oracle_grad_tol = 1e-9;
  double assert_pca_f_gap = 1e-6;
  double assert_pca_dist = 1e-3;
  double assert_tensor_overlap_gap = 1e-5;
  double assert_mc_localization_const = 5.0;
  double assert_probe_worst_margin = -1e-3;
  double assert_scaling_lo = 1.3;
  double assert_scaling_hi = 3.0;

  void validate() const;
};

void to_json(nlohmann::json& j, const OptimizerConfig& cfg);
void from_json(const nlohmann::json& j, OptimizerConfig& cfg);
void to_json(nlohmann::json& j, const ClassifierThresholds& thr);
void from_json(const nlohmann::json& j, ClassifierThresholds& thr);
void to_json(nlohmann::json& j, const ExperimentConfig& cfg);
void from_json(const nlohmann::json& j, ExperimentConfig& cfg);

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentReport {
  nlohmann::json config_echo;
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
  nlohmann::json summary;
  std::vector<Assertion> assertions;
  double wall_time_seconds = 0.0;
  std::string version = kVersion;

  // In-memory only (not serialized): optimizer traces for plot emission.
  std::vector<OptimizerTrace> traces;
  std::optional<double> f_star;

  bool all_passed() const;
};

nlohmann::json report_to_json(const ExperimentReport& report);

// rows.csv with stable number formatting (%.17g); identical config + seed
// gives identical bytes.
void write_rows_csv(const ExperimentReport& report, std::ostream& os);

// Dispatches on cfg.experiment, runs it, and (when output_dir is non-empty)
// writes report.json, rows.csv, and per-run trace CSVs into it.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Plot-ready CSVs under <out_dir>/plots: per-run decay curves
// (iter, log10(f - f_star)) when the report carries traces with a known
// optimum, and a (grad_norm, hess_min_eig) scatter for sweep reports.
void emit_plots_data(const ExperimentReport& report,
                     const std::filesystem::path& out_dir);

// Step sizes used when OptimizerConfig.step_size == 0.
double default_pca_step(const PcaInstance& inst);
double default_mc_step(const McInstance& inst);
double default_glm_step(const GlmInstance& inst);
double default_tensor_ascent_step();

}  // namespace landscape
