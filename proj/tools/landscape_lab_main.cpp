// landscape-lab: seeded experiments over the non-convex landscape library.
//
// Usage:
//   landscape-lab <experiment> --config cfg.json [--seed N] [--out DIR]
//   landscape-lab generate --config gen.json [--out instance.json]
//
// Exit codes: 0 all assertions passed, 1 an assertion failed, 2 usage or
// config error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "landscape/experiment.hpp"
#include "landscape/generate.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitAssertionFailed = 1;
constexpr int kExitUsage = 2;

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return nlohmann::json::parse(in);  // throws parse_error with byte position
}

int run_experiment_command(const std::string& experiment,
                           const std::string& config_path,
                           const std::optional<std::uint64_t>& seed,
                           const std::optional<std::string>& out_dir) {
  landscape::ExperimentConfig cfg;
  try {
    nlohmann::json j = load_json(config_path);
    if (!j.contains("experiment")) j["experiment"] = experiment;
    cfg = j.get<landscape::ExperimentConfig>();
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "config parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kExitUsage;
  }

  if (cfg.experiment != experiment) {
    std::cerr << "config names experiment '" << cfg.experiment
              << "' but subcommand is '" << experiment << "'\n";
    return kExitUsage;
  }
  if (seed) cfg.master_seed = *seed;
  if (out_dir) cfg.output_dir = *out_dir;
  if (cfg.output_dir.empty()) cfg.output_dir = "out";

  landscape::ExperimentReport report;
  try {
    report = landscape::run_experiment(cfg);
    landscape::emit_plots_data(report, cfg.output_dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "experiment failed: " << e.what() << '\n';
    return kExitAssertionFailed;
  }

  for (const auto& a : report.assertions) {
    std::cout << (a.passed ? "PASS " : "FAIL ") << a.name;
    if (!a.detail.empty()) std::cout << " (" << a.detail << ")";
    std::cout << '\n';
  }
  std::cout << "report: " << cfg.output_dir << "/report.json ("
            << report.rows.size() << " rows, "
            << report.wall_time_seconds << " s)\n";
  if (!report.all_passed()) {
    for (const auto& a : report.assertions)
      if (!a.passed) {
        std::cerr << "assertion failed: " << a.name << '\n';
        return kExitAssertionFailed;
      }
  }
  return kExitPass;
}

int run_generate_command(const std::string& config_path,
                         const std::string& out_path) {
  landscape::GeneratorSpec spec;
  try {
    spec = load_json(config_path).get<landscape::GeneratorSpec>();
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "config parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "invalid generator spec: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    nlohmann::json out;
    if (spec.family == "glm")
      out = landscape::gen_glm(spec);
    else if (spec.family == "pca")
      out = landscape::gen_pca(spec);
    else if (spec.family == "mc")
      out = landscape::gen_mc(spec);
    else
      out = landscape::gen_tensor(spec);
    std::ofstream file(out_path);
    if (!file) throw std::runtime_error("cannot write " + out_path);
    file << out.dump(2) << '\n';
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid generator spec: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "generation failed: " << e.what() << '\n';
    return kExitAssertionFailed;
  }
  std::cout << "wrote " << out_path << '\n';
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-convex landscape experiments", "landscape-lab"};
  app.require_subcommand(1);

  const std::vector<std::string> experiments = {
      "check-grad",    "optimize",      "certify",
      "landscape-sweep", "concentration", "scaling-study"};

  struct SubArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
  };
  std::vector<SubArgs> args(experiments.size());

  for (std::size_t i = 0; i < experiments.size(); ++i) {
    CLI::App* sub = app.add_subcommand(experiments[i], experiments[i] + " experiment");
    sub->add_option("--config", args[i].config, "experiment config (JSON)")
        ->required();
    sub->add_option("--seed", args[i].seed, "override master_seed");
    sub->add_option("--out", args[i].out, "override output directory");
  }

  std::string gen_config, gen_out = "instance.json";
  CLI::App* gen = app.add_subcommand("generate", "write a problem instance as JSON");
  gen->add_option("--config", gen_config, "generator spec (JSON)")->required();
  gen->add_option("--out", gen_out, "output instance path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitPass : kExitUsage;
  }

  if (gen->parsed()) return run_generate_command(gen_config, gen_out);
  for (std::size_t i = 0; i < experiments.size(); ++i) {
    if (app.get_subcommands().front()->get_name() == experiments[i])
      return run_experiment_command(experiments[i], args[i].config, args[i].seed,
                                    args[i].out);
  }
  return kExitUsage;
}
