#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "avgsamp/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSuiteFailure = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<int> trials;
  std::optional<double> p;
};

avgsamp::ExperimentConfig load_config(const std::string& path,
                                      const Overrides& ov) {
  auto cfg = avgsamp::ExperimentConfig::from_file(path);
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.out) cfg.out_path = *ov.out;
  if (ov.trials) cfg.trials = *ov.trials;
  if (ov.p) cfg.p = *ov.p;
  if (ov.format) {
    if (*ov.format == "csv") {
      cfg.format = avgsamp::OutputFormat::csv;
    } else if (*ov.format == "json") {
      cfg.format = avgsamp::OutputFormat::json;
    } else {
      throw avgsamp::ValidationError("--format: must be csv or json");
    }
  }
  return cfg;
}

void emit(const avgsamp::ExperimentConfig& cfg, const std::string& payload) {
  if (cfg.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(cfg.out_path);
  if (!out) {
    throw avgsamp::ValidationError("cannot write output file: " + cfg.out_path);
  }
  out << payload;
}

std::string render_rows(const avgsamp::ExperimentConfig& cfg,
                        const std::vector<avgsamp::BoundReport>& rows) {
  if (cfg.format == avgsamp::OutputFormat::csv) {
    return avgsamp::rows_to_csv(rows);
  }
  return avgsamp::rows_to_json(rows).dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated average-sampling reconstruction of harmonizable "
               "processes: bound sweeps, Monte Carlo checks, and the "
               "verification suite"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;
  app.add_option("--config", config_path, "experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--seed", ov.seed, "override master seed");
  app.add_option("--out", ov.out, "override output path (default stdout)");
  app.add_option("--format", ov.format, "override output format: csv|json");
  app.add_option("--trials", ov.trials, "override Monte Carlo trial count");
  app.add_option("--p", ov.p, "override the Hoelder exponent p");

  auto* cmd_bounds = app.add_subcommand(
      "bounds", "sweep (t, N): exact error next to every bound");
  auto* cmd_mse = app.add_subcommand(
      "mse", "bounds sweep plus Monte Carlo error columns");
  auto* cmd_verify = app.add_subcommand(
      "verify", "run the invariant suites; findings as JSON");
  auto* cmd_simulate = app.add_subcommand(
      "simulate", "dump sample paths over the t grid as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitValidation;
  }

  try {
    auto cfg = load_config(config_path, ov);
    if (cmd_bounds->parsed()) {
      emit(cfg, render_rows(cfg, avgsamp::run_bounds(cfg)));
      return kExitOk;
    }
    if (cmd_mse->parsed()) {
      emit(cfg, render_rows(cfg, avgsamp::run_mse(cfg)));
      return kExitOk;
    }
    if (cmd_simulate->parsed()) {
      emit(cfg, avgsamp::run_simulate_csv(cfg));
      return kExitOk;
    }
    if (cmd_verify->parsed()) {
      const auto result = avgsamp::run_verify(cfg);
      emit(cfg, result.findings.dump(2) + "\n");
      for (const auto& suite : result.findings["suites"]) {
        std::cerr << (suite["pass"].get<bool>() ? "[PASS] " : "[FAIL] ")
                  << suite["name"].get<std::string>() << "\n";
      }
      return result.pass ? kExitOk : kExitSuiteFailure;
    }
  } catch (const avgsamp::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const avgsamp::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
