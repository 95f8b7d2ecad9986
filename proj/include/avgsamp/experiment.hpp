#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "avgsamp/bounds.hpp"
#include "avgsamp/sampling.hpp"
#include "avgsamp/spectral.hpp"

namespace avgsamp {

enum class OutputFormat { csv, json };

/// One experiment: a model, a sampling grid, an averaging scheme, sweep
/// lists for (t, N), a Hoelder exponent, Monte Carlo trial count (0 means
/// exact-only) and the master seed. Parsed from a single JSON document;
/// CLI flags override individual fields.
struct ExperimentConfig {
  std::shared_ptr<const ProcessModel> model;
  double w = 0.0;
  WeightFamily family = WeightFamily::uniform;
  double sigma = 0.1;
  bool randomized = false;
  std::uint64_t rule_seed = 0;
  std::vector<double> t_values;
  std::vector<int> n_values;
  double p = 2.0;
  int trials = 0;
  std::uint64_t seed = 0x5eed;
  std::string out_path;  // empty: stdout
  OutputFormat format = OutputFormat::csv;

  /// `base_dir` anchors a relative model path (from_file passes the config
  /// file's directory, so configs can sit next to their model files).
  static ExperimentConfig from_json(const nlohmann::json& doc,
                                    const std::string& base_dir = "");
  static ExperimentConfig from_file(const std::string& path);

  SamplingGrid grid() const { return SamplingGrid(w); }
  AveragingScheme scheme() const;
  /// Checks cross-field invariants (w > gamma, N >= 1, trials >= 0).
  void validate() const;
};

/// Sweep rows ordered by (t, N); cells are evaluated in parallel and the
/// emission order never depends on completion order.
std::vector<BoundReport> run_bounds(const ExperimentConfig& config);
/// Same rows plus Monte Carlo columns (requires trials >= 2).
std::vector<BoundReport> run_mse(const ExperimentConfig& config);

/// Header: t,N,w,sigma,p,exact_mse,mc_mse,mc_se,thm2,lemma1,thm3,remark3,
/// ratio_thm3,n0_flag. Missing quantities are empty fields, never 0.
std::string rows_to_csv(const std::vector<BoundReport>& rows);
nlohmann::ordered_json rows_to_json(const std::vector<BoundReport>& rows);

struct VerifyResult {
  bool pass = false;
  nlohmann::ordered_json findings;
};

/// Full invariant suite: bound dominance with recorded N0, the Remark-3
/// envelope, decay slopes, regime classification plus its empirical
/// counterpart, and the sharpness witness. Deterministic for a given
/// (config, seed): the findings document is byte-stable.
VerifyResult run_verify(const ExperimentConfig& config);

/// Realization dump: one block of rows "t,re,im" per path; path i is seeded
/// with counter_hash(seed, i). Path count is max(trials, 1).
std::string run_simulate_csv(const ExperimentConfig& config);

}  // namespace avgsamp
