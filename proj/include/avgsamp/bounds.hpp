#pragma once

#include <functional>
#include <optional>

#include "avgsamp/kernels.hpp"
#include "avgsamp/sampling.hpp"
#include "avgsamp/spectral.hpp"

namespace avgsamp {

/// One evaluated configuration: every bound next to the exact and (when
/// sampled) Monte Carlo truncation error.
struct BoundReport {
  double t = 0.0;
  int N = 0;
  double w = 0.0;
  double sigma = 0.0;
  double p = 0.0;
  double thm2 = 0.0;
  double lemma1 = 0.0;
  double thm3 = 0.0;
  std::optional<double> remark3;  // present when sigma <= pi/(2w) holds
  std::optional<double> exact;
  std::optional<double> mc;
  std::optional<double> mc_std_error;
  std::optional<double> ratio_thm3;  // exact / thm3 when thm3 > 0
  std::optional<bool> n0_reached;    // N >= recorded N0 for dominance
};

/// E|xi - Y_N|^2 bound: l0_tilde(t)^2 / N^2 * ||F||. Requires w > gamma.
double thm2_bound(const ProcessModel& model, const SamplingGrid& grid, double t,
                  int N);

/// E|Y_N - A_{u,N}|^2 bound: sigma^2 C_q(t) sup|B''| (2N+1)^{2/p}, with
/// sup|B''| the certified triangle majorant.
double lemma1_bound(const ProcessModel& model, const AveragingScheme& scheme,
                    const SamplingGrid& grid, double t, int N,
                    const HoelderPair& pair);

/// Combined truncation bound: 2*thm2_bound + 2*lemma1_bound.
double thm3_bound(const ProcessModel& model, const AveragingScheme& scheme,
                  const SamplingGrid& grid, double t, int N,
                  const HoelderPair& pair);

/// Sigma-free variant under the window constraint sigma <= pi/(2w):
/// pi^2/(4w^2) C_q(t) sup|B''| (2N+1)^{2/p}.
double remark3_bound(const ProcessModel& model, const SamplingGrid& grid,
                     double t, int N, const HoelderPair& pair);

enum class Regime { almost_sure, mean_square, none };

/// Window-shrink rule sigma(N), either a declared power law c * N^{-beta}
/// or an arbitrary rule classified by a fitted exponent.
struct SigmaRule {
  static SigmaRule power_law(double c, double beta);
  static SigmaRule custom(std::function<double(int)> fn);

  double operator()(int N) const;
  std::optional<double> declared_beta() const { return beta_; }

 private:
  std::optional<double> c_;
  std::optional<double> beta_;
  std::function<double(int)> fn_;
};

struct RegimeResult {
  Regime regime = Regime::none;
  double beta = 0.0;   // declared or fitted exponent
  bool fitted = false; // true when beta came from a log-log fit
};

/// Classifies the convergence regime of a shrink rule: almost_sure when
/// beta > 1/2 + 1/p, mean_square when beta > 1/p, each by margin eps_probe.
/// Custom rules are probed on a dyadic N set; a poor power-law fit throws
/// NumericalError (inconclusive).
RegimeResult regime_check(const SigmaRule& rule, const HoelderPair& pair,
                          double eps_probe);

}  // namespace avgsamp
