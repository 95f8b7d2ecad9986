#include "avgsamp/bounds.hpp"

#include <cmath>
#include <vector>

namespace avgsamp {

double thm2_bound(const ProcessModel& model, const SamplingGrid& grid, double t,
                  int N) {
  if (N < 1) throw ValidationError("thm2_bound: N must be >= 1");
  if (!(grid.w() > model.gamma())) {
    throw ValidationError("thm2_bound: requires w > gamma");
  }
  const double l0 =
      l0_tilde(grid, model.gamma(), model.kernel().sup_bound(), t);
  return l0 * l0 / (static_cast<double>(N) * N) *
         total_variation(model.measure());
}

double lemma1_bound(const ProcessModel& model, const AveragingScheme& scheme,
                    const SamplingGrid& grid, double t, int N,
                    const HoelderPair& pair) {
  if (N < 1) throw ValidationError("lemma1_bound: N must be >= 1");
  scheme.validate_for(grid);
  const double sigma = scheme.sigma();
  if (sigma == 0.0) return 0.0;
  return sigma * sigma * c_q(grid, t, pair) * b2_sup(model, B2Method::triangle) *
         std::pow(2.0 * N + 1.0, 2.0 / pair.p);
}

double thm3_bound(const ProcessModel& model, const AveragingScheme& scheme,
                  const SamplingGrid& grid, double t, int N,
                  const HoelderPair& pair) {
  return 2.0 * thm2_bound(model, grid, t, N) +
         2.0 * lemma1_bound(model, scheme, grid, t, N, pair);
}

double remark3_bound(const ProcessModel& model, const SamplingGrid& grid,
                     double t, int N, const HoelderPair& pair) {
  if (N < 1) throw ValidationError("remark3_bound: N must be >= 1");
  const double w = grid.w();
  return kPi * kPi / (4.0 * w * w) * c_q(grid, t, pair) *
         b2_sup(model, B2Method::triangle) *
         std::pow(2.0 * N + 1.0, 2.0 / pair.p);
}

SigmaRule SigmaRule::power_law(double c, double beta) {
  if (!(c > 0.0)) throw ValidationError("SigmaRule: scale c must be > 0");
  SigmaRule r;
  r.c_ = c;
  r.beta_ = beta;
  return r;
}

SigmaRule SigmaRule::custom(std::function<double(int)> fn) {
  if (!fn) throw ValidationError("SigmaRule: rule required");
  SigmaRule r;
  r.fn_ = std::move(fn);
  return r;
}

double SigmaRule::operator()(int N) const {
  if (N < 1) throw ValidationError("SigmaRule: N must be >= 1");
  if (fn_) return fn_(N);
  return *c_ * std::pow(static_cast<double>(N), -*beta_);
}

RegimeResult regime_check(const SigmaRule& rule, const HoelderPair& pair,
                          double eps_probe) {
  if (!(eps_probe >= 0.0)) {
    throw ValidationError("regime_check: eps_probe must be >= 0");
  }
  RegimeResult result;
  if (rule.declared_beta()) {
    result.beta = *rule.declared_beta();
  } else {
    // Log-log least squares over a dyadic probe set.
    std::vector<double> xs, ys;
    for (int N = 8; N <= 8192; N *= 2) {
      const double sig = rule(N);
      if (!(sig > 0.0) || !std::isfinite(sig)) {
        throw ValidationError("regime_check: rule produced non-positive sigma");
      }
      xs.push_back(std::log(static_cast<double>(N)));
      ys.push_back(std::log(sig));
    }
    const auto n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double max_resid = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      max_resid =
          std::max(max_resid, std::abs(ys[i] - slope * xs[i] - intercept));
    }
    if (max_resid > 0.05) {
      throw NumericalError(
          "regime_check: rule is not a power law (fit inconclusive, residual " +
          std::to_string(max_resid) + ")");
    }
    result.beta = -slope;
    result.fitted = true;
  }
  if (result.beta - (0.5 + 1.0 / pair.p) > eps_probe) {
    result.regime = Regime::almost_sure;
  } else if (result.beta - 1.0 / pair.p > eps_probe) {
    result.regime = Regime::mean_square;
  } else {
    result.regime = Regime::none;
  }
  return result;
}

}  // namespace avgsamp
