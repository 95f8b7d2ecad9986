#pragma once

#include <cstdint>
#include <vector>

#include "avgsamp/common.hpp"

namespace avgsamp {

/// Uniform sampling grid with angular bandwidth w > 0 and nodes at n*pi/w.
class SamplingGrid {
 public:
  explicit SamplingGrid(double w);

  double w() const { return w_; }
  double spacing() const { return kPi / w_; }
  double node(std::int64_t n) const {
    return static_cast<double>(n) * kPi / w_;
  }

 private:
  double w_;
};

/// Conjugate Hoelder exponents: 1/p + 1/q = 1, both > 1.
struct HoelderPair {
  double p;
  double q;

  HoelderPair(double p_, double q_);
  /// Builds the pair (p, p/(p-1)).
  static HoelderPair conjugate(double p_);
};

/// sin(wt - n*pi)/(wt - n*pi) with the removable singularity filled in.
/// Near a node (|wt - n*pi| < 1e-8) a 3-term Taylor series avoids the
/// cancellation in sin(u)/u and returns exactly 1.0 at u == 0.
double sinc_term(const SamplingGrid& grid, double t, std::int64_t n);

/// Integer nearest to x*w/pi; exact half-integers round toward +infinity.
std::int64_t nearest_index(const SamplingGrid& grid, double x);

/// All n with |t*w/pi - n| <= N, ascending. Size is 2N or 2N+1.
std::vector<std::int64_t> index_window(const SamplingGrid& grid, double t,
                                       int N);

/// Dirichlet lambda: sum_{n>=1} (2n-1)^{-q}, q > 1, to absolute accuracy
/// 1e-12. Partial sums plus a midpoint tail integral whose error is
/// majorized by q*(2K)^{-q-1}/12.
double dirichlet_lambda(double q);

/// |sin(w*t)| evaluated as |sin(w*t - N_t*pi)|; identical in exact
/// arithmetic, far better conditioned near the sampling nodes.
double abs_sin_reduced(const SamplingGrid& grid, double t);

/// C_q(t) = (1 + 2^{q+1} |sin(wt)|^q lambda(q) / pi^q)^{2/q}. At least 1,
/// equal to 1 where sin(wt) = 0, periodic with period pi/w.
double c_q(const SamplingGrid& grid, double t, const HoelderPair& pair);

/// Deterministic tail constant L0(z) = 4 w L_f |sin(wz)| /
/// (pi (w - gamma)(1 - e^{-pi})). Requires 0 <= gamma < w.
double l0_deterministic(const SamplingGrid& grid, double gamma, double sup_f,
                        double z);

/// Stochastic-kernel variant with L~_f = sup_t sup_lambda |f(t,lambda)|;
/// same closed form as l0_deterministic.
double l0_tilde(const SamplingGrid& grid, double gamma, double sup_f,
                double t);

}  // namespace avgsamp
