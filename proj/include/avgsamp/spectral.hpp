#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "avgsamp/common.hpp"

#include <nlohmann/json_fwd.hpp>

namespace avgsamp {

/// Entire kernel f(t, lambda) of the spectral representation, together with
/// the declared growth metadata the bounds need: the type function c(lambda),
/// the sup bound L~_f, and the exponential envelope |f| <= M e^{alpha|t|}.
class KernelFunction {
 public:
  using Evaluator = std::function<cdouble(double t, double lambda)>;
  using TypeFn = std::function<double(double lambda)>;

  /// f(t, lambda) = e^{i t lambda}; c(lambda) = |lambda|, L~_f = M = 1,
  /// alpha = 0, all forced.
  static KernelFunction fourier();

  /// User-supplied kernel. `time_deriv` may be empty; the mixed-derivative
  /// path then reports an error. Analyticity is trusted as declared.
  static KernelFunction custom(Evaluator value, Evaluator time_deriv,
                               TypeFn type_fn, double sup_bound,
                               double growth_scale, double growth_rate);

  bool is_fourier() const { return fourier_; }
  bool has_time_derivative() const { return fourier_ || bool(deriv_); }

  cdouble value(double t, double lambda) const;
  cdouble time_derivative(double t, double lambda) const;
  double type_at(double lambda) const;

  double sup_bound() const { return sup_bound_; }
  double growth_scale() const { return growth_scale_; }
  double growth_rate() const { return growth_rate_; }

 private:
  KernelFunction() = default;

  bool fourier_ = true;
  Evaluator value_;
  Evaluator deriv_;
  TypeFn type_fn_;
  double sup_bound_ = 1.0;
  double growth_scale_ = 1.0;
  double growth_rate_ = 0.0;
};

/// Discrete positive-definite bimeasure: node grid lambda_1 < ... < lambda_m
/// and Hermitian PSD mass matrix F. Inputs failing the Hermitian (1e-12) or
/// PSD (-1e-10 * scale) tolerance are rejected at construction.
class SpectralMeasure {
 public:
  SpectralMeasure(std::vector<double> nodes, Eigen::MatrixXcd masses);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const Eigen::MatrixXcd& masses() const { return masses_; }
  /// max_jk |F_jk|; the reference magnitude for tolerances.
  double scale() const { return scale_; }

 private:
  std::vector<double> nodes_;
  Eigen::MatrixXcd masses_;
  double scale_ = 0.0;
};

/// Kernel + measure + the derived exponential type gamma = max_k c(lambda_k).
/// With real_process = true the node grid must be symmetric and F invariant
/// under simultaneous index reflection; sample paths are then real-valued.
class ProcessModel {
 public:
  ProcessModel(KernelFunction kernel, SpectralMeasure measure,
               bool real_process = false);

  const KernelFunction& kernel() const { return kernel_; }
  const SpectralMeasure& measure() const { return measure_; }
  double gamma() const { return gamma_; }
  bool real_process() const { return real_process_; }
  /// Diagonal F with the Fourier kernel; derived, not stored input.
  bool stationary() const;

  std::optional<std::uint64_t> seed_hint;

 private:
  KernelFunction kernel_;
  SpectralMeasure measure_;
  double gamma_ = 0.0;
  bool real_process_ = false;
};

/// B(t,s) = sum_{j,k} f(t,lambda_j) f*(s,lambda_k) F_jk.
cdouble covariance(const ProcessModel& model, double t, double s);

/// d^2 B / dt ds = sum_{j,k} f_t(t,lambda_j) f_s*(s,lambda_k) F_jk.
/// Requires a kernel with a time derivative.
cdouble covariance_mixed_deriv(const ProcessModel& model, double t, double s);

enum class B2Method {
  /// sum |lambda_j||lambda_k||F_jk|: certified upper bound for the Fourier
  /// kernel; this is the value the theorem bounds consume.
  triangle,
  /// max |B''(t,t)| over a probe grid: a lower estimate, for tightness
  /// diagnostics only.
  grid,
};

double b2_sup(const ProcessModel& model, B2Method method);
/// Grid method over an explicit probe grid (must be non-empty).
double b2_sup(const ProcessModel& model, std::span<const double> t_grid);

/// Total variation ||F||: sum of |F_jk| over all mass pairs.
double total_variation(const SpectralMeasure& measure);

/// JSON document schema: {"nodes": [...], "F_re": [[...]], "F_im": [[...]],
/// "kernel": "fourier", "seed_hint": optional}. Round-trips bit-exactly.
ProcessModel model_from_json(const nlohmann::json& doc);
nlohmann::json model_to_json(const ProcessModel& model);
ProcessModel load_model_file(const std::string& path);
void save_model_file(const ProcessModel& model, const std::string& path);

}  // namespace avgsamp
