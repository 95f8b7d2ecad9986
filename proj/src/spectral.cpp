#include "avgsamp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <utility>

#include <nlohmann/json.hpp>

namespace avgsamp {

KernelFunction KernelFunction::fourier() {
  KernelFunction k;
  k.fourier_ = true;
  return k;
}

KernelFunction KernelFunction::custom(Evaluator value, Evaluator time_deriv,
                                      TypeFn type_fn, double sup_bound,
                                      double growth_scale, double growth_rate) {
  if (!value) throw ValidationError("KernelFunction: evaluator required");
  if (!type_fn) throw ValidationError("KernelFunction: type function required");
  if (!(sup_bound >= 0.0)) {
    throw ValidationError("KernelFunction: sup bound must be >= 0");
  }
  if (!(growth_scale > 0.0)) {
    throw ValidationError("KernelFunction: growth scale M must be > 0");
  }
  KernelFunction k;
  k.fourier_ = false;
  k.value_ = std::move(value);
  k.deriv_ = std::move(time_deriv);
  k.type_fn_ = std::move(type_fn);
  k.sup_bound_ = sup_bound;
  k.growth_scale_ = growth_scale;
  k.growth_rate_ = growth_rate;
  return k;
}

cdouble KernelFunction::value(double t, double lambda) const {
  if (fourier_) return std::polar(1.0, t * lambda);
  return value_(t, lambda);
}

cdouble KernelFunction::time_derivative(double t, double lambda) const {
  if (fourier_) return cdouble(0.0, lambda) * std::polar(1.0, t * lambda);
  if (!deriv_) {
    throw ValidationError(
        "KernelFunction: custom kernel lacks a time-derivative evaluator");
  }
  return deriv_(t, lambda);
}

double KernelFunction::type_at(double lambda) const {
  if (fourier_) return std::abs(lambda);
  return type_fn_(lambda);
}

SpectralMeasure::SpectralMeasure(std::vector<double> nodes,
                                 Eigen::MatrixXcd masses)
    : nodes_(std::move(nodes)), masses_(std::move(masses)) {
  const auto m = static_cast<Eigen::Index>(nodes_.size());
  if (m == 0) throw ValidationError("SpectralMeasure: empty node grid");
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    if (!std::isfinite(nodes_[j])) {
      throw ValidationError("SpectralMeasure: nodes[" + std::to_string(j) +
                            "] not finite");
    }
    if (j > 0 && !(nodes_[j - 1] < nodes_[j])) {
      throw ValidationError("SpectralMeasure: nodes must be strictly ascending");
    }
  }
  if (masses_.rows() != m || masses_.cols() != m) {
    throw ValidationError("SpectralMeasure: F must be m x m for m nodes");
  }
  scale_ = masses_.cwiseAbs().maxCoeff();
  if (!std::isfinite(scale_)) {
    throw ValidationError("SpectralMeasure: F entries must be finite");
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k <= j; ++k) {
      if (std::abs(masses_(j, k) - std::conj(masses_(k, j))) > 1e-12) {
        throw ValidationError("SpectralMeasure: F is not Hermitian at (" +
                              std::to_string(j) + "," + std::to_string(k) +
                              ")");
      }
    }
  }
  if (scale_ > 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(masses_,
                                                       Eigen::EigenvaluesOnly);
    const double min_ev = es.eigenvalues().minCoeff();
    if (min_ev < -1e-10 * scale_) {
      throw NumericalError(
          "SpectralMeasure: F is not positive semidefinite (min eigenvalue " +
          std::to_string(min_ev) + ")");
    }
  }
}

ProcessModel::ProcessModel(KernelFunction kernel, SpectralMeasure measure,
                           bool real_process)
    : kernel_(std::move(kernel)),
      measure_(std::move(measure)),
      real_process_(real_process) {
  gamma_ = 0.0;
  for (double lam : measure_.nodes()) {
    gamma_ = std::max(gamma_, kernel_.type_at(lam));
  }
  if (real_process_) {
    if (!kernel_.is_fourier()) {
      throw ValidationError(
          "ProcessModel: real_process requires the Fourier kernel");
    }
    const auto& nodes = measure_.nodes();
    const auto& F = measure_.masses();
    const auto m = static_cast<Eigen::Index>(nodes.size());
    for (Eigen::Index j = 0; j < m; ++j) {
      if (std::abs(nodes[j] + nodes[m - 1 - j]) > 1e-12) {
        throw ValidationError(
            "ProcessModel: real_process requires a symmetric node grid");
      }
      for (Eigen::Index k = 0; k < m; ++k) {
        if (std::abs(F(m - 1 - j, m - 1 - k) - std::conj(F(j, k))) >
            1e-12 * std::max(1.0, measure_.scale())) {
          throw ValidationError(
              "ProcessModel: real_process requires F invariant under index "
              "reflection");
        }
      }
    }
  }
}

bool ProcessModel::stationary() const {
  if (!kernel_.is_fourier()) return false;
  const auto& F = measure_.masses();
  for (Eigen::Index j = 0; j < F.rows(); ++j) {
    for (Eigen::Index k = 0; k < F.cols(); ++k) {
      if (j != k && F(j, k) != cdouble(0.0, 0.0)) return false;
    }
  }
  return true;
}

namespace {

cdouble bilinear_sum(const ProcessModel& model,
                     const std::vector<cdouble>& left,
                     const std::vector<cdouble>& right) {
  const auto& F = model.measure().masses();
  const auto m = F.rows();
  cdouble acc(0.0, 0.0);
  for (Eigen::Index j = 0; j < m; ++j) {
    cdouble row(0.0, 0.0);
    for (Eigen::Index k = 0; k < m; ++k) {
      row += std::conj(right[static_cast<std::size_t>(k)]) * F(j, k);
    }
    acc += left[static_cast<std::size_t>(j)] * row;
  }
  return acc;
}

}  // namespace

cdouble covariance(const ProcessModel& model, double t, double s) {
  const auto& nodes = model.measure().nodes();
  std::vector<cdouble> ft(nodes.size()), fs(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    ft[k] = model.kernel().value(t, nodes[k]);
    fs[k] = model.kernel().value(s, nodes[k]);
  }
  return bilinear_sum(model, ft, fs);
}

cdouble covariance_mixed_deriv(const ProcessModel& model, double t, double s) {
  const auto& nodes = model.measure().nodes();
  std::vector<cdouble> dt(nodes.size()), ds(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    dt[k] = model.kernel().time_derivative(t, nodes[k]);
    ds[k] = model.kernel().time_derivative(s, nodes[k]);
  }
  return bilinear_sum(model, dt, ds);
}

double b2_sup(const ProcessModel& model, B2Method method) {
  const auto& nodes = model.measure().nodes();
  const auto& F = model.measure().masses();
  if (method == B2Method::triangle) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < F.rows(); ++j) {
      for (Eigen::Index k = 0; k < F.cols(); ++k) {
        acc += std::abs(nodes[static_cast<std::size_t>(j)]) *
               std::abs(nodes[static_cast<std::size_t>(k)]) *
               std::abs(F(j, k));
      }
    }
    return acc;
  }
  // Default probe grid: 512 points spanning the slowest beat period of the
  // node differences.
  double min_gap = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      const double gap = std::abs(nodes[j] - nodes[k]);
      if (gap > 1e-12 && (min_gap == 0.0 || gap < min_gap)) min_gap = gap;
    }
  }
  const double span = 2.0 * kPi / (min_gap > 0.0 ? min_gap : 1.0);
  std::vector<double> grid(512);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = span * static_cast<double>(i) / static_cast<double>(grid.size());
  }
  return b2_sup(model, grid);
}

double b2_sup(const ProcessModel& model, std::span<const double> t_grid) {
  if (t_grid.empty()) {
    throw ValidationError("b2_sup: probe grid must be non-empty");
  }
  double best = 0.0;
  for (double t : t_grid) {
    best = std::max(best, std::abs(covariance_mixed_deriv(model, t, t)));
  }
  return best;
}

double total_variation(const SpectralMeasure& measure) {
  return measure.masses().cwiseAbs().sum();
}

ProcessModel model_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("model: document must be an object");
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw ValidationError("model.nodes: required array of reals");
  }
  std::vector<double> nodes;
  for (const auto& v : doc["nodes"]) {
    if (!v.is_number()) throw ValidationError("model.nodes: entries must be numbers");
    nodes.push_back(v.get<double>());
  }
  const auto m = static_cast<Eigen::Index>(nodes.size());
  auto read_matrix = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_array() ||
        static_cast<Eigen::Index>(doc[key].size()) != m) {
      throw ValidationError(std::string("model.") + key +
                            ": required m x m row-major array");
    }
    Eigen::MatrixXd out(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& row = doc[key][static_cast<std::size_t>(j)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m) {
        throw ValidationError(std::string("model.") + key + "[" +
                              std::to_string(j) + "]: row must have m entries");
      }
      for (Eigen::Index k = 0; k < m; ++k) {
        out(j, k) = row[static_cast<std::size_t>(k)].get<double>();
      }
    }
    return out;
  };
  const Eigen::MatrixXd re = read_matrix("F_re");
  const Eigen::MatrixXd im = read_matrix("F_im");
  if (!doc.contains("kernel") || !doc["kernel"].is_string() ||
      doc["kernel"].get<std::string>() != "fourier") {
    throw ValidationError("model.kernel: only \"fourier\" is supported");
  }
  Eigen::MatrixXcd F(m, m);
  F.real() = re;
  F.imag() = im;
  ProcessModel model(KernelFunction::fourier(),
                     SpectralMeasure(std::move(nodes), std::move(F)));
  if (doc.contains("seed_hint")) {
    const auto& hint = doc["seed_hint"];
    if (hint.is_number_unsigned()) {
      model.seed_hint = hint.get<std::uint64_t>();
    } else if (hint.is_number_integer() && hint.get<std::int64_t>() >= 0) {
      model.seed_hint = static_cast<std::uint64_t>(hint.get<std::int64_t>());
    } else {
      throw ValidationError("model.seed_hint: must be a non-negative integer");
    }
  }
  return model;
}

nlohmann::json model_to_json(const ProcessModel& model) {
  if (!model.kernel().is_fourier()) {
    throw ValidationError("model: only the fourier kernel serializes");
  }
  nlohmann::json doc;
  doc["nodes"] = model.measure().nodes();
  const auto& F = model.measure().masses();
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index j = 0; j < F.rows(); ++j) {
    nlohmann::json rrow = nlohmann::json::array(), irow = nlohmann::json::array();
    for (Eigen::Index k = 0; k < F.cols(); ++k) {
      rrow.push_back(F(j, k).real());
      irow.push_back(F(j, k).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  doc["F_re"] = std::move(re);
  doc["F_im"] = std::move(im);
  doc["kernel"] = "fourier";
  if (model.seed_hint) doc["seed_hint"] = *model.seed_hint;
  return doc;
}

ProcessModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("model: cannot open file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("model: invalid JSON in " + path + ": " + e.what());
  }
  return model_from_json(doc);
}

void save_model_file(const ProcessModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("model: cannot write file: " + path);
  out << model_to_json(model).dump(2) << "\n";
}

}  // namespace avgsamp
