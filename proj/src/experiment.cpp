#include "avgsamp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "avgsamp/reference.hpp"
#include "avgsamp/rng.hpp"
#include "avgsamp/simulate.hpp"

namespace avgsamp {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parse_t_values(const nlohmann::json& spec) {
  std::vector<double> out;
  if (spec.is_array()) {
    for (const auto& v : spec) {
      if (!v.is_number()) throw ValidationError("config.t: entries must be numbers");
      out.push_back(v.get<double>());
    }
  } else if (spec.is_object()) {
    for (const char* key : {"min", "max", "count"}) {
      if (!spec.contains(key)) {
        throw ValidationError(std::string("config.t.") + key + ": required");
      }
    }
    const double lo = spec["min"].get<double>();
    const double hi = spec["max"].get<double>();
    const int count = spec["count"].get<int>();
    if (count < 1) throw ValidationError("config.t.count: must be >= 1");
    if (!(lo <= hi)) throw ValidationError("config.t: needs min <= max");
    for (int j = 0; j < count; ++j) {
      out.push_back(count == 1 ? lo
                               : lo + (hi - lo) * j / static_cast<double>(count - 1));
    }
  } else {
    throw ValidationError("config.t: array or {min,max,count} object");
  }
  if (out.empty()) throw ValidationError("config.t: must be non-empty");
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> parse_n_values(const nlohmann::json& spec) {
  std::vector<int> out;
  if (spec.is_array()) {
    for (const auto& v : spec) {
      if (!v.is_number_integer()) {
        throw ValidationError("config.N: entries must be integers");
      }
      out.push_back(v.get<int>());
    }
  } else if (spec.is_object()) {
    for (const char* key : {"start", "stop", "factor"}) {
      if (!spec.contains(key)) {
        throw ValidationError(std::string("config.N.") + key + ": required");
      }
    }
    const int start = spec["start"].get<int>();
    const int stop = spec["stop"].get<int>();
    const int factor = spec["factor"].get<int>();
    if (factor < 2) throw ValidationError("config.N.factor: must be >= 2");
    for (long long n = start; n <= stop; n *= factor) {
      out.push_back(static_cast<int>(n));
    }
  } else {
    throw ValidationError("config.N: array or {start,stop,factor} object");
  }
  if (out.empty()) throw ValidationError("config.N: must be non-empty");
  for (int n : out) {
    if (n < 1) throw ValidationError("config.N: all entries must be >= 1");
  }
  std::sort(out.begin(), out.end());
  return out;
}

WeightFamily parse_family(const std::string& name) {
  if (name == "point") return WeightFamily::point;
  if (name == "uniform") return WeightFamily::uniform;
  if (name == "triangular") return WeightFamily::triangular;
  throw ValidationError("config.scheme.family: unknown family \"" + name +
                        "\" (point|uniform|triangular)");
}

// Default 25-point probe grid over [-3, 3]; the 1/3 offset keeps rational
// grid points off the irrational sampling nodes.
std::vector<double> default_t_grid() {
  std::vector<double> out(25);
  for (int j = 0; j < 25; ++j) {
    out[static_cast<std::size_t>(j)] = -3.0 + (j + 1.0 / 3.0) * (6.0 / 25.0);
  }
  return out;
}

std::vector<int> default_n_grid() {
  std::vector<int> out;
  for (int n = 8; n <= 512; n *= 2) out.push_back(n);
  return out;
}

}  // namespace

AveragingScheme ExperimentConfig::scheme() const {
  switch (family) {
    case WeightFamily::point:
      return AveragingScheme::point();
    case WeightFamily::uniform:
      return randomized ? AveragingScheme::randomized(family, sigma, rule_seed)
                        : AveragingScheme::uniform(sigma);
    case WeightFamily::triangular:
      return randomized ? AveragingScheme::randomized(family, sigma, rule_seed)
                        : AveragingScheme::triangular(sigma);
  }
  throw ValidationError("config.scheme.family: invalid");
}

void ExperimentConfig::validate() const {
  if (!model) throw ValidationError("config.model: required");
  if (!(w > 0.0)) throw ValidationError("config.w: must be > 0");
  if (!(w > model->gamma())) {
    throw ValidationError("config.w: must exceed the model's gamma = " +
                          std::to_string(model->gamma()));
  }
  if (t_values.empty()) throw ValidationError("config.t: must be non-empty");
  if (n_values.empty()) throw ValidationError("config.N: must be non-empty");
  if (trials < 0) throw ValidationError("config.trials: must be >= 0");
  if (!(p > 1.0)) throw ValidationError("config.p: must be > 1");
  scheme().validate_for(grid());
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc,
                                             const std::string& base_dir) {
  if (!doc.is_object()) throw ValidationError("config: document must be an object");
  ExperimentConfig cfg;
  if (!doc.contains("model")) throw ValidationError("config.model: required");
  const auto& model_spec = doc["model"];
  if (model_spec.is_object() && model_spec.contains("path")) {
    const std::filesystem::path given = model_spec["path"].get<std::string>();
    const std::filesystem::path resolved =
        given.is_absolute() || base_dir.empty()
            ? given
            : std::filesystem::path(base_dir) / given;
    cfg.model =
        std::make_shared<const ProcessModel>(load_model_file(resolved.string()));
  } else {
    cfg.model = std::make_shared<const ProcessModel>(model_from_json(model_spec));
  }
  if (!doc.contains("w")) throw ValidationError("config.w: required");
  cfg.w = doc["w"].get<double>();
  if (doc.contains("scheme")) {
    const auto& s = doc["scheme"];
    if (!s.is_object()) throw ValidationError("config.scheme: must be an object");
    if (s.contains("family")) cfg.family = parse_family(s["family"].get<std::string>());
    if (s.contains("sigma")) cfg.sigma = s["sigma"].get<double>();
    if (s.contains("randomized")) cfg.randomized = s["randomized"].get<bool>();
    if (s.contains("rule_seed")) cfg.rule_seed = s["rule_seed"].get<std::uint64_t>();
    if (cfg.family == WeightFamily::point) cfg.sigma = 0.0;
  }
  cfg.t_values = doc.contains("t") ? parse_t_values(doc["t"]) : default_t_grid();
  cfg.n_values = doc.contains("N") ? parse_n_values(doc["N"]) : default_n_grid();
  if (doc.contains("p")) cfg.p = doc["p"].get<double>();
  if (doc.contains("trials")) cfg.trials = doc["trials"].get<int>();
  if (doc.contains("seed")) {
    cfg.seed = doc["seed"].get<std::uint64_t>();
  } else if (cfg.model->seed_hint) {
    cfg.seed = *cfg.model->seed_hint;
  }
  if (doc.contains("out")) cfg.out_path = doc["out"].get<std::string>();
  if (doc.contains("format")) {
    const auto f = doc["format"].get<std::string>();
    if (f == "csv") {
      cfg.format = OutputFormat::csv;
    } else if (f == "json") {
      cfg.format = OutputFormat::json;
    } else {
      throw ValidationError("config.format: must be csv or json");
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config: invalid JSON in " + path + ": " + e.what());
  }
  return from_json(doc, std::filesystem::path(path).parent_path().string());
}

namespace {

std::vector<BoundReport> run_sweep(const ExperimentConfig& cfg, bool with_mc) {
  cfg.validate();
  if (with_mc && cfg.trials < 2) {
    throw ValidationError("config.trials: mse command needs trials >= 2");
  }
  const SamplingGrid grid = cfg.grid();
  const AveragingScheme scheme = cfg.scheme();
  const HoelderPair pair = HoelderPair::conjugate(cfg.p);
  const auto n_count = cfg.n_values.size();
  const auto cells = cfg.t_values.size() * n_count;

  std::vector<BoundReport> rows(cells);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const double t = cfg.t_values[cell / n_count];
    const int N = cfg.n_values[cell % n_count];
    BoundReport row;
    row.t = t;
    row.N = N;
    row.w = cfg.w;
    row.sigma = scheme.sigma();
    row.p = cfg.p;
    row.thm2 = thm2_bound(*cfg.model, grid, t, N);
    row.lemma1 = lemma1_bound(*cfg.model, scheme, grid, t, N, pair);
    row.thm3 = thm3_bound(*cfg.model, scheme, grid, t, N, pair);
    row.remark3 = remark3_bound(*cfg.model, grid, t, N, pair);
    row.exact = exact_mse(*cfg.model, scheme, grid, t, N);
    if (with_mc) {
      const auto mc = monte_carlo_mse(cfg.model, scheme, grid, t, N, cfg.trials,
                                      counter_hash(cfg.seed, cell));
      row.mc = mc.estimate;
      row.mc_std_error = mc.std_error;
    }
    if (row.thm3 > 0.0) row.ratio_thm3 = *row.exact / row.thm3;
    rows[cell] = std::move(row);
  }

  // Per-t dominance flag: N0 is the smallest sweep N from which
  // exact <= thm3 holds through the end of the sweep.
  for (std::size_t ti = 0; ti < cfg.t_values.size(); ++ti) {
    const std::size_t base = ti * n_count;
    std::size_t n0_idx = n_count;
    for (std::size_t ni = n_count; ni-- > 0;) {
      const auto& row = rows[base + ni];
      const bool dominated =
          *row.exact <= row.thm3 || (row.thm3 == 0.0 && *row.exact < 1e-24);
      if (!dominated) break;
      n0_idx = ni;
    }
    for (std::size_t ni = 0; ni < n_count; ++ni) {
      rows[base + ni].n0_reached = (ni >= n0_idx && n0_idx < n_count);
    }
  }
  return rows;
}

}  // namespace

std::vector<BoundReport> run_bounds(const ExperimentConfig& config) {
  return run_sweep(config, /*with_mc=*/false);
}

std::vector<BoundReport> run_mse(const ExperimentConfig& config) {
  return run_sweep(config, /*with_mc=*/true);
}

std::string rows_to_csv(const std::vector<BoundReport>& rows) {
  std::ostringstream out;
  out << "t,N,w,sigma,p,exact_mse,mc_mse,mc_se,thm2,lemma1,thm3,remark3,"
         "ratio_thm3,n0_flag\n";
  const auto opt = [&](const std::optional<double>& v) {
    return v ? fmt_double(*v) : std::string();
  };
  for (const auto& r : rows) {
    out << fmt_double(r.t) << ',' << r.N << ',' << fmt_double(r.w) << ','
        << fmt_double(r.sigma) << ',' << fmt_double(r.p) << ',' << opt(r.exact)
        << ',' << opt(r.mc) << ',' << opt(r.mc_std_error) << ','
        << fmt_double(r.thm2) << ',' << fmt_double(r.lemma1) << ','
        << fmt_double(r.thm3) << ',' << opt(r.remark3) << ','
        << opt(r.ratio_thm3) << ','
        << (r.n0_reached ? (*r.n0_reached ? "1" : "0") : "") << '\n';
  }
  return out.str();
}

nlohmann::ordered_json rows_to_json(const std::vector<BoundReport>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["t"] = r.t;
    row["N"] = r.N;
    row["w"] = r.w;
    row["sigma"] = r.sigma;
    row["p"] = r.p;
    if (r.exact) row["exact_mse"] = *r.exact;
    if (r.mc) row["mc_mse"] = *r.mc;
    if (r.mc_std_error) row["mc_se"] = *r.mc_std_error;
    row["thm2"] = r.thm2;
    row["lemma1"] = r.lemma1;
    row["thm3"] = r.thm3;
    if (r.remark3) row["remark3"] = *r.remark3;
    if (r.ratio_thm3) row["ratio_thm3"] = *r.ratio_thm3;
    if (r.n0_reached) row["n0_flag"] = *r.n0_reached;
    arr.push_back(std::move(row));
  }
  return arr;
}

namespace {

struct SuiteBuilder {
  nlohmann::ordered_json doc;
  bool pass = true;

  explicit SuiteBuilder(const std::string& name) {
    doc["name"] = name;
    doc["checks"] = nlohmann::ordered_json::array();
  }
  void record(nlohmann::ordered_json check, bool ok) {
    check["pass"] = ok;
    doc["checks"].push_back(std::move(check));
    pass = pass && ok;
  }
  nlohmann::ordered_json finish() {
    doc["pass"] = pass;
    return doc;
  }
};

// Smallest sweep N from which `ok` stays true for every (t, N' >= N);
// -1 when no such N exists.
int find_n0(const std::vector<int>& n_values,
            const std::vector<std::vector<bool>>& ok_by_t) {
  int n0 = -1;
  for (std::size_t ni = n_values.size(); ni-- > 0;) {
    bool all_ok = true;
    for (const auto& per_t : ok_by_t) all_ok = all_ok && per_t[ni];
    if (!all_ok) break;
    n0 = n_values[ni];
  }
  return n0;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::almost_sure: return "almost_sure";
    case Regime::mean_square: return "mean_square";
    case Regime::none: return "none";
  }
  return "none";
}

}  // namespace

VerifyResult run_verify(const ExperimentConfig& cfg) {
  cfg.validate();
  const SamplingGrid grid = cfg.grid();
  const AveragingScheme scheme = cfg.scheme();
  const HoelderPair pair = HoelderPair::conjugate(cfg.p);
  const auto& model = *cfg.model;
  const auto point = AveragingScheme::point();

  nlohmann::ordered_json findings;
  findings["config"] = {{"w", cfg.w},
                        {"p", cfg.p},
                        {"sigma", scheme.sigma()},
                        {"randomized", scheme.randomized()},
                        {"seed", cfg.seed},
                        {"trials", cfg.trials},
                        {"t", cfg.t_values},
                        {"N", cfg.n_values}};
  nlohmann::ordered_json suites = nlohmann::ordered_json::array();
  bool all_pass = true;

  const auto n_count = cfg.n_values.size();
  const auto t_count = cfg.t_values.size();

  // Precompute the exact errors and bounds over the sweep, in parallel.
  struct Cell {
    double exact_point, exact_avg, gap, thm2, lemma1, thm3, remark3;
  };
  std::vector<Cell> cells(t_count * n_count);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double t = cfg.t_values[i / n_count];
    const int N = cfg.n_values[i % n_count];
    Cell c{};
    c.exact_point = exact_mse(model, point, grid, t, N);
    c.exact_avg = exact_mse(model, scheme, grid, t, N);
    c.gap = exact_gap_mse(model, scheme, grid, t, N);
    c.thm2 = thm2_bound(model, grid, t, N);
    c.lemma1 = lemma1_bound(model, scheme, grid, t, N, pair);
    c.thm3 = thm3_bound(model, scheme, grid, t, N, pair);
    c.remark3 = remark3_bound(model, grid, t, N, pair);
    cells[i] = c;
  }
  const auto cell = [&](std::size_t ti, std::size_t ni) -> const Cell& {
    return cells[ti * n_count + ni];
  };
  const auto dominated = [](double lhs, double rhs) {
    // Exact zeros on both sides happen at nodes; dust below 1e-24 is the
    // floating image of the identically-zero case.
    return lhs <= rhs || (rhs == 0.0 && lhs < 1e-24);
  };

  // Suite 1: E|xi - Y_N|^2 <= thm2 (point scheme) for N >= N0.
  {
    SuiteBuilder suite("dominance_thm2");
    std::vector<std::vector<bool>> ok(t_count, std::vector<bool>(n_count));
    for (std::size_t ti = 0; ti < t_count; ++ti) {
      for (std::size_t ni = 0; ni < n_count; ++ni) {
        const auto& c = cell(ti, ni);
        ok[ti][ni] = dominated(c.exact_point, c.thm2);
      }
    }
    const int n0 = find_n0(cfg.n_values, ok);
    for (std::size_t ti = 0; ti < t_count; ++ti) {
      for (std::size_t ni = 0; ni < n_count; ++ni) {
        const auto& c = cell(ti, ni);
        if (cfg.n_values[ni] < n0) continue;  // below the recorded threshold
        suite.record({{"t", cfg.t_values[ti]},
                      {"N", cfg.n_values[ni]},
                      {"lhs", c.exact_point},
                      {"rhs", c.thm2},
                      {"margin", c.thm2 - c.exact_point}},
                     ok[ti][ni]);
      }
    }
    suite.doc["n0"] = n0;
    suite.pass = suite.pass && n0 >= 0;
    all_pass &= suite.pass;
    suites.push_back(suite.finish());
  }

  // Suite 2: gap <= lemma1 and exact <= thm3 for N >= N0; remark3 envelope
  // everywhere.
  {
    SuiteBuilder suite("dominance_lemma1_thm3");
    std::vector<std::vector<bool>> ok(t_count, std::vector<bool>(n_count));
    for (std::size_t ti = 0; ti < t_count; ++ti) {
      for (std::size_t ni = 0; ni < n_count; ++ni) {
        const auto& c = cell(ti, ni);
        ok[ti][ni] = dominated(c.gap, c.lemma1) && dominated(c.exact_avg, c.thm3);
      }
    }
    const int n0 = find_n0(cfg.n_values, ok);
    for (std::size_t ti = 0; ti < t_count; ++ti) {
      for (std::size_t ni = 0; ni < n_count; ++ni) {
        const auto& c = cell(ti, ni);
        if (cfg.n_values[ni] < n0) continue;
        suite.record({{"t", cfg.t_values[ti]},
                      {"N", cfg.n_values[ni]},
                      {"gap", c.gap},
                      {"lemma1", c.lemma1},
                      {"exact", c.exact_avg},
                      {"thm3", c.thm3}},
                     ok[ti][ni]);
      }
    }
    bool envelope = true;
    for (std::size_t ti = 0; ti < t_count && envelope; ++ti) {
      for (std::size_t ni = 0; ni < n_count && envelope; ++ni) {
        envelope = cell(ti, ni).remark3 >= cell(ti, ni).lemma1;
      }
    }
    suite.record({{"check", "remark3_bound >= lemma1_bound everywhere"}},
                 envelope);
    suite.doc["n0"] = n0;
    suite.pass = suite.pass && n0 >= 0;
    all_pass &= suite.pass;
    suites.push_back(suite.finish());
  }

  // Suite 3: log-log decay slope of the point-scheme error, <= -1.85.
  {
    SuiteBuilder suite("decay_slope");
    std::vector<double> log_n;
    for (int n : cfg.n_values) log_n.push_back(std::log(n));
    for (std::size_t ti = 0; ti < t_count; ++ti) {
      const double t = cfg.t_values[ti];
      if (abs_sin_reduced(grid, t) < 1e-6) continue;  // node: error is ~0
      std::vector<double> log_e;
      bool defined = true;
      for (std::size_t ni = 0; ni < n_count; ++ni) {
        const double e = cell(ti, ni).exact_point;
        if (!(e > 0.0)) defined = false;
        log_e.push_back(defined ? std::log(e) : 0.0);
      }
      if (!defined || log_n.size() < 3) continue;
      const double slope = fit_slope(log_n, log_e);
      suite.record({{"t", t}, {"slope", slope}, {"limit", -2.0 + 0.15}},
                   slope <= -2.0 + 0.15);
    }
    all_pass &= suite.pass;
    suites.push_back(suite.finish());
  }

  // Suite 4: regime classification of canonical shrink rules.
  {
    SuiteBuilder suite("regime_classification");
    const double eps = 0.01;
    const auto expect = [&](const SigmaRule& rule, const char* label,
                            Regime want) {
      const RegimeResult got = regime_check(rule, pair, eps);
      suite.record({{"rule", label},
                    {"beta", got.beta},
                    {"expected", regime_name(want)},
                    {"got", regime_name(got.regime)}},
                   got.regime == want);
    };
    expect(SigmaRule::power_law(1.0, 1.0 / pair.p + 0.1), "N^-(1/p+0.1)",
           Regime::mean_square);
    expect(SigmaRule::power_law(1.0, 0.5 + 1.0 / pair.p + 0.1),
           "N^-(1/2+1/p+0.1)", Regime::almost_sure);
    expect(SigmaRule::custom([](int) { return 0.1; }), "const 0.1",
           Regime::none);
    all_pass &= suite.pass;
    suites.push_back(suite.finish());
  }

  // Suite 5: empirical counterpart. A shrinking sigma(N) = N^{-1/p-0.1}
  // drives the error below 1e-4 * B(t,t) by N = max sweep N; the constant
  // sigma = 0.1 rule keeps it above a quarter of the averaging-error floor.
  {
    SuiteBuilder suite("regime_empirical");
    const int n_max = cfg.n_values.back();
    const double sigma_shrunk =
        std::pow(static_cast<double>(n_max), -(1.0 / pair.p) - 0.1);
    const double sigma_const = 0.1;
    std::size_t tested = 0;
    for (std::size_t ti = 0; ti < t_count && tested < 5; ++ti) {
      const double t = cfg.t_values[ti];
      if (abs_sin_reduced(grid, t) < 0.05) continue;
      ++tested;
      const double btt = covariance(model, t, t).real();
      const double shrunk = exact_mse(
          model, AveragingScheme::uniform(sigma_shrunk), grid, t, n_max);
      suite.record({{"t", t},
                    {"check", "shrinking sigma converges"},
                    {"exact", shrunk},
                    {"threshold", 1e-4 * btt}},
                   shrunk < 1e-4 * btt);
      const auto const_scheme = AveragingScheme::uniform(sigma_const);
      const double exact_const = exact_mse(model, const_scheme, grid, t, n_max);
      const double floor =
          exact_gap_mse(model, const_scheme, grid, t, 2 * n_max);
      suite.record({{"t", t},
                    {"check", "constant sigma hits the averaging floor"},
                    {"exact", exact_const},
                    {"floor", floor}},
                   exact_const >= 0.25 * floor);
    }
    all_pass &= suite.pass;
    suites.push_back(suite.finish());
  }

  // Suite 6: sharpness witness. The constant process at a sampling node with
  // point sampling reconstructs exactly: error and bound are both zero.
  {
    SuiteBuilder suite("sharpness_witness");
    Eigen::MatrixXcd mass(1, 1);
    mass(0, 0) = cdouble(1.0, 0.0);
    const auto witness = std::make_shared<const ProcessModel>(
        KernelFunction::fourier(), SpectralMeasure({0.0}, mass));
    const SamplingGrid wgrid(2.0);
    const HoelderPair p2 = HoelderPair::conjugate(2.0);
    for (int m = 0; m <= 2; ++m) {
      const double t = wgrid.node(m);
      const double exact = exact_mse(*witness, point, wgrid, t, 4);
      const double bound = thm3_bound(*witness, point, wgrid, t, 4, p2);
      const auto mc = monte_carlo_mse(witness, point, wgrid, t, 4, 64, cfg.seed);
      suite.record({{"t", t},
                    {"exact", exact},
                    {"thm3", bound},
                    {"mc", mc.estimate},
                    {"mc_se", mc.std_error}},
                   exact == 0.0 && bound == 0.0 && mc.estimate == 0.0 &&
                       mc.std_error == 0.0);
    }
    all_pass &= suite.pass;
    suites.push_back(suite.finish());
  }

  findings["suites"] = std::move(suites);
  findings["pass"] = all_pass;
  return {all_pass, std::move(findings)};
}

std::string run_simulate_csv(const ExperimentConfig& cfg) {
  cfg.validate();
  const int paths = std::max(cfg.trials, 1);
  const MeasureFactor factor = factorize(cfg.model->measure());
  std::ostringstream out;
  out << "t,re,im\n";
  for (int i = 0; i < paths; ++i) {
    const Realization real = sample_path(
        cfg.model, factor, counter_hash(cfg.seed, static_cast<std::uint64_t>(i)));
    for (double t : cfg.t_values) {
      const cdouble v = evaluate(real, t);
      out << fmt_double(t) << ',' << fmt_double(v.real()) << ','
          << fmt_double(v.imag()) << '\n';
    }
  }
  return out.str();
}

}  // namespace avgsamp
