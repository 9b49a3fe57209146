#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <thread>

#include <json.hpp>

#include "numerics.hpp"
#include "pert.hpp"
#include "thermo.hpp"

namespace bhe::sweep {

namespace {

using nlohmann::json;

const std::set<std::string> kAxisParams = {
    "theta", "alpha", "omega_a", "omega_b", "beta_a",
    "beta_b", "n",     "m",       "x_max"};
const std::set<std::string> kOutputColumns = {
    "k",        "probability", "mean_w",      "second_w",    "var_w",
    "mean_qh",  "mean_qc",     "sigma",       "eta",         "snr",
    "rf",       "theta_bar_2", "theta_bar_4", "delta",       "regime",
    "off_line_mass", "error"};

[[noreturn]] void schema_error(const std::string& path,
                               const std::string& reason) {
  throw_config("config schema violation at " + path + ": " + reason);
}

void expect_object(const json& j, const std::string& path,
                   const std::set<std::string>& allowed) {
  if (!j.is_object()) schema_error(path, "expected an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) schema_error(path + "." + key, "unknown key");
}

double require_number(const json& j, const std::string& path,
                      const std::string& key) {
  if (!j.contains(key)) schema_error(path + "." + key, "missing required key");
  if (!j.at(key).is_number()) schema_error(path + "." + key, "expected a number");
  return j.at(key).get<double>();
}

int require_int(const json& j, const std::string& path,
                const std::string& key) {
  if (!j.contains(key)) schema_error(path + "." + key, "missing required key");
  if (!j.at(key).is_number_integer())
    schema_error(path + "." + key, "expected an integer");
  return j.at(key).get<int>();
}

std::string require_string(const json& j, const std::string& path,
                           const std::string& key) {
  if (!j.contains(key)) schema_error(path + "." + key, "missing required key");
  if (!j.at(key).is_string()) schema_error(path + "." + key, "expected a string");
  return j.at(key).get<std::string>();
}

Method method_from_name(const std::string& name, const std::string& path) {
  if (name == "oracle") return Method::oracle;
  if (name == "pert2") return Method::pert2;
  if (name == "pert4") return Method::pert4;
  schema_error(path, "unknown method '" + name + "'");
}

// One fully evaluated sweep task; strings stay empty until assembly.
struct PointResult {
  std::map<std::string, double> values;
  std::string regime;
  std::string error;
  std::vector<std::pair<int, double>> dist_points;
  bool has_dist = false;
};

double grid_value(const AxisSpec& axis, int i) {
  const double t = axis.points == 1
                       ? 0.0
                       : static_cast<double>(i) / (axis.points - 1);
  double v;
  if (axis.log_scale)
    v = std::exp(std::log(axis.min) +
                 (std::log(axis.max) - std::log(axis.min)) * t);
  else
    v = axis.min + (axis.max - axis.min) * t;
  if (axis.parameter == "n" || axis.parameter == "m") v = std::round(v);
  return v;
}

double theta_for_method(const EngineParams& p, Method method) {
  if (p.coupling.mode == CouplingMode::direct_theta) return p.coupling.value;
  EngineParams q = p;
  // alpha convention binds to the theta_bar of the evaluation order in use
  if (method == Method::pert2)
    q.coupling.order = PertOrder::second;
  else if (method == Method::pert4)
    q.coupling.order = PertOrder::fourth;
  return pert::resolve_theta(q);
}

void fill_from_moments(PointResult& res, const MomentReport& rep) {
  res.values["mean_w"] = rep.mean_w;
  res.values["second_w"] = rep.second_w;
  res.values["var_w"] = rep.var_w;
  res.values["mean_qh"] = rep.mean_qh;
  res.values["mean_qc"] = rep.mean_qc;
  res.values["sigma"] = rep.entropy_production;
  res.values["eta"] = rep.efficiency;
  res.values["snr"] = rep.snr;
  res.values["rf"] = rep.mean_w != 0.0
                         ? rep.var_w / (rep.mean_w * rep.mean_w)
                         : undefined_value();
}

PointResult evaluate_point(const SweepConfig& config,
                           const std::vector<std::pair<std::string, double>>&
                               axis_values,
                           Method method) {
  PointResult res;
  for (const auto& col : kOutputColumns)
    if (col != "regime" && col != "error" && col != "k" && col != "probability")
      res.values[col] = undefined_value();
  try {
    EngineParams p = config.base;
    bool xmax_mode = false;
    double xmax = 0.0;
    for (const auto& [name, v] : axis_values) {
      if (name == "theta")
        p.coupling = {CouplingMode::direct_theta, v, p.coupling.order};
      else if (name == "alpha")
        p.coupling = {CouplingMode::alpha_fraction, v, p.coupling.order};
      else if (name == "omega_a")
        p.omega_a = v;
      else if (name == "omega_b")
        p.omega_b = v;
      else if (name == "beta_a")
        p.beta_a = v;
      else if (name == "beta_b")
        p.beta_b = v;
      else if (name == "n")
        p.n = static_cast<int>(v);
      else if (name == "m")
        p.m = static_cast<int>(v);
      else if (name == "x_max") {
        xmax_mode = true;
        xmax = v;
      }
    }
    p.validate();
    res.regime = thermo::regime_name(thermo::classify_regime(p).regime);
    try {
      res.values["theta_bar_2"] =
          pert::theta_bar(p, PertOrder::second).theta_bar;
    } catch (const Error&) {
    }
    if ((p.n == 2 && p.m == 1) || (p.n == 1 && p.m == 2))
      res.values["theta_bar_4"] =
          pert::theta_bar(p, PertOrder::fourth).theta_bar;

    if (xmax_mode) {
      // continuous relaxation of n/m: the alpha-parametrized closed forms
      // with m = 1 and n = x_max; only meaningful at 2nd order
      if (method != Method::pert2)
        throw_config("x_max axis supports the pert2 method only");
      if (p.coupling.mode != CouplingMode::alpha_fraction)
        throw_config("x_max axis requires alpha-fraction coupling");
      const double alpha = p.coupling.value;
      const double x = p.x(), y = p.y(), u = p.beta_a * p.omega_a;
      if (!(xmax > x) || !(xmax < x * y))
        throw_physics("x_max outside the operation range (x, x*y)");
      const double z = u * (x * y - xmax);
      const double k1 = alpha * tanh_half(z);
      const double eps = p.omega_a * (xmax - x);
      res.values["mean_w"] = eps * k1;
      res.values["second_w"] = eps * eps * alpha;
      res.values["var_w"] = res.values["second_w"];
      res.values["mean_qh"] = p.omega_a * xmax * k1;
      res.values["mean_qc"] = res.values["mean_w"] - res.values["mean_qh"];
      res.values["sigma"] = alpha * z * tanh_half(z);
      res.values["eta"] = 1.0 - x / xmax;
      res.values["snr"] = k1 * k1 / alpha;
      res.values["rf"] = alpha / (k1 * k1);
      res.values["off_line_mass"] = 0.0;
      res.dist_points = {{-1, alpha * (1.0 - tanh_half(z)) / 2.0},
                         {0, 1.0 - alpha},
                         {1, alpha * (1.0 + tanh_half(z)) / 2.0}};
      res.has_dist = true;
      return res;
    }

    const double theta = theta_for_method(p, method);
    WorkHeatDistribution dist;
    MomentReport rep;
    if (method == Method::oracle) {
      exact::TruncationConfig trunc;
      if (config.oracle.dims_a > 0 && config.oracle.dims_b > 0) {
        trunc.dim_a = config.oracle.dims_a;
        trunc.dim_b = config.oracle.dims_b;
        trunc.tail_tolerance = config.oracle.tail_tolerance;
        trunc.leakage_tolerance = config.oracle.leakage_tolerance;
        trunc.dims_cap = config.oracle.dims_cap;
      } else {
        trunc = exact::adaptive_truncation(p, config.oracle.tail_tolerance,
                                           config.oracle.leakage_tolerance,
                                           config.oracle.dims_cap);
      }
      EngineParams q = p;
      q.coupling = {CouplingMode::direct_theta, theta, p.coupling.order};
      dist = exact::two_point_distribution(q, trunc);
      rep = exact::exact_moments(dist, p);
    } else if (method == Method::pert2) {
      dist = pert::work_distribution_2nd(p, theta);
      rep = pert::moments_2nd(p, theta);
    } else {
      dist = pert::work_distribution_4th(p, theta);
      rep = pert::moments_4th(p, theta);
      res.values["delta"] = pert::snr_4th(p, theta).delta;
    }
    fill_from_moments(res, rep);
    res.values["off_line_mass"] = dist.off_line_mass;
    res.dist_points = dist.points;
    res.has_dist = true;
  } catch (const Error& e) {
    res.error = e.what();
  } catch (const std::exception& e) {
    res.error = e.what();
  }
  return res;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double max_abs_error(const WorkHeatDistribution& a,
                     const WorkHeatDistribution& b) {
  std::set<int> ks;
  for (const auto& [k, _] : a.points) ks.insert(k);
  for (const auto& [k, _] : b.points) ks.insert(k);
  double err = 0.0;
  for (int k : ks)
    err = std::max(err, std::abs(a.probability_at(k) - b.probability_at(k)));
  return err;
}

}  // namespace

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SweepConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw_config(std::string("config is not well-formed JSON: ") + e.what());
  }
  expect_object(j, "$", {"engine", "coupling", "axes", "methods", "outputs",
                         "oracle"});
  SweepConfig config;

  if (!j.contains("engine")) schema_error("$.engine", "missing required key");
  const auto& je = j.at("engine");
  expect_object(je, "$.engine",
                {"n", "m", "omega_a", "omega_b", "beta_a", "beta_b"});
  config.base.n = require_int(je, "$.engine", "n");
  config.base.m = require_int(je, "$.engine", "m");
  config.base.omega_a = require_number(je, "$.engine", "omega_a");
  config.base.omega_b = require_number(je, "$.engine", "omega_b");
  config.base.beta_a = require_number(je, "$.engine", "beta_a");
  config.base.beta_b = require_number(je, "$.engine", "beta_b");

  if (!j.contains("coupling")) schema_error("$.coupling", "missing required key");
  const auto& jc = j.at("coupling");
  expect_object(jc, "$.coupling", {"mode", "value", "order"});
  const std::string mode = require_string(jc, "$.coupling", "mode");
  if (mode == "theta")
    config.base.coupling.mode = CouplingMode::direct_theta;
  else if (mode == "alpha")
    config.base.coupling.mode = CouplingMode::alpha_fraction;
  else
    schema_error("$.coupling.mode", "must be 'theta' or 'alpha'");
  config.base.coupling.value = require_number(jc, "$.coupling", "value");
  int order = 2;
  if (jc.contains("order")) order = require_int(jc, "$.coupling", "order");
  if (order != 2 && order != 4)
    schema_error("$.coupling.order", "must be 2 or 4");
  config.base.coupling.order =
      order == 2 ? PertOrder::second : PertOrder::fourth;
  config.base.validate();

  if (j.contains("axes")) {
    const auto& ja = j.at("axes");
    if (!ja.is_array()) schema_error("$.axes", "expected an array");
    if (ja.size() > 2) schema_error("$.axes", "at most 2 axes supported");
    for (size_t i = 0; i < ja.size(); ++i) {
      const std::string path = "$.axes[" + std::to_string(i) + "]";
      expect_object(ja[i], path, {"parameter", "min", "max", "points",
                                  "scale"});
      AxisSpec axis;
      axis.parameter = require_string(ja[i], path, "parameter");
      if (!kAxisParams.count(axis.parameter))
        schema_error(path + ".parameter",
                     "unknown parameter '" + axis.parameter + "'");
      axis.min = require_number(ja[i], path, "min");
      axis.max = require_number(ja[i], path, "max");
      axis.points = require_int(ja[i], path, "points");
      if (axis.points < 2) schema_error(path + ".points", "must be >= 2");
      if (ja[i].contains("scale")) {
        const std::string scale = require_string(ja[i], path, "scale");
        if (scale == "log")
          axis.log_scale = true;
        else if (scale != "linear")
          schema_error(path + ".scale", "must be 'linear' or 'log'");
      }
      if (axis.log_scale && (!(axis.min > 0.0) || !(axis.max > 0.0)))
        schema_error(path, "log scale requires positive bounds");
      if (axis.parameter == "n" || axis.parameter == "m") {
        if (axis.log_scale)
          schema_error(path + ".scale", "integer parameters need linear grids");
        const double step = (axis.max - axis.min) / (axis.points - 1);
        if (axis.min != std::round(axis.min) ||
            axis.max != std::round(axis.max) || step != std::round(step))
          schema_error(path, "integer parameter grid must hit integers only");
      }
      config.axes.push_back(axis);
    }
  }

  if (j.contains("methods")) {
    const auto& jm = j.at("methods");
    if (!jm.is_array() || jm.empty())
      schema_error("$.methods", "expected a nonempty array");
    for (size_t i = 0; i < jm.size(); ++i) {
      if (!jm[i].is_string())
        schema_error("$.methods[" + std::to_string(i) + "]",
                     "expected a string");
      config.methods.push_back(method_from_name(
          jm[i].get<std::string>(), "$.methods[" + std::to_string(i) + "]"));
    }
  } else {
    config.methods = {Method::pert2};
  }

  if (j.contains("outputs")) {
    const auto& jo = j.at("outputs");
    if (!jo.is_array() || jo.empty())
      schema_error("$.outputs", "expected a nonempty array");
    for (size_t i = 0; i < jo.size(); ++i) {
      if (!jo[i].is_string())
        schema_error("$.outputs[" + std::to_string(i) + "]",
                     "expected a string");
      const std::string col = jo[i].get<std::string>();
      if (!kOutputColumns.count(col))
        schema_error("$.outputs[" + std::to_string(i) + "]",
                     "unknown column '" + col + "'");
      config.outputs.push_back(col);
    }
  } else {
    config.outputs = {"mean_w", "second_w", "var_w", "mean_qh", "mean_qc",
                      "sigma",  "eta",      "snr",   "regime",  "error"};
  }

  if (j.contains("oracle")) {
    const auto& jr = j.at("oracle");
    expect_object(jr, "$.oracle",
                  {"tail_tolerance", "leakage_tolerance", "dims_cap", "dims_a",
                   "dims_b"});
    if (jr.contains("tail_tolerance"))
      config.oracle.tail_tolerance =
          require_number(jr, "$.oracle", "tail_tolerance");
    if (jr.contains("leakage_tolerance"))
      config.oracle.leakage_tolerance =
          require_number(jr, "$.oracle", "leakage_tolerance");
    if (jr.contains("dims_cap"))
      config.oracle.dims_cap = require_int(jr, "$.oracle", "dims_cap");
    if (jr.contains("dims_a"))
      config.oracle.dims_a = require_int(jr, "$.oracle", "dims_a");
    if (jr.contains("dims_b"))
      config.oracle.dims_b = require_int(jr, "$.oracle", "dims_b");
  }
  return config;
}

Table run_sweep(const SweepConfig& config, int parallelism) {
  if (parallelism < 1) throw_config("parallelism must be >= 1");
  const size_t n_axes = config.axes.size();
  size_t n_points = 1;
  for (const auto& axis : config.axes) n_points *= axis.points;
  const size_t n_methods = config.methods.size();
  const size_t n_tasks = n_points * n_methods;

  std::vector<PointResult> results(n_tasks);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t task = next.fetch_add(1);
      if (task >= n_tasks) return;
      const size_t point = task / n_methods;
      const Method method = config.methods[task % n_methods];
      std::vector<std::pair<std::string, double>> axis_values;
      size_t rem = point;
      // axis-major decomposition: the last axis varies fastest
      for (size_t a = n_axes; a-- > 0;) {
        const auto& axis = config.axes[a];
        axis_values.emplace_back(axis.parameter,
                                 grid_value(axis, rem % axis.points));
        rem /= axis.points;
      }
      std::reverse(axis_values.begin(), axis_values.end());
      results[task] = evaluate_point(config, axis_values, method);
      // carry the axis coordinates for row assembly
      for (const auto& [name, v] : axis_values)
        results[task].values["axis:" + name] = v;
    }
  };
  std::vector<std::thread> pool;
  const int jobs = std::min<size_t>(parallelism, n_tasks);
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Table table;
  for (const auto& axis : config.axes) table.header.push_back(axis.parameter);
  table.header.push_back("method");
  for (const auto& col : config.outputs) table.header.push_back(col);
  const bool expand =
      std::find(config.outputs.begin(), config.outputs.end(), "k") !=
          config.outputs.end() ||
      std::find(config.outputs.begin(), config.outputs.end(), "probability") !=
          config.outputs.end();

  for (size_t task = 0; task < n_tasks; ++task) {
    const auto& res = results[task];
    const Method method = config.methods[task % n_methods];
    auto base_row = [&](int k, double prob, bool with_dist) {
      std::vector<std::string> row;
      for (const auto& axis : config.axes)
        row.push_back(format_value(res.values.at("axis:" + axis.parameter)));
      row.push_back(method_name(method));
      for (const auto& col : config.outputs) {
        if (col == "regime")
          row.push_back(res.regime);
        else if (col == "error")
          row.push_back(res.error);
        else if (col == "k")
          row.push_back(with_dist ? format_value(k) : "nan");
        else if (col == "probability")
          row.push_back(with_dist ? format_value(prob) : "nan");
        else
          row.push_back(format_value(res.values.at(col)));
      }
      table.rows.push_back(std::move(row));
    };
    if (expand && res.has_dist)
      for (const auto& [k, p] : res.dist_points) base_row(k, p, true);
    else
      base_row(0, 0.0, false);
  }
  return table;
}

ValidationReport validate_convergence(const EngineParams& params,
                                      double theta_max, int halvings,
                                      const OracleOverrides& oracle) {
  params.validate();
  if (halvings < 3) throw_config("halvings must be >= 3");
  if (!(theta_max > 0.0)) throw_config("theta_max must be positive");
  const bool has4 = (params.n == 2 && params.m == 1) ||
                    (params.n == 1 && params.m == 2);
  const double tb2 = pert::theta_bar(params, PertOrder::second).theta_bar;
  double limit = tb2 / 4.0;
  if (has4)
    limit = std::min(limit,
                     pert::theta_bar(params, PertOrder::fourth).theta_bar / 4.0);
  if (theta_max > limit)
    throw_physics("theta_max exceeds theta_bar/4 of the relevant order");

  EngineParams p = params;
  p.coupling = {CouplingMode::direct_theta, theta_max, PertOrder::second};
  const auto trunc = exact::adaptive_truncation(p, oracle.tail_tolerance,
                                                oracle.leakage_tolerance,
                                                oracle.dims_cap);
  ValidationReport rep;
  rep.fitted_order_pert4 = undefined_value();
  for (int jdx = 0; jdx < halvings; ++jdx) {
    const double theta = theta_max / std::pow(2.0, jdx);
    rep.theta_grid.push_back(theta);
    p.coupling.value = theta;
    const auto dist = exact::two_point_distribution(p, trunc);
    rep.errors_pert2.push_back(
        max_abs_error(dist, pert::work_distribution_2nd(p, theta)));
    if (has4)
      rep.errors_pert4.push_back(
          max_abs_error(dist, pert::work_distribution_4th(p, theta)));
  }
  std::vector<double> lt, le;
  for (size_t i = 0; i < rep.theta_grid.size(); ++i) {
    lt.push_back(std::log(rep.theta_grid[i]));
    le.push_back(std::log(rep.errors_pert2[i]));
  }
  rep.fitted_order_pert2 = fit_slope(lt, le);
  if (has4) {
    le.clear();
    for (double e : rep.errors_pert4) le.push_back(std::log(e));
    rep.fitted_order_pert4 = fit_slope(lt, le);
  }
  return rep;
}

std::string to_csv(const Table& table) {
  auto escape = [](const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
    return out;
  };
  std::string text;
  for (size_t i = 0; i < table.header.size(); ++i)
    text += (i ? "," : "") + escape(table.header[i]);
  text += '\n';
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i)
      text += (i ? "," : "") + escape(row[i]);
    text += '\n';
  }
  return text;
}

void emit_csv(const Table& table, const std::string& destination) {
  if (table.rows.empty()) throw_config("refusing to emit an empty table");
  std::ofstream out(destination, std::ios::binary);  // binary: keep LF endings
  if (!out) throw_io("cannot open '" + destination + "' for writing");
  out << to_csv(table);
  if (!out) throw_io("write to '" + destination + "' failed");
}

}  // namespace bhe::sweep
