#include "bhe.h"

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include "core/exact.hpp"
#include "core/numerics.hpp"
#include "core/optimize.hpp"
#include "core/pert.hpp"
#include "core/sweep.hpp"
#include "core/thermo.hpp"

namespace {

using nlohmann::json;

thread_local std::string g_last_error;

struct EngineState {
  bhe::sweep::SweepConfig config;
};

template <typename F>
int guarded(F&& fn) {
  try {
    fn();
    g_last_error.clear();
    return BHE_OK;
  } catch (const bhe::Error& e) {
    g_last_error = e.what();
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BHE_ERR_NUMERIC;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// NaN is not representable in JSON; undefined values surface as null.
json jnum(double v) { return std::isnan(v) ? json() : json(v); }

bhe::Method parse_method(const char* name) {
  const std::string s = name ? name : "";
  if (s == "oracle") return bhe::Method::oracle;
  if (s == "pert2") return bhe::Method::pert2;
  if (s == "pert4") return bhe::Method::pert4;
  bhe::throw_config("unknown method '" + s + "'");
}

double method_theta(const bhe::EngineParams& base, bhe::Method method) {
  bhe::EngineParams p = base;
  if (p.coupling.mode == bhe::CouplingMode::alpha_fraction)
    p.coupling.order = method == bhe::Method::pert4 ? bhe::PertOrder::fourth
                                                    : bhe::PertOrder::second;
  return bhe::pert::resolve_theta(p);
}

bhe::exact::TruncationConfig oracle_truncation(const EngineState& st,
                                               const bhe::EngineParams& p,
                                               double theta) {
  const auto& o = st.config.oracle;
  if (o.dims_a > 0 && o.dims_b > 0)
    return {o.dims_a, o.dims_b, o.tail_tolerance, o.leakage_tolerance,
            o.dims_cap};
  bhe::EngineParams q = p;
  q.coupling = {bhe::CouplingMode::direct_theta, theta, p.coupling.order};
  return bhe::exact::adaptive_truncation(q, o.tail_tolerance,
                                         o.leakage_tolerance, o.dims_cap);
}

struct Evaluation {
  bhe::WorkHeatDistribution dist;
  bhe::MomentReport moments;
  double theta = 0.0;
  double delta = bhe::undefined_value();
};

Evaluation evaluate(const EngineState& st, bhe::Method method) {
  const bhe::EngineParams& p = st.config.base;
  Evaluation ev;
  ev.theta = method_theta(p, method);
  if (method == bhe::Method::oracle) {
    const auto trunc = oracle_truncation(st, p, ev.theta);
    bhe::EngineParams q = p;
    q.coupling = {bhe::CouplingMode::direct_theta, ev.theta, p.coupling.order};
    ev.dist = bhe::exact::two_point_distribution(q, trunc);
    ev.moments = bhe::exact::exact_moments(ev.dist, p);
  } else if (method == bhe::Method::pert2) {
    ev.dist = bhe::pert::work_distribution_2nd(p, ev.theta);
    ev.moments = bhe::pert::moments_2nd(p, ev.theta);
  } else {
    ev.dist = bhe::pert::work_distribution_4th(p, ev.theta);
    ev.moments = bhe::pert::moments_4th(p, ev.theta);
    ev.delta = bhe::pert::snr_4th(p, ev.theta).delta;
  }
  return ev;
}

json moments_json(const bhe::MomentReport& rep) {
  return {{"mean_w", jnum(rep.mean_w)},
          {"second_w", jnum(rep.second_w)},
          {"var_w", jnum(rep.var_w)},
          {"mean_qh", jnum(rep.mean_qh)},
          {"mean_qc", jnum(rep.mean_qc)},
          {"sigma", jnum(rep.entropy_production)},
          {"eta", jnum(rep.efficiency)},
          {"snr", jnum(rep.snr)}};
}

}  // namespace

extern "C" {

const char* bhe_version(void) { return "1.0.0"; }

const char* bhe_last_error(void) { return g_last_error.c_str(); }

void bhe_string_free(char* s) { delete[] s; }

int bhe_engine_create(const char* engine_json, bhe_engine** out) {
  return guarded([&] {
    if (!engine_json || !out) bhe::throw_config("null argument");
    auto* state = new EngineState;
    try {
      state->config = bhe::sweep::parse_config(engine_json);
    } catch (...) {
      delete state;
      throw;
    }
    *out = reinterpret_cast<bhe_engine*>(state);
  });
}

void bhe_engine_destroy(bhe_engine* engine) {
  delete reinterpret_cast<EngineState*>(engine);
}

int bhe_simulate(const bhe_engine* engine, const char* method,
                 char** json_out) {
  return guarded([&] {
    if (!engine || !json_out) bhe::throw_config("null argument");
    const auto& st = *reinterpret_cast<const EngineState*>(engine);
    const auto m = parse_method(method);
    const auto ev = evaluate(st, m);
    const auto& p = st.config.base;
    const auto regime = bhe::thermo::classify_regime(p);
    json points = json::array();
    for (const auto& [k, prob] : ev.dist.points)
      points.push_back({{"k", k}, {"probability", prob}});
    json doc = {
        {"method", bhe::method_name(m)},
        {"theta", ev.theta},
        {"quantum_w", ev.dist.quantum_w},
        {"quantum_qh", ev.dist.quantum_qh},
        {"points", points},
        {"off_line_mass", ev.dist.off_line_mass},
        {"moments", moments_json(ev.moments)},
        {"regime", bhe::thermo::regime_name(regime.regime)},
        {"efficiency", jnum(regime.efficiency)},
        {"carnot", regime.carnot},
        {"delta", jnum(ev.delta)},
    };
    doc["theta_bar_2"] =
        jnum(bhe::pert::theta_bar(p, bhe::PertOrder::second).theta_bar);
    if ((p.n == 2 && p.m == 1) || (p.n == 1 && p.m == 2))
      doc["theta_bar_4"] =
          jnum(bhe::pert::theta_bar(p, bhe::PertOrder::fourth).theta_bar);
    *json_out = dup_string(doc.dump(2));
  });
}

int bhe_tur_json(const bhe_engine* engine, const char* method,
                 char** json_out) {
  return guarded([&] {
    if (!engine || !json_out) bhe::throw_config("null argument");
    const auto& st = *reinterpret_cast<const EngineState*>(engine);
    const auto m = parse_method(method);
    const auto ev = evaluate(st, m);
    const auto& p = st.config.base;
    const double alpha =
        p.coupling.mode == bhe::CouplingMode::alpha_fraction
            ? p.coupling.value
            : bhe::undefined_value();
    const auto rep = bhe::thermo::tur_report(p, ev.moments, m, alpha, ev.delta);
    json doc = {{"method", bhe::method_name(m)},
                {"rf", jnum(rep.rf)},
                {"sigma", jnum(rep.sigma)},
                {"standard_bound", jnum(rep.standard_bound)},
                {"tight_swap_bound", jnum(rep.tight_swap_bound)},
                {"fourth_bound", jnum(rep.fourth_bound)},
                {"asymptotic_fourth", jnum(rep.asymptotic_fourth)},
                {"violates_standard", rep.violates_standard},
                {"delta", jnum(ev.delta)},
                {"alpha", jnum(alpha)}};
    *json_out = dup_string(doc.dump(2));
  });
}

int bhe_validate_json(const bhe_engine* engine, double theta_max, int halvings,
                      char** json_out) {
  return guarded([&] {
    if (!engine || !json_out) bhe::throw_config("null argument");
    const auto& st = *reinterpret_cast<const EngineState*>(engine);
    const auto rep = bhe::sweep::validate_convergence(
        st.config.base, theta_max, halvings, st.config.oracle);
    json doc = {{"theta_grid", rep.theta_grid},
                {"errors_pert2", rep.errors_pert2},
                {"fitted_order_pert2", jnum(rep.fitted_order_pert2)},
                {"fitted_order_pert4", jnum(rep.fitted_order_pert4)}};
    if (!rep.errors_pert4.empty()) doc["errors_pert4"] = rep.errors_pert4;
    *json_out = dup_string(doc.dump(2));
  });
}

int bhe_optimize_json(const char* request_json, char** json_out) {
  return guarded([&] {
    if (!request_json || !json_out) bhe::throw_config("null argument");
    json req;
    try {
      req = json::parse(request_json);
    } catch (const json::parse_error& e) {
      bhe::throw_config(std::string("optimize request is not valid JSON: ") +
                        e.what());
    }
    if (!req.is_object() || !req.contains("family") ||
        !req.at("family").is_string())
      bhe::throw_config("optimize request needs a string 'family' key");
    const std::string family = req.at("family");
    auto num = [&](const char* key) {
      if (!req.contains(key) || !req.at(key).is_number())
        bhe::throw_config(std::string("optimize request missing number '") +
                          key + "'");
      return req.at(key).get<double>();
    };
    bhe::opt::OptimizationResult res;
    if (family == "nm") {
      bhe::EngineParams base;
      base.omega_a = num("omega_a");
      base.omega_b = num("omega_b");
      base.beta_a = num("beta_a");
      base.beta_b = num("beta_b");
      base.coupling = {bhe::CouplingMode::alpha_fraction, num("alpha"),
                       bhe::PertOrder::second};
      res = bhe::opt::optimize_nm(base, num("alpha"),
                                  static_cast<int>(num("n_max")),
                                  static_cast<int>(num("m_max")));
    } else if (family == "xmax") {
      res = bhe::opt::optimize_xmax(num("x"), num("y"), num("beta_a_omega_a"),
                                    num("alpha"));
    } else if (family == "freq21" || family == "freq12") {
      res = bhe::opt::optimize_frequency_4th(
          family == "freq21" ? bhe::pert::FourthOrderVariant::v21
                             : bhe::pert::FourthOrderVariant::v12,
          num("beta_a"), num("y"), num("alpha"));
    } else {
      bhe::throw_config("unknown optimize family '" + family + "'");
    }
    json doc = {{"family", family},
                {"value", res.value},
                {"argmax", res.argmax},
                {"grid_points", res.grid_trace.size()}};
    *json_out = dup_string(doc.dump(2));
  });
}

int bhe_sweep_run(const char* config_json, const char* out_path, int jobs) {
  return guarded([&] {
    if (!config_json || !out_path) bhe::throw_config("null argument");
    const auto config = bhe::sweep::parse_config(config_json);
    const auto table = bhe::sweep::run_sweep(config, jobs);
    bhe::sweep::emit_csv(table, out_path);
  });
}

}  // extern "C"
