// Command-line front end; talks to the engine exclusively through the
// C API in bhe.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bhe.h"

namespace {

using nlohmann::json;

struct PhysicsFlags {
  int n = 1, m = 1;
  double omega_a = 1.0, omega_b = 0.5, beta_a = 1.0, beta_b = 2.0;
  double theta = -1.0, alpha = -1.0;
  int order = 2;
  int dims_a = 0, dims_b = 0, dims_cap = 256;
  double tail_tol = 1e-9, leak_tol = 1e-8;
};

void add_engine_flags(CLI::App* cmd, PhysicsFlags& f, bool with_coupling) {
  cmd->add_option("--n", f.n, "quanta exchanged on mode A");
  cmd->add_option("--m", f.m, "quanta exchanged on mode B");
  cmd->add_option("--omega-a", f.omega_a, "frequency of mode A");
  cmd->add_option("--omega-b", f.omega_b, "frequency of mode B");
  cmd->add_option("--beta-a", f.beta_a, "inverse temperature, hot bath");
  cmd->add_option("--beta-b", f.beta_b, "inverse temperature, cold bath");
  if (with_coupling) {
    cmd->add_option("--theta", f.theta, "coupling strength");
    cmd->add_option("--alpha", f.alpha,
                    "coupling as a fraction of theta_bar^2, in (0,1)");
    cmd->add_option("--order", f.order, "order the alpha fraction refers to")
        ->check(CLI::IsMember({2, 4}));
  }
  cmd->add_option("--dims-a", f.dims_a, "fixed truncation dimension, mode A");
  cmd->add_option("--dims-b", f.dims_b, "fixed truncation dimension, mode B");
  cmd->add_option("--tail-tol", f.tail_tol, "thermal tail tolerance");
  cmd->add_option("--leak-tol", f.leak_tol, "evolved leakage tolerance");
  cmd->add_option("--dims-cap", f.dims_cap, "per-mode dimension cap");
}

std::string engine_json(const PhysicsFlags& f) {
  json doc;
  doc["engine"] = {{"n", f.n},         {"m", f.m},
                   {"omega_a", f.omega_a}, {"omega_b", f.omega_b},
                   {"beta_a", f.beta_a},   {"beta_b", f.beta_b}};
  if (f.alpha >= 0.0)
    doc["coupling"] = {{"mode", "alpha"}, {"value", f.alpha},
                       {"order", f.order}};
  else
    doc["coupling"] = {{"mode", "theta"},
                       {"value", f.theta >= 0.0 ? f.theta : 0.0},
                       {"order", f.order}};
  doc["oracle"] = {{"tail_tolerance", f.tail_tol},
                   {"leakage_tolerance", f.leak_tol},
                   {"dims_cap", f.dims_cap}};
  if (f.dims_a > 0 && f.dims_b > 0) {
    doc["oracle"]["dims_a"] = f.dims_a;
    doc["oracle"]["dims_b"] = f.dims_b;
  }
  return doc.dump();
}

int fail(int code) {
  std::cerr << "error: " << bhe_last_error() << "\n";
  return code;
}

int print_result(int code, char* out) {
  if (code != BHE_OK) return fail(code);
  std::cout << out << "\n";
  bhe_string_free(out);
  return 0;
}

class EngineHandle {
 public:
  ~EngineHandle() { bhe_engine_destroy(engine_); }
  int create(const std::string& config) {
    return bhe_engine_create(config.c_str(), &engine_);
  }
  bhe_engine* get() const { return engine_; }

 private:
  bhe_engine* engine_ = nullptr;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-stroke bosonic heat engine toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", []() { return bhe_version(); });

  PhysicsFlags f;
  std::string method = "pert2";
  auto* sim = app.add_subcommand("simulate", "evaluate one parameter point");
  add_engine_flags(sim, f, true);
  sim->add_option("--method", method, "oracle | pert2 | pert4")
      ->check(CLI::IsMember({"oracle", "pert2", "pert4"}));

  std::string config_path, out_path;
  int jobs = 1;
  auto* swp = app.add_subcommand("sweep", "run a parameter sweep to CSV");
  swp->add_option("--config", config_path, "sweep config JSON file")
      ->required();
  swp->add_option("--out", out_path, "output CSV path")->required();
  swp->add_option("--jobs", jobs, "worker threads");

  std::string objective = "mean-work", family = "nm";
  double opt_x = 0.2, opt_y = 20.0, opt_u = 0.1, opt_alpha = 0.5;
  double opt_beta_a = 0.1;
  int n_max = 10, m_max = 10;
  PhysicsFlags fo;
  auto* opt = app.add_subcommand("optimize", "optimize a working point");
  opt->add_option("--objective", objective, "mean-work")
      ->check(CLI::IsMember({"mean-work", "snr"}));
  opt->add_option("--family", family, "nm | xmax | freq21 | freq12")
      ->check(CLI::IsMember({"nm", "xmax", "freq21", "freq12"}))
      ->required();
  opt->add_option("--omega-a", fo.omega_a, "base frequency of mode A (nm)");
  opt->add_option("--omega-b", fo.omega_b, "base frequency of mode B (nm)");
  opt->add_option("--beta-a", opt_beta_a, "inverse hot temperature");
  opt->add_option("--beta-b", fo.beta_b, "inverse cold temperature (nm)");
  opt->add_option("--x", opt_x, "omega_B/omega_A (xmax)");
  opt->add_option("--y", opt_y, "beta_B/beta_A (xmax, freq)");
  opt->add_option("--beta-a-omega-a", opt_u, "beta_A omega_A (xmax)");
  opt->add_option("--alpha", opt_alpha, "coupling fraction");
  opt->add_option("--n-max", n_max, "integer grid bound (nm)");
  opt->add_option("--m-max", m_max, "integer grid bound (nm)");

  PhysicsFlags fv;
  double theta_max = 0.0;
  int halvings = 4;
  auto* val = app.add_subcommand("validate",
                                 "oracle-vs-perturbative convergence orders");
  add_engine_flags(val, fv, false);
  val->add_option("--theta-max", theta_max, "largest coupling in the study")
      ->required();
  val->add_option("--halvings", halvings, "grid points theta_max/2^j, >= 3");

  PhysicsFlags ft;
  auto* tur = app.add_subcommand("tur", "TUR bounds and violation flags");
  add_engine_flags(tur, ft, true);

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed()) {
    if ((f.theta >= 0.0) == (f.alpha >= 0.0)) {
      std::cerr << "error: specify exactly one of --theta / --alpha\n";
      return BHE_ERR_CONFIG;
    }
    EngineHandle engine;
    if (int rc = engine.create(engine_json(f)); rc != BHE_OK) return fail(rc);
    char* out = nullptr;
    const int rc = bhe_simulate(engine.get(), method.c_str(), &out);
    return print_result(rc, out);
  }
  if (swp->parsed()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot read '" << config_path << "'\n";
      return BHE_ERR_IO;
    }
    std::ostringstream text;
    text << in.rdbuf();
    if (int rc = bhe_sweep_run(text.str().c_str(), out_path.c_str(), jobs);
        rc != BHE_OK)
      return fail(rc);
    std::cout << "wrote " << out_path << "\n";
    return 0;
  }
  if (opt->parsed()) {
    if (objective != "mean-work") {
      std::cerr << "error: only the mean-work objective is available for "
                   "these families\n";
      return BHE_ERR_CONFIG;
    }
    json req;
    req["family"] = family;
    req["alpha"] = opt_alpha;
    if (family == "nm") {
      req["omega_a"] = fo.omega_a;
      req["omega_b"] = fo.omega_b;
      req["beta_a"] = opt_beta_a;
      req["beta_b"] = fo.beta_b;
      req["n_max"] = n_max;
      req["m_max"] = m_max;
    } else if (family == "xmax") {
      req["x"] = opt_x;
      req["y"] = opt_y;
      req["beta_a_omega_a"] = opt_u;
    } else {
      req["beta_a"] = opt_beta_a;
      req["y"] = opt_y;
    }
    char* out = nullptr;
    const int rc = bhe_optimize_json(req.dump().c_str(), &out);
    return print_result(rc, out);
  }
  if (val->parsed()) {
    fv.theta = theta_max;
    EngineHandle engine;
    if (int rc = engine.create(engine_json(fv)); rc != BHE_OK) return fail(rc);
    char* out = nullptr;
    const int rc = bhe_validate_json(engine.get(), theta_max, halvings, &out);
    return print_result(rc, out);
  }
  if (tur->parsed()) {
    if (ft.alpha < 0.0 && ft.theta < 0.0) {
      std::cerr << "error: tur requires --alpha (or --theta)\n";
      return BHE_ERR_CONFIG;
    }
    EngineHandle engine;
    if (int rc = engine.create(engine_json(ft)); rc != BHE_OK) return fail(rc);
    char* out = nullptr;
    const char* m = ft.order == 4 ? "pert4" : "pert2";
    const int rc = bhe_tur_json(engine.get(), m, &out);
    return print_result(rc, out);
  }
  return 0;
}
