#pragma once

#include <string>
#include <vector>

#include "dist.hpp"
#include "exact.hpp"
#include "params.hpp"

namespace bhe::sweep {

struct AxisSpec {
  std::string parameter;  // theta, alpha, omega_a, omega_b, beta_a, beta_b,
                          // n, m, x_max
  double min = 0.0;
  double max = 0.0;
  int points = 2;
  bool log_scale = false;
};

struct OracleOverrides {
  double tail_tolerance = 1e-9;
  double leakage_tolerance = 1e-8;
  int dims_cap = 256;
  int dims_a = 0;  // 0 = adaptive
  int dims_b = 0;
};

struct SweepConfig {
  EngineParams base;
  std::vector<AxisSpec> axes;  // at most 2
  std::vector<Method> methods;
  std::vector<std::string> outputs;
  OracleOverrides oracle;
};

// Strict-mode JSON ingestion; unknown keys and schema violations are
// reported with their JSON path.
SweepConfig parse_config(const std::string& text);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// One row per grid point per method (expanded per distribution point when
// k/probability columns are requested); deterministic axis-major,
// method-minor order regardless of parallelism.
Table run_sweep(const SweepConfig& config, int parallelism);

struct ValidationReport {
  std::vector<double> theta_grid;
  std::vector<double> errors_pert2;
  std::vector<double> errors_pert4;  // empty unless (n,m) in {(2,1),(1,2)}
  double fitted_order_pert2 = 0.0;
  double fitted_order_pert4 = 0.0;  // NaN when pert4 absent
};

ValidationReport validate_convergence(const EngineParams& params,
                                      double theta_max, int halvings,
                                      const OracleOverrides& oracle = {});

std::string to_csv(const Table& table);
void emit_csv(const Table& table, const std::string& destination);

// 17-significant-digit round-trip formatting shared by all emitters;
// NaN renders as the literal token "nan".
std::string format_value(double v);

}  // namespace bhe::sweep
