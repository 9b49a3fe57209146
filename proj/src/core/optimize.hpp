#pragma once

#include <map>
#include <string>
#include <vector>

#include "params.hpp"
#include "pert.hpp"

namespace bhe::opt {

enum class Objective { mean_work, snr };
enum class SearchMethod { grid, golden_section, grid_then_refine };

struct GridSample {
  std::map<std::string, double> point;
  double value = 0.0;
};

struct OptimizationResult {
  Objective objective = Objective::mean_work;
  std::map<std::string, double> argmax;
  double value = 0.0;
  std::vector<GridSample> grid_trace;  // coarse-grid samples, for reporting
  SearchMethod method = SearchMethod::grid;
};

// Maximizes the alpha-parametrized mean work over integer (n, m) with
// x < n/m < x y; ties broken toward smaller n+m, then smaller n.
OptimizationResult optimize_nm(const EngineParams& params_base, double alpha,
                               int n_max, int m_max);

// Continuous relaxation x_max = n/m on (x, x y), golden section; reports the
// numeric optimum alongside the analytic approximation x (y+1)/2.
OptimizationResult optimize_xmax(double x, double y, double beta_a_omega_a,
                                 double alpha);

// Joint maximization of the 4th-order mean work over (omega_a, x); 64x64
// log-spaced coarse grid, refined twice 8x around the incumbent.
OptimizationResult optimize_frequency_4th(pert::FourthOrderVariant variant,
                                          double beta_a, double y,
                                          double alpha);

}  // namespace bhe::opt
