#pragma once

#include <string>

#include "dist.hpp"
#include "params.hpp"

namespace bhe::thermo {

enum class Regime { heat_engine, refrigerator, thermal_accelerator, boundary };

const char* regime_name(Regime r);

struct RegimeReport {
  Regime regime = Regime::boundary;
  double x = 0.0;      // omega_B / omega_A
  double x_min = 0.0;  // n T_B / (m T_A)
  double x_max = 0.0;  // n / m
  double efficiency = 0.0;  // NaN outside the heat-engine regime
  double carnot = 0.0;      // 1 - T_B/T_A
  double operation_range = 0.0;  // carnot * x_max
};

RegimeReport classify_regime(const EngineParams& params);

// <Sigma> = [(m b_B w_B - n b_A w_A) / (n w_A - m w_B)] <W>
double entropy_production(const EngineParams& params, double mean_w);

double emission_absorption_ratio(const EngineParams& params);

struct TurReport {
  double rf = 0.0;
  double sigma = 0.0;
  double standard_bound = 0.0;    // 2 / sigma, lower bound on rf
  double tight_swap_bound = 0.0;  // 2 / sigma + 1 (proven for the swap only)
  double fourth_bound = 0.0;      // (sigma/2)(1 - alpha*delta)^-1, SNR bound
  double asymptotic_fourth = 0.0; // (sigma/2)(1 - alpha)^-1
  bool violates_standard = false; // SNR > sigma/2
};

// delta should be NaN for methods other than pert4; fourth-order fields are
// then reported as NaN.
TurReport tur_report(const EngineParams& params, const MomentReport& moments,
                     Method method, double alpha, double delta);

}  // namespace bhe::thermo
