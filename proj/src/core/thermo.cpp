#include "thermo.hpp"

#include <cmath>

#include "numerics.hpp"

namespace bhe::thermo {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::heat_engine: return "heat_engine";
    case Regime::refrigerator: return "refrigerator";
    case Regime::thermal_accelerator: return "thermal_accelerator";
    case Regime::boundary: return "boundary";
  }
  return "?";
}

RegimeReport classify_regime(const EngineParams& params) {
  params.validate();
  RegimeReport rep;
  rep.x = params.x();
  rep.x_min = params.n * params.beta_a / (params.m * params.beta_b);
  rep.x_max = static_cast<double>(params.n) / params.m;
  rep.carnot = 1.0 - params.beta_a / params.beta_b;
  rep.operation_range = rep.carnot * rep.x_max;
  const double tol = 1e-12;
  const bool on_min = std::abs(rep.x - rep.x_min) <= tol * rep.x_min;
  const bool on_max = std::abs(rep.x - rep.x_max) <= tol * rep.x_max;
  if (on_min || on_max)
    rep.regime = Regime::boundary;
  else if (rep.x < rep.x_min)
    rep.regime = Regime::refrigerator;
  else if (rep.x > rep.x_max)
    rep.regime = Regime::thermal_accelerator;
  else
    rep.regime = Regime::heat_engine;
  rep.efficiency = rep.regime == Regime::heat_engine ||
                           rep.regime == Regime::boundary
                       ? 1.0 - rep.x / rep.x_max
                       : undefined_value();
  return rep;
}

double entropy_production(const EngineParams& params, double mean_w) {
  const double eps = params.quantum_w();
  if (eps == 0.0)
    throw_physics("entropy production is degenerate at n w_A = m w_B");
  return params.z() / eps * mean_w;
}

double emission_absorption_ratio(const EngineParams& params) {
  return std::exp(params.z());
}

TurReport tur_report(const EngineParams& params, const MomentReport& moments,
                     Method method, double alpha, double delta) {
  (void)params;
  if (moments.mean_w == 0.0)
    throw_physics("relative fluctuations are undefined at zero mean work");
  TurReport rep;
  rep.rf = moments.var_w / (moments.mean_w * moments.mean_w);
  rep.sigma = moments.entropy_production;
  rep.standard_bound = 2.0 / rep.sigma;
  rep.tight_swap_bound = 2.0 / rep.sigma + 1.0;
  const double snr = 1.0 / rep.rf;
  rep.violates_standard = snr > rep.sigma / 2.0;
  if (method == Method::pert4 && is_defined(delta) && is_defined(alpha)) {
    rep.fourth_bound = (rep.sigma / 2.0) / (1.0 - alpha * delta);
    rep.asymptotic_fourth = (rep.sigma / 2.0) / (1.0 - alpha);
  } else {
    rep.fourth_bound = undefined_value();
    rep.asymptotic_fourth = undefined_value();
  }
  return rep;
}

}  // namespace bhe::thermo
