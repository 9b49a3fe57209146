#include "dist.hpp"

#include <cmath>

namespace bhe {

MomentReport moments_from_distribution(const WorkHeatDistribution& dist,
                                       const EngineParams& params) {
  MomentReport rep;
  rep.method = dist.method;
  double m1 = 0.0, m2 = 0.0, q1 = 0.0;
  const double eps = dist.quantum_w;
  const double qh = dist.quantum_qh;
  for (const auto& [k, p] : dist.points) {
    m1 += p * k * eps;
    m2 += p * k * k * eps * eps;
    q1 += p * k * qh;
  }
  rep.mean_w = m1;
  rep.second_w = m2;
  rep.var_w = m2 - m1 * m1;
  rep.mean_qh = q1;
  rep.mean_qc = -(params.m * params.omega_b / (params.n * params.omega_a)) * q1;
  rep.entropy_production =
      -params.beta_a * rep.mean_qh - params.beta_b * rep.mean_qc;
  rep.efficiency = q1 != 0.0 ? m1 / q1 : undefined_value();
  rep.snr = rep.var_w > 0.0 && m1 != 0.0 ? m1 * m1 / rep.var_w
                                         : undefined_value();
  return rep;
}

}  // namespace bhe
