#include "pert.hpp"

#include <cmath>
#include <limits>

#include "fock.hpp"
#include "numerics.hpp"

namespace bhe::pert {

namespace {

double ipow(double v, int k) {
  double acc = 1.0;
  for (int i = 0; i < k; ++i) acc *= v;
  return acc;
}

}  // namespace

SecondOrderCoefficients second_order_coefficients(const EngineParams& params) {
  params.validate();
  const auto occ = fock::occupations(params);
  const double f = factorial(params.n) * factorial(params.m);
  SecondOrderCoefficients c;
  c.emit = f * ipow(occ.n_a, params.n) * ipow(occ.n_b + 1.0, params.m);
  c.absorb = f * ipow(occ.n_a + 1.0, params.n) * ipow(occ.n_b, params.m);
  return c;
}

FourthOrderVariant fourth_order_variant(const EngineParams& params) {
  if (params.n == 2 && params.m == 1) return FourthOrderVariant::v21;
  if (params.n == 1 && params.m == 2) return FourthOrderVariant::v12;
  throw_config("fourth-order closed forms exist only for (n,m) = (2,1) or "
               "(1,2); got (" + std::to_string(params.n) + "," +
               std::to_string(params.m) + ")");
}

FourthOrderCoefficients fourth_order_coefficients_at(double n_a, double n_b,
                                                     FourthOrderVariant variant) {
  // All closed forms are stated for the (2,1) ordering; the (1,2) variant is
  // their exact image under N_A <-> N_B.
  const double na = variant == FourthOrderVariant::v21 ? n_a : n_b;
  const double nb = variant == FourthOrderVariant::v21 ? n_b : n_a;
  FourthOrderCoefficients c;
  c.variant = variant;
  c.A = na * na * (nb + 1.0) + (na + 1.0) * (na + 1.0) * nb;
  c.B = (2.0 * nb + 1.0) * (6.0 * na * na + 6.0 * na + 1.0) -
        (2.0 / 3.0) * (6.0 * na - 4.0 * nb + 1.0);
  c.C = 3.0 * (ipow(na, 4) * ipow(nb + 1.0, 2) +
               ipow(na + 1.0, 4) * ipow(nb, 2));
  if (variant == FourthOrderVariant::v21) {
    c.emit_base = n_a * n_a * (n_b + 1.0);
    c.absorb_base = (n_a + 1.0) * (n_a + 1.0) * n_b;
  } else {
    c.emit_base = n_a * ipow(n_b + 1.0, 2);
    c.absorb_base = (n_a + 1.0) * n_b * n_b;
  }
  c.D = c.emit_base - c.absorb_base;
  return c;
}

FourthOrderCoefficients fourth_order_coefficients(const EngineParams& params,
                                                  FourthOrderVariant variant) {
  params.validate();
  const auto occ = fock::occupations(params);
  return fourth_order_coefficients_at(occ.n_a, occ.n_b, variant);
}

CouplingBound theta_bar(const EngineParams& params, PertOrder order) {
  CouplingBound bound;
  bound.order = order;
  if (order == PertOrder::second) {
    const auto c = second_order_coefficients(params);
    const double s = c.emit + c.absorb;
    bound.theta_bar =
        s > 0.0 ? 1.0 / std::sqrt(s) : std::numeric_limits<double>::infinity();
  } else {
    const auto c = fourth_order_coefficients(params, fourth_order_variant(params));
    bound.theta_bar = c.B > 0.0 ? 1.0 / std::sqrt(2.0 * c.B)
                                : std::numeric_limits<double>::infinity();
  }
  return bound;
}

double resolve_theta(const EngineParams& params) {
  if (params.coupling.mode == CouplingMode::direct_theta)
    return params.coupling.value;
  const auto bound = theta_bar(params, params.coupling.order);
  if (bound.unbounded())
    throw_physics("coupling bound is infinite (vacuum baths); "
                  "specify theta directly");
  return std::sqrt(params.coupling.value) * bound.theta_bar;
}

std::complex<double> char_fn_2nd(const EngineParams& params, double theta,
                                 double xi) {
  const auto c = second_order_coefficients(params);
  const double t2 = theta * theta;
  // chi = 1 + t2 [ (emit+absorb)(cos xi - 1) + i (emit-absorb) sin xi ],
  // the Fourier transform of the 3-point distribution with W = +eps on
  // emission. Matches Tr[V_theta^dag V_zeta rho0] with zeta = theta e^{-i xi}.
  return {1.0 + t2 * (c.emit + c.absorb) * (std::cos(xi) - 1.0),
          t2 * (c.emit - c.absorb) * std::sin(xi)};
}

WorkHeatDistribution work_distribution_2nd(const EngineParams& params,
                                           double theta) {
  const auto bound = theta_bar(params, PertOrder::second);
  if (theta > bound.theta_bar)
    throw_physics("theta " + std::to_string(theta) +
                  " exceeds the 2nd-order coupling bound theta_bar = " +
                  std::to_string(bound.theta_bar));
  const auto c = second_order_coefficients(params);
  const double t2 = theta * theta;
  WorkHeatDistribution dist;
  dist.method = Method::pert2;
  dist.quantum_w = params.quantum_w();
  dist.quantum_qh = params.quantum_qh();
  dist.points = {{-1, t2 * c.absorb},
                 {0, 1.0 - t2 * (c.emit + c.absorb)},
                 {1, t2 * c.emit}};
  return dist;
}

MomentReport moments_2nd(const EngineParams& params, double theta) {
  const auto c = second_order_coefficients(params);
  const double t2 = theta * theta;
  const double eps = params.quantum_w();
  const double qh = params.quantum_qh();
  const double mk1 = t2 * (c.emit - c.absorb);       // <k>
  const double mk2 = t2 * (c.emit + c.absorb);       // <k^2>
  MomentReport rep;
  rep.method = Method::pert2;
  rep.mean_w = eps * mk1;
  rep.second_w = eps * eps * mk2;
  rep.var_w = rep.second_w;  // variance = second moment at order theta^2
  rep.mean_qh = qh * mk1;
  rep.mean_qc = -(params.m * params.omega_b / qh) * rep.mean_qh;
  rep.entropy_production =
      -params.beta_a * rep.mean_qh - params.beta_b * rep.mean_qc;
  rep.efficiency = rep.mean_qh != 0.0 ? rep.mean_w / rep.mean_qh
                                      : undefined_value();
  rep.snr = rep.var_w > 0.0 && rep.mean_w != 0.0
                ? rep.mean_w * rep.mean_w / rep.var_w
                : undefined_value();
  return rep;
}

RelativeFluctuations relative_fluctuations_2nd(const EngineParams& params,
                                               double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw_config("alpha must lie in (0,1)");
  const double z = params.z();
  RelativeFluctuations out;
  const double x = params.x();
  out.heat_engine = x > params.n * params.beta_a / (params.m * params.beta_b) &&
                    x < static_cast<double>(params.n) / params.m;
  if (z == 0.0) {
    out.rf = std::numeric_limits<double>::infinity();
    out.rf_lower_bound = out.rf;
    return out;
  }
  const double ch = coth_half(z);
  out.rf = ch * ch / alpha;
  // Same quantity through the h(z)/<Sigma> route; <Sigma> from the
  // alpha-parametrized mean work.
  const double sigma = alpha * z * tanh_half(z);
  out.rf_lower_bound = h_of_z(z) / sigma;
  return out;
}

WorkHeatDistribution work_distribution_4th(const EngineParams& params,
                                           double theta) {
  const auto variant = fourth_order_variant(params);
  const auto bound = theta_bar(params, PertOrder::fourth);
  if (theta > bound.theta_bar)
    throw_physics("theta " + std::to_string(theta) +
                  " exceeds the 4th-order coupling bound theta_bar = " +
                  std::to_string(bound.theta_bar));
  const auto c = fourth_order_coefficients(params, variant);
  const double t2 = theta * theta;
  const double t4 = t2 * t2;
  WorkHeatDistribution dist;
  dist.method = Method::pert4;
  dist.quantum_w = params.quantum_w();
  dist.quantum_qh = params.quantum_qh();
  dist.points = {
      {-2, 12.0 * t4 * c.absorb_base * c.absorb_base},
      {-1, 2.0 * c.absorb_base * (t2 - 2.0 * t4 * c.B)},
      {0, 1.0 - 2.0 * t2 * c.A + 4.0 * t4 * (c.A * c.B - c.C)},
      {1, 2.0 * c.emit_base * (t2 - 2.0 * t4 * c.B)},
      {2, 12.0 * t4 * c.emit_base * c.emit_base}};
  return dist;
}

MomentReport moments_4th(const EngineParams& params, double theta) {
  const auto c = fourth_order_coefficients(params, fourth_order_variant(params));
  const double t2 = theta * theta;
  const double eps = params.quantum_w();
  const double qh = params.quantum_qh();
  // <k> and <k^2> of the 5-point distribution, collapsed with the
  // e^2 - a^2 = D A and e^2 + a^2 = C/3 identities.
  const double mk1 = 2.0 * t2 * c.D * (1.0 - 2.0 * t2 * (c.B - 6.0 * c.A));
  const double mk2 = 2.0 * t2 * (c.A - 2.0 * t2 * (c.A * c.B - 4.0 * c.C));
  MomentReport rep;
  rep.method = Method::pert4;
  rep.mean_w = eps * mk1;
  rep.second_w = eps * eps * mk2;
  rep.var_w = rep.second_w - rep.mean_w * rep.mean_w;
  rep.mean_qh = qh * mk1;
  rep.mean_qc = -(params.m * params.omega_b / qh) * rep.mean_qh;
  rep.entropy_production =
      -params.beta_a * rep.mean_qh - params.beta_b * rep.mean_qc;
  rep.efficiency = rep.mean_qh != 0.0 ? rep.mean_w / rep.mean_qh
                                      : undefined_value();
  rep.snr = rep.var_w > 0.0 && rep.mean_w != 0.0
                ? rep.mean_w * rep.mean_w / rep.var_w
                : undefined_value();
  return rep;
}

SnrResult snr_4th(const EngineParams& params, double theta) {
  const auto c = fourth_order_coefficients(params, fourth_order_variant(params));
  const auto rep = moments_4th(params, theta);
  SnrResult out;
  out.snr = rep.snr;
  out.delta = c.A * c.B > 0.0
                  ? 1.0 - (4.0 * c.C + c.D * c.D) / (c.A * c.B)
                  : undefined_value();  // vacuum baths: degenerate occupations
  return out;
}

double swap_mean_work(const EngineParams& params, double theta) {
  const auto occ = fock::occupations(params);
  const double s = std::sin(theta);
  return (occ.n_a - occ.n_b) * (params.omega_a - params.omega_b) * s * s;
}

double coupling_ratio(const EngineParams& params, RatioVariant variant) {
  const double x = params.x();
  const double y = params.y();
  const double u = params.beta_a * params.omega_a;
  if (x == 1.0) throw_physics("coupling ratio is singular at omega_a = omega_b");
  if (variant == RatioVariant::r21)
    return (2.0 - x) / (1.0 - x) *
           sinh_ratio(u * (x * y - 2.0) / 2.0, u * (x * y - 1.0) / 2.0,
                      u / 2.0);
  return (1.0 - 2.0 * x) / (1.0 - x) *
         sinh_ratio(u * (2.0 * x * y - 1.0) / 2.0, u * (x * y - 1.0) / 2.0,
                    x * y * u / 2.0);
}

}  // namespace bhe::pert
