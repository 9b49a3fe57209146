#pragma once

#include <complex>

#include "dist.hpp"
#include "params.hpp"

namespace bhe::pert {

// Emission/absorption weights of the second-order 3-point distribution,
// n! m! N_A^n (N_B+1)^m and n! m! (N_A+1)^n N_B^m.
struct SecondOrderCoefficients {
  double emit = 0.0;
  double absorb = 0.0;
};

SecondOrderCoefficients second_order_coefficients(const EngineParams& params);

enum class FourthOrderVariant { v21, v12 };

// Fourth-order closed-form coefficients. The v12 variant is the exact
// N_A <-> N_B image of v21; emission/absorption bases are kept separately
// because the swap flips their roles.
struct FourthOrderCoefficients {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;      // emit_base - absorb_base
  double emit_base = 0.0;
  double absorb_base = 0.0;
  FourthOrderVariant variant = FourthOrderVariant::v21;
};

FourthOrderVariant fourth_order_variant(const EngineParams& params);
FourthOrderCoefficients fourth_order_coefficients(const EngineParams& params,
                                                  FourthOrderVariant variant);
// Raw coefficient evaluation at given occupations (used by the swap-symmetry
// test as well as the parameter-driven entry point above).
FourthOrderCoefficients fourth_order_coefficients_at(double n_a, double n_b,
                                                     FourthOrderVariant variant);

struct CouplingBound {
  double theta_bar = 0.0;  // +inf when the bracket vanishes (vacuum baths)
  PertOrder order = PertOrder::second;
  bool unbounded() const { return std::isinf(theta_bar); }
};

CouplingBound theta_bar(const EngineParams& params, PertOrder order);

// Resolves CouplingSpec to a concrete theta; alpha_fraction maps to
// sqrt(alpha) * theta_bar of the order recorded in the spec.
double resolve_theta(const EngineParams& params);

std::complex<double> char_fn_2nd(const EngineParams& params, double theta,
                                 double xi);

WorkHeatDistribution work_distribution_2nd(const EngineParams& params,
                                           double theta);
MomentReport moments_2nd(const EngineParams& params, double theta);

struct RelativeFluctuations {
  double rf = 0.0;              // (1/alpha) coth^2(z/2)
  double rf_lower_bound = 0.0;  // h(z)/<Sigma>, the cross-check representation
  bool heat_engine = true;      // warning flag when evaluated outside regime
};

RelativeFluctuations relative_fluctuations_2nd(const EngineParams& params,
                                               double alpha);

WorkHeatDistribution work_distribution_4th(const EngineParams& params,
                                           double theta);
MomentReport moments_4th(const EngineParams& params, double theta);

struct SnrResult {
  double snr = 0.0;
  double delta = 0.0;
};

SnrResult snr_4th(const EngineParams& params, double theta);

double swap_mean_work(const EngineParams& params, double theta);

enum class RatioVariant { r21, r12 };

double coupling_ratio(const EngineParams& params, RatioVariant variant);

}  // namespace bhe::pert
