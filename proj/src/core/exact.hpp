#pragma once

#include <Eigen/Dense>
#include <complex>

#include "dist.hpp"
#include "params.hpp"

namespace bhe::exact {

struct TruncationConfig {
  int dim_a = 8;
  int dim_b = 8;
  double tail_tolerance = 1e-9;
  double leakage_tolerance = 1e-8;
  int dims_cap = 256;
};

// Smallest per-mode dimensions such that (a) the thermal tail q^dim stays
// below tail_tolerance and (b) the evolved state's population on the top
// n (mode A) / m (mode B) levels stays below leakage_tolerance.
TruncationConfig adaptive_truncation(const EngineParams& params,
                                     double tail_tol = 1e-9,
                                     double leak_tol = 1e-8, int cap = 256);

// G = theta (a^dag^n b^m - a^n b^dag^m) on the full product space,
// index convention |i,j> -> i*dim_b + j. Exactly anti-Hermitian.
Eigen::MatrixXcd build_generator(const EngineParams& params,
                                 const TruncationConfig& trunc);

// V = exp(G) by Hermitian eigendecomposition of iG. Certifies
// ||V V^dag - I||_max <= 1e-10.
Eigen::MatrixXcd unitary_exp(const Eigen::MatrixXcd& g);

WorkHeatDistribution two_point_distribution(const EngineParams& params,
                                            const TruncationConfig& trunc);

MomentReport exact_moments(const WorkHeatDistribution& dist,
                           const EngineParams& params);

// Tr[V_theta^dag V_zeta rho0], zeta = theta e^{-i xi},
// xi = lambda (n w_A - m w_B) + mu n w_A.
std::complex<double> exact_char_fn(const EngineParams& params,
                                   const TruncationConfig& trunc,
                                   double lambda, double mu);

// Independent cross-check: the raw two-point-measurement definition
// sum_{in,out} p_in |<out|V|in>|^2 e^{i(lambda W + mu Q_H)} evaluated with
// the full-matrix V. Quadratic in the total dimension; tests only.
std::complex<double> exact_char_fn_direct(const EngineParams& params,
                                          const TruncationConfig& trunc,
                                          double lambda, double mu);

}  // namespace bhe::exact
