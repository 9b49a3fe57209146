#include "fock.hpp"

#include <cmath>

#include "numerics.hpp"

namespace bhe::fock {

double thermal_occupation(double beta, double omega) {
  const double u = beta * omega;
  if (!(u > 0.0)) throw_config("thermal_occupation requires beta*omega > 0");
  // expm1 keeps full precision in the classical regime beta*omega << 1.
  return 1.0 / std::expm1(u);
}

ThermalOccupations occupations(const EngineParams& p) {
  return {thermal_occupation(p.beta_a, p.omega_a),
          thermal_occupation(p.beta_b, p.omega_b)};
}

double thermal_moment(double N, int k, MomentKind kind) {
  if (k < 0) throw_config("thermal_moment requires k >= 0");
  if (N < 0.0) throw_config("thermal_moment requires N >= 0");
  if (k == 0) return 1.0;  // empty product, both kinds
  const double base = kind == MomentKind::normal ? N : N + 1.0;
  long double acc = 1.0L;
  for (int j = 1; j <= k; ++j) acc *= static_cast<long double>(j) * base;
  return static_cast<double>(acc);
}

ModeOperatorSet build_mode_operators(int dim) {
  if (dim < 2) throw_config("mode operators need dim >= 2");
  ModeOperatorSet ops;
  ops.dim = dim;
  ops.annihilation = Eigen::MatrixXcd::Zero(dim, dim);
  ops.number_diagonal = Eigen::VectorXd::Zero(dim);
  for (int k = 1; k < dim; ++k)
    ops.annihilation(k - 1, k) = std::sqrt(static_cast<double>(k));
  for (int k = 0; k < dim; ++k) ops.number_diagonal(k) = k;
  return ops;
}

ThermalStateDiag thermal_state_diag(double beta, double omega, int dim) {
  if (dim < 2) throw_config("thermal_state_diag needs dim >= 2");
  const double u = beta * omega;
  if (!(u > 0.0)) throw_config("thermal_state_diag requires beta*omega > 0");
  const double q = std::exp(-u);
  ThermalStateDiag st;
  st.dim = dim;
  st.probabilities = Eigen::VectorXd::Zero(dim);
  double w = 1.0 - q;
  for (int l = 0; l < dim; ++l) {
    st.probabilities(l) = w;
    w *= q;
  }
  st.tail_mass = std::pow(q, dim);
  return st;
}

}  // namespace bhe::fock
