#pragma once

#include <Eigen/Dense>
#include <vector>

#include "params.hpp"

namespace bhe::fock {

enum class MomentKind { normal, antinormal };

// Mean thermal population N = 1/(e^{beta omega} - 1).
double thermal_occupation(double beta, double omega);

ThermalOccupations occupations(const EngineParams& p);

// Tr[c^{\dagger k} c^k R] = k! N^k (normal) or Tr[c^k c^{\dagger k} R]
// = k! (N+1)^k (antinormal). k = 0 returns 1 for both kinds.
double thermal_moment(double N, int k, MomentKind kind);

// Truncated ladder operators for one mode. The canonical commutator holds
// exactly on the first dim-1 basis states; the last level carries the
// truncation defect (quantified by a dedicated test, not hidden).
struct ModeOperatorSet {
  int dim = 0;
  Eigen::MatrixXcd annihilation;
  Eigen::VectorXd number_diagonal;
};

ModeOperatorSet build_mode_operators(int dim);

// Geometric number-state distribution of a bosonic Gibbs state, plus the
// analytic mass beyond the truncation (tail = q^dim exactly).
struct ThermalStateDiag {
  int dim = 0;
  Eigen::VectorXd probabilities;
  double tail_mass = 0.0;
};

ThermalStateDiag thermal_state_diag(double beta, double omega, int dim);

}  // namespace bhe::fock
