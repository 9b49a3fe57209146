#pragma once

#include <string>

#include "errors.hpp"

namespace bhe {

enum class CouplingMode { direct_theta, alpha_fraction };
enum class PertOrder { second, fourth };

struct CouplingSpec {
  CouplingMode mode = CouplingMode::direct_theta;
  double value = 0.0;  // theta if direct, alpha in (0,1) if fraction
  PertOrder order = PertOrder::second;
};

// Full physical configuration of the engine. Natural units hbar = k_B = 1.
// Mode A talks to the hot bath (beta_a), mode B to the cold one; the
// refrigerator/accelerator orderings are allowed and classified downstream.
struct EngineParams {
  int n = 1;  // quanta annihilated on mode A
  int m = 1;  // quanta created on mode B
  double omega_a = 1.0;
  double omega_b = 1.0;
  double beta_a = 1.0;
  double beta_b = 1.0;
  CouplingSpec coupling;

  double x() const { return omega_b / omega_a; }
  double y() const { return beta_b / beta_a; }
  // Work quantum per elementary conversion event.
  double quantum_w() const { return n * omega_a - m * omega_b; }
  double quantum_qh() const { return n * omega_a; }
  // z = m beta_B omega_B - n beta_A omega_A, the detailed-balance exponent.
  double z() const { return m * beta_b * omega_b - n * beta_a * omega_a; }

  void validate() const;
};

struct ThermalOccupations {
  double n_a = 0.0;
  double n_b = 0.0;
};

}  // namespace bhe
