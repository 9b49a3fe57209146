#include "params.hpp"

#include "numerics.hpp"

namespace bhe {

void EngineParams::validate() const {
  if (n < 1 || m < 1) throw_config("n and m must be positive integers");
  if (n > kMaxFactorialOrder || m > kMaxFactorialOrder)
    throw_config("n and m must not exceed 20");
  if (!(omega_a > 0.0) || !(omega_b > 0.0))
    throw_config("frequencies must be strictly positive");
  if (!(beta_a > 0.0) || !(beta_b > 0.0))
    throw_config("inverse temperatures must be strictly positive");
  if (coupling.mode == CouplingMode::alpha_fraction) {
    if (!(coupling.value > 0.0) || !(coupling.value < 1.0))
      throw_config("alpha fraction must lie in (0,1)");
  } else {
    if (!(coupling.value >= 0.0))
      throw_config("theta must be real and nonnegative");
  }
}

}  // namespace bhe
