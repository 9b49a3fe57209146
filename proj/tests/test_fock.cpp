#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/fock.hpp"
#include "core/numerics.hpp"

using namespace bhe;
using namespace bhe::fock;

TEST_CASE("thermal occupation basics") {
  CHECK(thermal_occupation(1.0, std::log(2.0)) == doctest::Approx(1.0));
  CHECK(thermal_occupation(0.1, 1.0) == doctest::Approx(9.5083).epsilon(1e-4));
  // deep quantum limit: N = e^{-u}/(1 - e^{-u})
  const double n20 = thermal_occupation(20.0, 1.0);
  CHECK(n20 == doctest::Approx(std::exp(-20.0) / (1.0 - std::exp(-20.0)))
                   .epsilon(1e-12));
  CHECK(n20 == doctest::Approx(std::exp(-20.0)).epsilon(1e-8));
  CHECK_THROWS_AS(thermal_occupation(-1.0, 1.0), Error);
  CHECK_THROWS_AS(thermal_occupation(0.0, 1.0), Error);
}

TEST_CASE("occupation identities") {
  for (double u : {0.05, 0.3, 1.0, 4.0, 12.0}) {
    const double n = thermal_occupation(u, 1.0);
    CHECK(n / (n + 1.0) == doctest::Approx(std::exp(-u)).epsilon(1e-12));
    CHECK(n + 1.0 == doctest::Approx(1.0 / (1.0 - std::exp(-u))).epsilon(1e-12));
  }
}

TEST_CASE("thermal moments") {
  CHECK(thermal_moment(0.0, 3, MomentKind::normal) == 0.0);
  CHECK(thermal_moment(1.0, 2, MomentKind::antinormal) == doctest::Approx(8.0));
  CHECK(thermal_moment(9.5083, 2, MomentKind::normal) ==
        doctest::Approx(180.815).epsilon(1e-4));
  CHECK(thermal_moment(2.5, 0, MomentKind::normal) == 1.0);
  CHECK(thermal_moment(2.5, 0, MomentKind::antinormal) == 1.0);
  CHECK_THROWS_AS(thermal_moment(1.0, -1, MomentKind::normal), Error);
  // moment ratio is the Boltzmann factor e^{-k beta omega}
  for (double u : {0.2, 1.0, 3.0})
    for (int k : {1, 2, 4}) {
      const double n = thermal_occupation(u, 1.0);
      const double ratio = thermal_moment(n, k, MomentKind::normal) /
                           thermal_moment(n, k, MomentKind::antinormal);
      CHECK(ratio == doctest::Approx(std::exp(-k * u)).epsilon(1e-10));
    }
}

TEST_CASE("mode operators") {
  const auto ops2 = build_mode_operators(2);
  CHECK(ops2.annihilation(0, 1) == std::complex<double>(1.0, 0.0));
  CHECK(ops2.annihilation(1, 0) == std::complex<double>(0.0, 0.0));
  const auto ops4 = build_mode_operators(4);
  CHECK(ops4.annihilation(2, 3).real() == doctest::Approx(std::sqrt(3.0)));
  CHECK(ops4.number_diagonal(3) == 3.0);
  CHECK_THROWS_AS(build_mode_operators(1), Error);

  // [a, a^dag] = I on the first dim-1 states; last level carries the defect
  const int dim = 40;
  const auto ops = build_mode_operators(dim);
  const Eigen::MatrixXcd comm =
      ops.annihilation * ops.annihilation.adjoint() -
      ops.annihilation.adjoint() * ops.annihilation;
  for (int i = 0; i < dim - 1; ++i)
    for (int j = 0; j < dim - 1; ++j) {
      const double expect = i == j ? 1.0 : 0.0;
      CHECK(std::abs(comm(i, j) - expect) < 1e-13);
    }
  CHECK(comm(dim - 1, dim - 1).real() ==
        doctest::Approx(1.0 - dim).epsilon(1e-12));
}

TEST_CASE("thermal state diagonal") {
  const auto st = thermal_state_diag(1.0, std::log(2.0), 3);
  CHECK(st.probabilities(0) == doctest::Approx(0.5));
  CHECK(st.probabilities(1) == doctest::Approx(0.25));
  CHECK(st.probabilities(2) == doctest::Approx(0.125));
  CHECK(st.tail_mass == doctest::Approx(0.125));
  CHECK(st.probabilities.sum() + st.tail_mass == doctest::Approx(1.0).epsilon(1e-12));

  const auto cold = thermal_state_diag(100.0, 1.0, 4);
  CHECK(cold.probabilities(0) == doctest::Approx(1.0));
  CHECK(cold.probabilities(1) < 1e-40);
  CHECK(cold.tail_mass < 1e-100);

  const auto hot = thermal_state_diag(0.1, 1.0, 200);
  CHECK(hot.tail_mass == doctest::Approx(std::exp(-20.0)).epsilon(1e-12));

  // mean occupation matches the closed form once the tail is negligible
  const auto st2 = thermal_state_diag(0.5, 1.0, 80);
  double mean = 0.0;
  for (int l = 0; l < 80; ++l) mean += l * st2.probabilities(l);
  CHECK(mean == doctest::Approx(thermal_occupation(0.5, 1.0)).epsilon(1e-10));
}

TEST_CASE("parameter validation") {
  EngineParams p;
  p.omega_b = 0.5;
  p.beta_b = 2.0;
  CHECK_NOTHROW(p.validate());
  CHECK(p.x() == doctest::Approx(0.5));
  CHECK(p.y() == doctest::Approx(2.0));
  CHECK(p.quantum_w() == doctest::Approx(0.5));
  CHECK(p.z() == doctest::Approx(0.0));

  EngineParams bad = p;
  bad.n = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = p;
  bad.n = 21;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = p;
  bad.omega_a = -1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = p;
  bad.coupling = {CouplingMode::alpha_fraction, 1.5, PertOrder::second};
  CHECK_THROWS_AS(bad.validate(), Error);
  try {
    bad.validate();
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
  }
}
