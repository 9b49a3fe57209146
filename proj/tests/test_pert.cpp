#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/exact.hpp"
#include "core/fock.hpp"
#include "core/numerics.hpp"
#include "core/pert.hpp"

using namespace bhe;
using namespace bhe::pert;

namespace {

EngineParams make_params(int n, int m, double omega_b, double beta_a,
                         double beta_b) {
  EngineParams p;
  p.n = n;
  p.m = m;
  p.omega_b = omega_b;
  p.beta_a = beta_a;
  p.beta_b = beta_b;
  return p;
}

}  // namespace

TEST_CASE("detailed balance of 2nd-order coefficients") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(0.1, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = make_params(1 + trial % 4, 1 + trial % 3, uni(rng), uni(rng),
                         uni(rng));
    const auto c = second_order_coefficients(p);
    CHECK(c.emit / c.absorb ==
          doctest::Approx(std::exp(p.z())).epsilon(1e-10));
  }
}

TEST_CASE("coupling bound theta_bar") {
  // effectively vacuum baths: no transitions at 2nd order
  auto vac = make_params(1, 1, 1.0, 800.0, 900.0);
  CHECK(theta_bar(vac, PertOrder::second).unbounded());

  auto vac21 = make_params(2, 1, 1.0, 800.0, 900.0);
  CHECK(theta_bar(vac21, PertOrder::fourth).theta_bar ==
        doctest::Approx(std::sqrt(1.5)).epsilon(1e-10));

  auto p = make_params(2, 1, 1.0, 0.1, 10.0);  // b_A w_A = 0.1, b_B w_B = 10
  CHECK(theta_bar(p, PertOrder::second).theta_bar ==
        doctest::Approx(0.0744).epsilon(0.02));

  CHECK_THROWS_AS(theta_bar(make_params(3, 2, 0.5, 1.0, 2.0),
                            PertOrder::fourth),
                  Error);
}

TEST_CASE("resolve_theta alpha convention") {
  auto p = make_params(2, 1, 0.5, 0.1, 10.0);
  p.coupling = {CouplingMode::alpha_fraction, 0.25, PertOrder::second};
  CHECK(resolve_theta(p) ==
        doctest::Approx(0.5 * theta_bar(p, PertOrder::second).theta_bar));
  p.coupling = {CouplingMode::direct_theta, 0.01, PertOrder::second};
  CHECK(resolve_theta(p) == 0.01);
}

TEST_CASE("2nd-order characteristic function") {
  auto p = make_params(2, 1, 0.5, 0.3, 4.0);
  CHECK(char_fn_2nd(p, 0.05, 0.0) == std::complex<double>(1.0, 0.0));
  CHECK(char_fn_2nd(p, 0.0, 1.3) == std::complex<double>(1.0, 0.0));
  // matches the oracle to O(theta^4): halving theta shrinks the gap ~16x
  exact::TruncationConfig trunc{80, 24, 1e-9, 1e-8, 256};
  const double xi = 0.8;
  auto gap = [&](double theta) {
    EngineParams q = p;
    q.coupling = {CouplingMode::direct_theta, theta, PertOrder::second};
    const double lambda = xi / q.quantum_w();
    return std::abs(exact::exact_char_fn(q, trunc, lambda, 0.0) -
                    char_fn_2nd(q, theta, xi));
  };
  const double tb = theta_bar(p, PertOrder::second).theta_bar;
  const double ratio = gap(tb / 16.0) / gap(tb / 32.0);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("3-point distribution") {
  auto p = make_params(2, 1, 0.5, 0.1, 10.0);
  auto d0 = work_distribution_2nd(p, 0.0);
  CHECK(d0.probability_at(0) == 1.0);
  CHECK(d0.probability_at(1) == 0.0);

  const double tb = theta_bar(p, PertOrder::second).theta_bar;
  auto d = work_distribution_2nd(p, std::sqrt(0.1) * tb);
  CHECK(d.probability_at(0) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(d.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.probability_at(1) / d.probability_at(-1) ==
        doctest::Approx(std::exp(p.z())).epsilon(1e-10));

  CHECK_THROWS_AS(work_distribution_2nd(p, 2.0 * tb), Error);
  try {
    work_distribution_2nd(p, 2.0 * tb);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::physics);
  }
}

TEST_CASE("2nd-order moments") {
  // detailed-balance symmetric point: m b_B w_B = n b_A w_A
  auto sym = make_params(1, 1, 0.5, 1.0, 2.0);
  CHECK(moments_2nd(sym, 0.05).mean_w == doctest::Approx(0.0));

  // alpha-form example: <W> = alpha * eps * tanh(z/2) = 0.05 tanh(1.2)
  auto p = make_params(1, 1, 0.5, 0.1, 5.0);
  p.coupling = {CouplingMode::alpha_fraction, 0.1, PertOrder::second};
  const auto rep = moments_2nd(p, resolve_theta(p));
  CHECK(rep.mean_w == doctest::Approx(0.05 * std::tanh(1.2)).epsilon(1e-10));

  // identity <W> eps / <W^2> = tanh(z/2)
  for (double theta : {0.01, 0.03}) {
    auto q = make_params(2, 1, 0.7, 0.4, 3.0);
    const auto r = moments_2nd(q, theta);
    CHECK(r.mean_w * q.quantum_w() / r.second_w ==
          doctest::Approx(std::tanh(q.z() / 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("relative fluctuations") {
  // z large: rf -> 1/alpha
  auto p = make_params(1, 4, 0.5, 0.1, 5.0);  // z = 4*2.5 - 0.1 = 9.9
  const auto rf = relative_fluctuations_2nd(p, 0.1);
  CHECK(rf.rf == doctest::Approx(10.0).epsilon(0.05));
  CHECK(rf.rf == doctest::Approx(rf.rf_lower_bound).epsilon(1e-12));

  // rf * <Sigma> = h(z) >= 2 for any parameters
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(0.1, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto q = make_params(1 + trial % 3, 1 + trial % 2, uni(rng), uni(rng),
                         uni(rng));
    const double alpha = 0.3;
    const auto r = relative_fluctuations_2nd(q, alpha);
    const double sigma = alpha * q.z() * std::tanh(q.z() / 2.0);
    if (sigma > 0.0) {
      CHECK(r.rf * sigma == doctest::Approx(h_of_z(q.z())).epsilon(1e-10));
      CHECK(r.rf * sigma >= 2.0);
    }
  }
}

TEST_CASE("4th-order coefficients") {
  const auto z21 = fourth_order_coefficients_at(0.0, 0.0,
                                                FourthOrderVariant::v21);
  CHECK(z21.A == 0.0);
  CHECK(z21.B == doctest::Approx(1.0 / 3.0));
  CHECK(z21.C == 0.0);
  CHECK(z21.D == 0.0);

  const auto c = fourth_order_coefficients_at(1.0, 0.0,
                                              FourthOrderVariant::v21);
  CHECK(c.A == doctest::Approx(1.0));
  CHECK(c.B == doctest::Approx(25.0 / 3.0));
  CHECK(c.C == doctest::Approx(3.0));
  CHECK(c.D == doctest::Approx(1.0));

  // v12 is the N_A <-> N_B image of v21 (emission and absorption swap roles,
  // flipping the sign of the emission-absorption difference D)
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uni(0.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double na = uni(rng), nb = uni(rng);
    const auto a = fourth_order_coefficients_at(na, nb,
                                                FourthOrderVariant::v12);
    const auto b = fourth_order_coefficients_at(nb, na,
                                                FourthOrderVariant::v21);
    CHECK(a.A == doctest::Approx(b.A).epsilon(1e-12));
    CHECK(a.B == doctest::Approx(b.B).epsilon(1e-12));
    CHECK(a.C == doctest::Approx(b.C).epsilon(1e-12));
    CHECK(a.D == doctest::Approx(-b.D).epsilon(1e-12));
    CHECK(a.emit_base == doctest::Approx(b.absorb_base).epsilon(1e-12));
    CHECK(std::abs(a.D) <= a.A * (1.0 + 1e-12));
  }
}

TEST_CASE("5-point distribution") {
  auto p = make_params(2, 1, 0.5, 0.5, 10.0);
  CHECK(work_distribution_4th(p, 0.0).probability_at(0) == 1.0);
  const double tb = theta_bar(p, PertOrder::fourth).theta_bar;
  for (double frac : {0.1, 0.5, 0.9}) {
    const auto d = work_distribution_4th(p, frac * tb);
    CHECK(d.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& [k, prob] : d.points) CHECK(prob >= 0.0);
  }
  CHECK_THROWS_AS(work_distribution_4th(p, 2.0 * tb), Error);
  CHECK_THROWS_AS(work_distribution_4th(make_params(3, 2, 0.5, 1.0, 2.0), 0.01),
                  Error);
}

TEST_CASE("4th-order moments agree with the distribution") {
  for (auto [n, m] : {std::pair{2, 1}, std::pair{1, 2}}) {
    auto p = make_params(n, m, 0.3, 0.5, 8.0);
    const double tb = theta_bar(p, PertOrder::fourth).theta_bar;
    for (double frac : {0.2, 0.7}) {
      const double theta = frac * tb;
      const auto direct = moments_from_distribution(
          work_distribution_4th(p, theta), p);
      const auto closed = moments_4th(p, theta);
      CHECK(closed.mean_w == doctest::Approx(direct.mean_w).epsilon(1e-12));
      CHECK(closed.second_w == doctest::Approx(direct.second_w).epsilon(1e-12));
      CHECK(closed.var_w == doctest::Approx(direct.var_w).epsilon(1e-12));
    }
  }
}

TEST_CASE("4th-order limits and signs") {
  auto p = make_params(2, 1, 0.5, 0.5, 10.0);
  const double theta = 1e-4;
  CHECK(moments_4th(p, theta).mean_w ==
        doctest::Approx(moments_2nd(p, theta).mean_w).epsilon(1e-6));

  // equal occupations absorb work for omega_B < 2 omega_A
  auto eq = make_params(2, 1, 0.5, 1.0, 2.0);  // b_A w_A = 1 = b_B w_B
  CHECK(moments_4th(eq, 0.05).mean_w < 0.0);
}

TEST_CASE("snr and delta") {
  auto p = make_params(2, 1, 1.7 / 40.0, 1.0, 100.0);
  p.omega_a = 1.7;
  p.omega_b = 1.7 / 40.0;  // b_A w_A = 1.7, x = 1/40, y = 100
  const double tb = theta_bar(p, PertOrder::fourth).theta_bar;
  const auto s = snr_4th(p, std::sqrt(0.5) * tb);
  CHECK(s.delta > 0.0);
  CHECK(s.delta < 1.0);
  // theta -> 0: snr degenerates to the 2nd-order value
  const auto s0 = snr_4th(p, 1e-5);
  const auto rep2 = moments_2nd(p, 1e-5);
  CHECK(s0.snr == doctest::Approx(rep2.snr).epsilon(1e-4));
}

TEST_CASE("partial swap closed form") {
  auto p = make_params(1, 1, 0.5, 0.1, 5.0);
  const auto occ = fock::occupations(p);
  CHECK(swap_mean_work(p, std::acos(-1.0) / 2.0) ==
        doctest::Approx((occ.n_a - occ.n_b) * 0.5).epsilon(1e-12));
  auto eq = make_params(1, 1, 1.0, 1.0, 1.0);
  CHECK(swap_mean_work(eq, 0.7) == doctest::Approx(0.0));
}

TEST_CASE("coupling ratios") {
  // definitional identity: r * <W>_11/theta^2 = <W>_nm/theta^2 at equal x
  auto p = make_params(1, 1, 0.3, 0.7, 70.0);  // u = 0.7, x = 0.3, y = 100
  const auto occ = fock::occupations(p);
  const double w11 = (occ.n_a - occ.n_b) * (p.omega_a - p.omega_b);
  {
    const double r = coupling_ratio(p, RatioVariant::r21);
    const double w21 = 2.0 * (2.0 * p.omega_a - p.omega_b) *
                       (occ.n_a * occ.n_a * (occ.n_b + 1.0) -
                        (occ.n_a + 1.0) * (occ.n_a + 1.0) * occ.n_b);
    CHECK(r * w11 == doctest::Approx(w21).epsilon(1e-10));
  }
  {
    const double r = coupling_ratio(p, RatioVariant::r12);
    const double w12 = 2.0 * (p.omega_a - 2.0 * p.omega_b) *
                       (occ.n_a * (occ.n_b + 1.0) * (occ.n_b + 1.0) -
                        (occ.n_a + 1.0) * occ.n_b * occ.n_b);
    CHECK(r * w11 == doctest::Approx(w12).epsilon(1e-10));
  }

  // r12 asymptote 2(1-2x)/(1-x) = 4/3 at x = 1/4 for b_A w_A >> 1/(x y)
  auto deep = make_params(1, 2, 0.25, 50.0, 5000.0);
  CHECK(coupling_ratio(deep, RatioVariant::r12) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-6));

  // r21 = 1 crossing near b_A w_A ~ 2 at y = 100
  auto at = [&](double u) {
    auto q = make_params(2, 1, 0.1, u, 100.0 * u);
    return coupling_ratio(q, RatioVariant::r21) - 1.0;
  };
  CHECK(at(1.0) * at(3.0) < 0.0);

  auto sing = make_params(1, 1, 1.0, 1.0, 2.0);
  CHECK_THROWS_AS(coupling_ratio(sing, RatioVariant::r21), Error);
}
