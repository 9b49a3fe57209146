#include "optimize.hpp"

#include <cmath>

#include "numerics.hpp"

namespace bhe::opt {

namespace {

// Eq.-style alpha-parametrized mean work per unit omega_A:
// alpha (n - m x) tanh(u (m x y - n) / 2), u = beta_A omega_A.
double alpha_mean_work(double x, double y, double u, double alpha, double n,
                       double m) {
  return alpha * (n - m * x) * tanh_half(u * (m * x * y - n));
}

}  // namespace

OptimizationResult optimize_nm(const EngineParams& params_base, double alpha,
                               int n_max, int m_max) {
  if (n_max < 1 || n_max > kMaxFactorialOrder || m_max < 1 ||
      m_max > kMaxFactorialOrder)
    throw_config("n_max and m_max must lie in [1,20]");
  const double x = params_base.x();
  const double y = params_base.y();
  const double u = params_base.beta_a * params_base.omega_a;
  OptimizationResult res;
  res.objective = Objective::mean_work;
  res.method = SearchMethod::grid;
  bool found = false;
  int bn = 0, bm = 0;
  for (int n = 1; n <= n_max; ++n)
    for (int m = 1; m <= m_max; ++m) {
      const double ratio = static_cast<double>(n) / m;
      if (!(ratio > x) || !(ratio < x * y)) continue;
      const double w =
          params_base.omega_a * alpha_mean_work(x, y, u, alpha, n, m);
      res.grid_trace.push_back(
          {{{"n", double(n)}, {"m", double(m)}}, w});
      const bool better =
          !found || w > res.value ||
          (w == res.value && (n + m < bn + bm || (n + m == bn + bm && n < bn)));
      if (better) {
        found = true;
        res.value = w;
        bn = n;
        bm = m;
      }
    }
  if (!found)
    throw_physics("no feasible (n,m) pair with x < n/m < x*y in the grid");
  res.argmax = {{"n", double(bn)}, {"m", double(bm)}};
  return res;
}

OptimizationResult optimize_xmax(double x, double y, double beta_a_omega_a,
                                 double alpha) {
  if (!(x > 0.0) || !(y > 0.0)) throw_config("x and y must be positive");
  const double u = beta_a_omega_a;
  auto f = [&](double xm) { return alpha_mean_work(x, y, u, alpha, xm, 1.0); };
  // golden section on (x, xy); the objective vanishes at both ends and is
  // log-concave inside, so the bracket is valid
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = x, b = x * y;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-13 * (x * y); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const double xm = 0.5 * (a + b);
  const double analytic = x * (y + 1.0) / 2.0;
  OptimizationResult res;
  res.objective = Objective::mean_work;
  res.method = SearchMethod::golden_section;
  res.value = f(xm);
  res.argmax = {{"x_max", xm},
                {"x_max_analytic", analytic},
                {"relative_gap", std::abs(xm - analytic) / analytic}};
  return res;
}

OptimizationResult optimize_frequency_4th(pert::FourthOrderVariant variant,
                                          double beta_a, double y,
                                          double alpha) {
  if (!(beta_a > 0.0) || !(y > 0.0)) throw_config("beta_a, y must be positive");
  const int n = variant == pert::FourthOrderVariant::v21 ? 2 : 1;
  const int m = variant == pert::FourthOrderVariant::v21 ? 1 : 2;
  const double ratio = static_cast<double>(n) / m;
  // strict heat-engine window for x, shrunk marginally off the boundaries
  const double x_lo = ratio / y * (1.0 + 1e-9);
  const double x_hi = ratio * (1.0 - 1e-9);
  auto objective = [&](double wa, double x) {
    EngineParams p;
    p.n = n;
    p.m = m;
    p.omega_a = wa;
    p.omega_b = x * wa;
    p.beta_a = beta_a;
    p.beta_b = y * beta_a;
    p.coupling = {CouplingMode::alpha_fraction, alpha, PertOrder::fourth};
    return pert::moments_4th(p, pert::resolve_theta(p)).mean_w;
  };
  OptimizationResult res;
  res.objective = Objective::mean_work;
  res.method = SearchMethod::grid_then_refine;
  double wa_lo = 0.01 / beta_a, wa_hi = 100.0 / beta_a;
  double xl = x_lo, xh = x_hi;
  double best_wa = wa_lo, best_x = xl, best = -1e300;
  const int pts = 64;
  for (int stage = 0; stage < 3; ++stage) {
    const double lw0 = std::log(wa_lo), lw1 = std::log(wa_hi);
    const double lx0 = std::log(xl), lx1 = std::log(xh);
    for (int i = 0; i < pts; ++i)
      for (int j = 0; j < pts; ++j) {
        const double wa = std::exp(lw0 + (lw1 - lw0) * i / (pts - 1));
        const double x = std::exp(lx0 + (lx1 - lx0) * j / (pts - 1));
        const double v = objective(wa, x);
        if (stage == 0)
          res.grid_trace.push_back({{{"omega_a", wa}, {"x", x}}, v});
        if (v > best) {
          best = v;
          best_wa = wa;
          best_x = x;
        }
      }
    // shrink the box 8x around the incumbent, clipped to the feasible window
    const double sw = (lw1 - lw0) / 8.0, sx = (lx1 - lx0) / 8.0;
    wa_lo = std::exp(std::max(lw0, std::log(best_wa) - sw / 2.0));
    wa_hi = std::exp(std::min(lw1, std::log(best_wa) + sw / 2.0));
    xl = std::exp(std::max(lx0, std::log(best_x) - sx / 2.0));
    xh = std::exp(std::min(lx1, std::log(best_x) + sx / 2.0));
  }
  res.value = best;
  res.argmax = {{"omega_a", best_wa}, {"x", best_x}};
  return res;
}

}  // namespace bhe::opt
