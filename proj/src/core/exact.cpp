#include "exact.hpp"

#include <cmath>
#include <map>
#include <vector>

#include "fock.hpp"
#include "numerics.hpp"
#include "pert.hpp"

namespace bhe::exact {

namespace {

using cd = std::complex<double>;

// Renormalized thermal number-state probabilities on the truncated range.
Eigen::VectorXd thermal_probs(double beta, double omega, int dim) {
  auto st = fock::thermal_state_diag(beta, omega, dim);
  return st.probabilities / st.probabilities.sum();
}

// The generator conserves s = m N_a + n N_b, so the dynamics factorizes into
// independent chains (i0 + t n, j0 - t m). Decomposing along chains instead
// of full s-sectors keeps every block tridiagonal.
struct Chain {
  std::vector<std::pair<int, int>> states;  // (i, j) along increasing t
};

std::vector<Chain> decompose_chains(int n, int m, int da, int db) {
  std::vector<Chain> chains;
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) {
      if (i - n >= 0 && j + m < db) continue;  // not a chain root
      Chain c;
      for (int t = 0; i + t * n < da && j - t * m >= 0; ++t)
        c.states.emplace_back(i + t * n, j - t * m);
      chains.push_back(std::move(c));
    }
  return chains;
}

// <i+n, j-m | a^dag^n b^m | i, j> = sqrt((i+n)!/i!) sqrt(j!/(j-m)!)
double ladder_coeff(int i, int j, int n, int m) {
  long double acc = 1.0L;
  for (int k = 1; k <= n; ++k) acc *= i + k;
  for (int k = 0; k < m; ++k) acc *= j - k;
  return std::sqrt(static_cast<double>(acc));
}

struct EvolveResult {
  std::map<int, double> points;
  double off_line_mass = 0.0;
  double top_a = 0.0;  // evolved mass on the top n levels of mode A
  double top_b = 0.0;  // evolved mass on the top m levels of mode B
};

EvolveResult evolve(const EngineParams& p, const TruncationConfig& trunc,
                    double theta) {
  const int da = trunc.dim_a, db = trunc.dim_b;
  const Eigen::VectorXd pa = thermal_probs(p.beta_a, p.omega_a, da);
  const Eigen::VectorXd pb = thermal_probs(p.beta_b, p.omega_b, db);
  EvolveResult res;
  double total = 0.0;
  for (const auto& chain : decompose_chains(p.n, p.m, da, db)) {
    const int d = static_cast<int>(chain.states.size());
    auto deposit = [&](int iout, int jout, int k, double mass) {
      res.points[k] += mass;
      total += mass;
      if (iout >= da - p.n) res.top_a += mass;
      if (jout >= db - p.m) res.top_b += mass;
    };
    if (d == 1 || theta == 0.0) {
      for (const auto& [i, j] : chain.states) deposit(i, j, 0, pa(i) * pb(j));
      continue;
    }
    // Gauge-transformed chain Hamiltonian: real symmetric tridiagonal with
    // off-diagonal theta * v_t; |V[s,t]|^2 is gauge-invariant.
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    for (int t = 0; t + 1 < d; ++t) {
      const auto& [i, j] = chain.states[t];
      const double v = theta * ladder_coeff(i, j, p.n, p.m);
      h(t + 1, t) = v;
      h(t, t + 1) = v;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const Eigen::MatrixXd& u = es.eigenvectors();
    Eigen::VectorXcd phase(d);
    for (int r = 0; r < d; ++r)
      phase(r) = std::polar(1.0, -es.eigenvalues()(r));
    for (int t = 0; t < d; ++t) {
      const auto& [i, j] = chain.states[t];
      const double pin = pa(i) * pb(j);
      const Eigen::VectorXcd col =
          u * phase.cwiseProduct(u.row(t).transpose().cast<cd>());
      for (int s = 0; s < d; ++s) {
        const auto& [iout, jout] = chain.states[s];
        // emission of |k| = t - s work quanta: mode A drops by (t-s) n
        deposit(iout, jout, t - s, pin * std::norm(col(s)));
      }
    }
  }
  res.off_line_mass = std::abs(1.0 - total);
  return res;
}

int tail_dim(double beta, double omega, double tail_tol, int floor_dim,
             int cap) {
  const double u = beta * omega;
  auto ok = [&](int dim) { return std::exp(-u * dim) < tail_tol; };
  int hi = std::max(8, floor_dim);
  while (!ok(hi)) {
    if (hi >= cap)
      throw_numeric("thermal tail needs more than " + std::to_string(cap) +
                    " Fock levels (beta*omega = " + std::to_string(u) + ")");
    hi = std::min(2 * hi, cap);
  }
  int lo = std::max(8, floor_dim);
  while (lo < hi) {  // smallest dim satisfying the tail criterion
    const int mid = (lo + hi) / 2;
    if (ok(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return std::max(lo, floor_dim);
}

}  // namespace

TruncationConfig adaptive_truncation(const EngineParams& params,
                                     double tail_tol, double leak_tol,
                                     int cap) {
  params.validate();
  if (!(tail_tol > 0.0) || tail_tol > 1e-2 || !(leak_tol > 0.0) ||
      leak_tol > 1e-2)
    throw_config("truncation tolerances must lie in (0, 1e-2]");
  TruncationConfig trunc;
  trunc.tail_tolerance = tail_tol;
  trunc.leakage_tolerance = leak_tol;
  trunc.dims_cap = cap;
  trunc.dim_a =
      tail_dim(params.beta_a, params.omega_a, tail_tol, params.n + 2, cap);
  trunc.dim_b =
      tail_dim(params.beta_b, params.omega_b, tail_tol, params.m + 2, cap);
  const double theta = pert::resolve_theta(params);
  for (;;) {
    const auto res = evolve(params, trunc, theta);
    const bool bad_a = res.top_a > leak_tol;
    const bool bad_b = res.top_b > leak_tol;
    if (!bad_a && !bad_b) return trunc;
    if ((bad_a && trunc.dim_a >= cap) || (bad_b && trunc.dim_b >= cap))
      throw_numeric(std::string("leakage tolerance unreachable within the "
                                "dimension cap for mode ") +
                    (bad_a && trunc.dim_a >= cap ? "A" : "B"));
    if (bad_a) trunc.dim_a = std::min(2 * trunc.dim_a, cap);
    if (bad_b) trunc.dim_b = std::min(2 * trunc.dim_b, cap);
  }
}

Eigen::MatrixXcd build_generator(const EngineParams& params,
                                 const TruncationConfig& trunc) {
  params.validate();
  if (params.n >= trunc.dim_a || params.m >= trunc.dim_b)
    throw_config("truncation dimensions too small for the coupling order");
  const double theta = pert::resolve_theta(params);
  const int da = trunc.dim_a, db = trunc.dim_b;
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(da * db, da * db);
  for (int i = 0; i + params.n < da; ++i)
    for (int j = params.m; j < db; ++j) {
      const double v = theta * ladder_coeff(i, j, params.n, params.m);
      // a^dag^n b^m : |i, j> -> |i+n, j-m>
      const int in = i * db + j;
      const int out = (i + params.n) * db + (j - params.m);
      g(out, in) += v;
      g(in, out) -= v;
    }
  return g;
}

Eigen::MatrixXcd unitary_exp(const Eigen::MatrixXcd& g) {
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g + g.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw_numeric("generator is not anti-Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(cd(0.0, 1.0) * g);
  const int d = static_cast<int>(g.rows());
  Eigen::VectorXcd phase(d);
  for (int r = 0; r < d; ++r) phase(r) = std::polar(1.0, -es.eigenvalues()(r));
  const Eigen::MatrixXcd v = es.eigenvectors() * phase.asDiagonal() *
                             es.eigenvectors().adjoint();
  const double defect =
      (v * v.adjoint() - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (defect > 1e-10)
    throw_numeric("unitarity certificate failed: ||VV^dag - I||_max = " +
                  std::to_string(defect));
  return v;
}

WorkHeatDistribution two_point_distribution(const EngineParams& params,
                                            const TruncationConfig& trunc) {
  params.validate();
  if (params.n >= trunc.dim_a || params.m >= trunc.dim_b)
    throw_config("truncation dimensions too small for the coupling order");
  const double theta = pert::resolve_theta(params);
  const auto res = evolve(params, trunc, theta);
  if (res.off_line_mass > trunc.leakage_tolerance)
    throw_numeric("off-line mass " + std::to_string(res.off_line_mass) +
                  " exceeds the leakage tolerance; increase the truncation "
                  "dimensions");
  WorkHeatDistribution dist;
  dist.method = Method::oracle;
  dist.quantum_w = params.quantum_w();
  dist.quantum_qh = params.quantum_qh();
  dist.off_line_mass = res.off_line_mass;
  for (const auto& [k, p] : res.points) dist.points.emplace_back(k, p);
  return dist;
}

MomentReport exact_moments(const WorkHeatDistribution& dist,
                           const EngineParams& params) {
  auto rep = moments_from_distribution(dist, params);
  rep.method = dist.method;
  return rep;
}

std::complex<double> exact_char_fn(const EngineParams& params,
                                   const TruncationConfig& trunc,
                                   double lambda, double mu) {
  params.validate();
  const double theta = pert::resolve_theta(params);
  const double xi = lambda * params.quantum_w() + mu * params.quantum_qh();
  const cd zeta = std::polar(theta, -xi);
  const Eigen::VectorXd pa = thermal_probs(params.beta_a, params.omega_a,
                                           trunc.dim_a);
  const Eigen::VectorXd pb = thermal_probs(params.beta_b, params.omega_b,
                                           trunc.dim_b);
  auto chain_unitary = [&](const Chain& chain, cd coupling) {
    const int d = static_cast<int>(chain.states.size());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
    for (int t = 0; t + 1 < d; ++t) {
      const auto& [i, j] = chain.states[t];
      const cd v = cd(0.0, 1.0) * coupling *
                   ladder_coeff(i, j, params.n, params.m);
      h(t + 1, t) = v;
      h(t, t + 1) = std::conj(v);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd phase(d);
    for (int r = 0; r < d; ++r)
      phase(r) = std::polar(1.0, -es.eigenvalues()(r));
    return Eigen::MatrixXcd(es.eigenvectors() * phase.asDiagonal() *
                            es.eigenvectors().adjoint());
  };
  cd chi = 0.0;
  for (const auto& chain : decompose_chains(params.n, params.m, trunc.dim_a,
                                            trunc.dim_b)) {
    const int d = static_cast<int>(chain.states.size());
    if (d == 1) {
      const auto& [i, j] = chain.states[0];
      chi += pa(i) * pb(j);
      continue;
    }
    const Eigen::MatrixXcd vt = chain_unitary(chain, cd(theta, 0.0));
    const Eigen::MatrixXcd vz = chain_unitary(chain, zeta);
    for (int t = 0; t < d; ++t) {
      const auto& [i, j] = chain.states[t];
      chi += pa(i) * pb(j) * (vt.col(t).adjoint() * vz.col(t))(0, 0);
    }
  }
  return chi;
}

std::complex<double> exact_char_fn_direct(const EngineParams& params,
                                          const TruncationConfig& trunc,
                                          double lambda, double mu) {
  const Eigen::MatrixXcd v = unitary_exp(build_generator(params, trunc));
  const Eigen::VectorXd pa = thermal_probs(params.beta_a, params.omega_a,
                                           trunc.dim_a);
  const Eigen::VectorXd pb = thermal_probs(params.beta_b, params.omega_b,
                                           trunc.dim_b);
  const int da = trunc.dim_a, db = trunc.dim_b;
  cd chi = 0.0;
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) {
      const double pin = pa(i) * pb(j);
      for (int ip = 0; ip < da; ++ip)
        for (int jp = 0; jp < db; ++jp) {
          const double pr = std::norm(v(ip * db + jp, i * db + j));
          if (pr == 0.0) continue;
          const double w = params.omega_a * (i - ip) + params.omega_b * (j - jp);
          const double q = params.omega_a * (i - ip);
          chi += pin * pr * std::polar(1.0, lambda * w + mu * q);
        }
    }
  return chi;
}

}  // namespace bhe::exact
