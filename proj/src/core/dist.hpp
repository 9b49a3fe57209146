#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "numerics.hpp"
#include "params.hpp"

namespace bhe {

enum class Method { oracle, pert2, pert4 };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::oracle: return "oracle";
    case Method::pert2: return "pert2";
    case Method::pert4: return "pert4";
  }
  return "?";
}

// Joint (W, Q_H) distribution. All mass sits on the correlated line
// (W, Q_H) = k (eps, n omega_A); points are stored sorted by k.
struct WorkHeatDistribution {
  double quantum_w = 0.0;   // eps = n omega_A - m omega_B
  double quantum_qh = 0.0;  // n omega_A
  std::vector<std::pair<int, double>> points;
  double off_line_mass = 0.0;  // oracle diagnostic, 0 for perturbative
  Method method = Method::pert2;

  double probability_at(int k) const {
    for (const auto& [kk, p] : points)
      if (kk == k) return p;
    return 0.0;
  }
  double total_mass() const {
    double s = 0.0;
    for (const auto& [k, p] : points) s += p;
    return s;
  }
  void sort_points() {
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
};

struct MomentReport {
  double mean_w = 0.0;
  double second_w = 0.0;
  double var_w = 0.0;
  double mean_qh = 0.0;
  double mean_qc = 0.0;
  double entropy_production = 0.0;
  double efficiency = 0.0;  // NaN when mean_qh = 0
  double snr = 0.0;         // NaN when var or mean degenerate
  Method method = Method::pert2;
};

// Moments of a distribution known to live on the correlated line; shared by
// the oracle and the perturbative constructors.
MomentReport moments_from_distribution(const WorkHeatDistribution& dist,
                                       const EngineParams& params);

}  // namespace bhe
