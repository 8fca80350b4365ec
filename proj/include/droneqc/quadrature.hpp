#pragma once

#include <functional>
#include <vector>

namespace droneqc {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights for an n-point Gauss-Legendre rule, computed by Newton
/// iteration on the Legendre polynomial. Results are cached per n.
const GaussLegendreRule& gauss_legendre(int n);

/// Composite Gauss-Legendre integration of f over [a, b]. Panel count is
/// doubled until successive estimates agree to rel_tol (plus a small
/// absolute floor for integrals near zero). Throws QuadratureFailure when
/// the panel limit is reached without convergence.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-8, int points_per_panel = 16,
                 int max_panels = 4096);

}  // namespace droneqc
