#include "droneqc/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "droneqc/constants.hpp"
#include "droneqc/errors.hpp"

namespace droneqc {

namespace {

GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess for the i-th root.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence for P_n(x) and its derivative.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw InvalidInputError("Gauss-Legendre order must be positive");
  static std::map<int, GaussLegendreRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, int points_per_panel, int max_panels) {
  if (!(b >= a)) throw InvalidInputError("integration bounds out of order");
  if (a == b) return 0.0;
  const GaussLegendreRule& rule = gauss_legendre(points_per_panel);

  auto composite = [&](int panels) {
    double sum = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double lo = a + p * h;
      const double mid = lo + 0.5 * h;
      double panel = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        panel += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
      }
      sum += 0.5 * h * panel;
    }
    return sum;
  };

  double prev = composite(1);
  for (int panels = 2; panels <= max_panels; panels *= 2) {
    const double cur = composite(panels);
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur) + 1e-300) return cur;
    prev = cur;
  }
  throw QuadratureFailure("composite Gauss-Legendre did not reach tolerance " +
                          std::to_string(rel_tol));
}

}  // namespace droneqc
