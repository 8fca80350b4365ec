// Brute-force midpoint Riemann sum for the aperture transmittance integral,
// on an n x n polar grid over the aperture disk. Independent of both
// production quadrature schemes.
#pragma once

#include <cmath>

namespace oracle {

inline double riemann_transmittance(double x0, double y0, double w1_sq,
                                    double w2_sq, double theta, double a_r,
                                    double chi_ext, int n) {
  const double pi = 3.14159265358979323846;
  const double rho0 = std::hypot(x0, y0);
  const double phi0 = rho0 > 0.0 ? std::atan2(y0, x0) : 0.0;
  const double rel = theta - phi0;
  const double cs = std::cos(rel), sn = std::sin(rel);
  const double a = cs * cs / w1_sq + sn * sn / w2_sq;
  const double b = sn * sn / w1_sq + cs * cs / w2_sq;
  const double c = (1.0 / w1_sq - 1.0 / w2_sq) * std::sin(2.0 * rel);

  const double drho = a_r / n;
  const double dphi = 2.0 * pi / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double rho = (i + 0.5) * drho;
    double inner = 0.0;
    for (int j = 0; j < n; ++j) {
      const double phi = (j + 0.5) * dphi;
      const double dx = rho * std::cos(phi) - rho0;
      const double dy = rho * std::sin(phi);
      const double expo = -2.0 * (a * dx * dx + b * dy * dy + c * dx * dy);
      if (expo > -746.0) inner += std::exp(expo);
    }
    sum += rho * inner;
  }
  return 2.0 * chi_ext / (pi * std::sqrt(w1_sq) * std::sqrt(w2_sq)) * sum *
         drho * dphi;
}

}  // namespace oracle
