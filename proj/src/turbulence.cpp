#include "droneqc/turbulence.hpp"

#include <cmath>

#include "droneqc/constants.hpp"
#include "droneqc/errors.hpp"

namespace droneqc::turbulence {

namespace {

double slcd_day_cn2(double h) {
  if (h <= 18.5) return 1.70e-14;
  if (h <= 240.0) return 3.13e-13 / h;
  if (h <= 880.0) return 1.30e-15;
  if (h <= 7200.0) return 8.87e-7 / (h * h * h);
  return 2.00e-16 / std::sqrt(h);
}

double slcd_night_variant_cn2(double h) {
  if (h <= 19.0) return 0.0;
  if (h <= 230.0) return 4.008e-13 / std::pow(h, 1.054);
  if (h <= 850.0) return 1.30e-15;
  if (h <= 7000.0) return 6.352e-7 / std::pow(h, 2.966);
  return 6.209e-16 / std::pow(h, 0.6229);
}

// Hufnagel-Valley boundary profile (literature form, HV-5/7 style):
// wind-driven upper-atmosphere term plus tropopause and boundary terms.
double hvb_cn2(double h, double wind_speed, double a0) {
  const double v = wind_speed / 27.0;
  return 0.00594 * v * v * std::pow(1e-5 * h, 10.0) * std::exp(-h / 1000.0) +
         2.7e-16 * std::exp(-h / 1500.0) + a0 * std::exp(-h / 100.0);
}

// Fried short-range profile (literature form): K0 h^{-1/3} e^{-h/3200}.
double fried_cn2(double h, double k0) {
  return k0 * std::pow(h, -1.0 / 3.0) * std::exp(-h / 3200.0);
}

}  // namespace

TurbulenceProfile::Kind TurbulenceProfile::kind_from_name(
    const std::string& name) {
  if (name == "slcd-day") return Kind::kSlcdDay;
  if (name == "slcd-night-variant") return Kind::kSlcdNightVariant;
  if (name == "hvb") return Kind::kHvb;
  if (name == "fried") return Kind::kFried;
  throw InvalidInputError("unknown turbulence profile '" + name + "'");
}

std::pair<double, double> TurbulenceProfile::valid_altitude_range() const {
  switch (kind) {
    case Kind::kSlcdDay:
    case Kind::kSlcdNightVariant:
      return {0.0, 20000.0};  // open below, closed above
    case Kind::kHvb:
      return {0.0, 1e5};
    case Kind::kFried:
      return {0.0, 1e5};  // open below: h^{-1/3} is singular at the ground
  }
  return {0.0, 0.0};
}

double cn2(const TurbulenceProfile& profile, double altitude_m) {
  const auto [lo, hi] = profile.valid_altitude_range();
  if (!(altitude_m > lo && altitude_m <= hi))
    throw AltitudeOutOfRange("altitude " + std::to_string(altitude_m) +
                             " m outside model validity range");
  switch (profile.kind) {
    case TurbulenceProfile::Kind::kSlcdDay:
      return slcd_day_cn2(altitude_m);
    case TurbulenceProfile::Kind::kSlcdNightVariant:
      return slcd_night_variant_cn2(altitude_m);
    case TurbulenceProfile::Kind::kHvb:
      return hvb_cn2(altitude_m, profile.wind_speed_mps, profile.ground_cn2);
    case TurbulenceProfile::Kind::kFried:
      return fried_cn2(altitude_m, profile.k0);
  }
  throw InvalidInputError("unreachable turbulence model kind");
}

double kolmogorov_spectrum(double cn2, double wavenumber) {
  if (!(wavenumber > 0.0))
    throw NonPositiveWavenumber("spectrum wavenumber must be positive");
  if (cn2 < 0.0) throw InvalidInputError("cn2 must be non-negative");
  return 0.033 * cn2 * std::pow(wavenumber, -11.0 / 3.0);
}

double rytov_sq(double cn2, double wavelength_m, double z_m) {
  if (!(wavelength_m > 0.0)) throw InvalidInputError("wavelength must be positive");
  if (!(z_m > 0.0)) throw ZeroDistance("propagation distance must be positive");
  if (cn2 < 0.0) throw InvalidInputError("cn2 must be non-negative");
  const double k = 2.0 * kPi / wavelength_m;
  return 1.23 * cn2 * std::pow(k, 7.0 / 6.0) * std::pow(z_m, 11.0 / 6.0);
}

double fresnel(double wavelength_m, double w_d_m, double z_m) {
  if (!(wavelength_m > 0.0)) throw InvalidInputError("wavelength must be positive");
  if (!(w_d_m > 0.0)) throw InvalidInputError("beam spot size must be positive");
  if (!(z_m > 0.0)) throw ZeroDistance("propagation distance must be positive");
  const double k = 2.0 * kPi / wavelength_m;
  return k * w_d_m * w_d_m / (2.0 * z_m);
}

TurbulenceDerived derived(double cn2, double wavelength_m, double w_d_m,
                          double z_m) {
  TurbulenceDerived d;
  d.rytov_sq = rytov_sq(cn2, wavelength_m, z_m);
  d.fresnel = fresnel(wavelength_m, w_d_m, z_m);
  d.wavenumber = 2.0 * kPi / wavelength_m;
  return d;
}

}  // namespace droneqc::turbulence
