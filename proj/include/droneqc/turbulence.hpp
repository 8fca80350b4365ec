#pragma once

#include <string>
#include <utility>

namespace droneqc::turbulence {

/// Default inertial-range bounds: outer scale 1 m (low-altitude humid
/// conditions), inner scale 1 mm (literature default).
inline constexpr double kDefaultOuterScaleM = 1.0;
inline constexpr double kDefaultInnerScaleM = 1e-3;

/// Altitude-dependent refractive-index structure constant model.
///
/// SlcdDay and SlcdNightVariant are the piecewise power-law profiles for
/// humid low-altitude conditions. Hvb (Hufnagel-Valley boundary) and Fried
/// are literature-sourced profiles, included for comparison plots; their
/// closed forms come from the standard turbulence literature, not from the
/// low-altitude channel model itself.
struct TurbulenceProfile {
  enum class Kind { kSlcdDay, kSlcdNightVariant, kHvb, kFried };

  Kind kind = Kind::kSlcdDay;
  double wind_speed_mps = 21.0;   // Hvb: rms wind speed
  double ground_cn2 = 1.7e-14;    // Hvb: C_n^2 at ground level, m^-2/3
  double k0 = 1e-13;              // Fried: turbulence strength parameter

  static TurbulenceProfile slcd_day() { return {Kind::kSlcdDay, 0, 0, 0}; }
  static TurbulenceProfile slcd_night_variant() {
    return {Kind::kSlcdNightVariant, 0, 0, 0};
  }
  static TurbulenceProfile hvb(double wind_speed_mps,
                               double ground_cn2 = 1.7e-14) {
    return {Kind::kHvb, wind_speed_mps, ground_cn2, 0};
  }
  static TurbulenceProfile fried(double k0) {
    return {Kind::kFried, 0, 0, k0};
  }

  /// Parse "slcd-day", "slcd-night-variant", "hvb" or "fried".
  static TurbulenceProfile::Kind kind_from_name(const std::string& name);

  /// Altitudes (m) over which cn2() is defined for this model.
  std::pair<double, double> valid_altitude_range() const;
};

/// C_n^2(h) in m^-2/3 at altitude h (m). Piecewise branch boundaries belong
/// to the lower-altitude branch. Throws AltitudeOutOfRange outside the
/// model's validity range.
double cn2(const TurbulenceProfile& profile, double altitude_m);

/// Kolmogorov spectral density 0.033 C_n^2 k^{-11/3}. Valid for wavenumbers
/// inside the inertial subrange 1/L0 << k << 1/l0 (caller's responsibility).
double kolmogorov_spectrum(double cn2, double wavenumber);

/// Rytov variance 1.23 C_n^2 k^{7/6} z^{11/6} with k = 2 pi / wavelength.
double rytov_sq(double cn2, double wavelength_m, double z_m);

/// Fresnel number k w_d^2 / (2 z).
double fresnel(double wavelength_m, double w_d_m, double z_m);

/// Derived turbulence indicators for one link.
struct TurbulenceDerived {
  double rytov_sq = 0.0;    // sigma_R^2
  double fresnel = 0.0;     // Omega
  double wavenumber = 0.0;  // k, rad/m
};

TurbulenceDerived derived(double cn2, double wavelength_m, double w_d_m,
                          double z_m);

}  // namespace droneqc::turbulence
