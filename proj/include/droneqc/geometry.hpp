#pragma once

#include <cmath>
#include <optional>

#include "droneqc/constants.hpp"
#include "droneqc/errors.hpp"

namespace droneqc {

/// Maximum supported zenith angle. The slant path length grows as sec(phi)
/// and diverges toward the horizon; 85 degrees bounds it at ~11.5x altitude.
inline constexpr double kMaxZenithRad = 85.0 * kPi / 180.0;

/// Slant link between a ground station and a drone at constant altitude,
/// along a straight ray (refraction neglected).
struct ChannelGeometry {
  double altitude_m = 100.0;                         // drone altitude h
  double zenith_rad = 0.0;                           // zenith angle phi
  double wavelength_m = link_defaults::kWavelength;  // signal wavelength
  double w_d = link_defaults::kBeamSpot;             // beam spot size w_D
  double a_r = link_defaults::kApertureRadius;       // receiver aperture radius
  /// Extinction transmissivity; empty means "derive from the link
  /// condition's beta via the Beer-Lambert slant-path default".
  std::optional<double> chi_ext;

  /// Propagation distance z = h / cos(phi).
  double path_length_m() const { return altitude_m / std::cos(zenith_rad); }

  void validate() const {
    if (!(altitude_m > 0.0)) throw InvalidGeometry("altitude must be positive");
    if (!(zenith_rad >= 0.0 && zenith_rad <= kMaxZenithRad))
      throw InvalidGeometry("zenith angle must lie in [0, 85 deg]");
    if (!(wavelength_m > 0.0) || !(w_d > 0.0) || !(a_r > 0.0))
      throw InvalidGeometry("wavelength, beam spot and aperture must be positive");
    if (chi_ext && !(*chi_ext > 0.0 && *chi_ext <= 1.0))
      throw InvalidGeometry("chi_ext must lie in (0, 1]");
  }
};

}  // namespace droneqc
