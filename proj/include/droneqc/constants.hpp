#pragma once

namespace droneqc {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Reference link parameters for the drone channel model (810 nm signal,
// small-optics terminals, low-altitude operation).
namespace link_defaults {
inline constexpr double kWavelength = 810e-9;       // m
inline constexpr double kBeamSpot = 1.15e-2;        // m, transmitter spot size w_D
inline constexpr double kApertureRadius = 2.64e-2;  // m, receiver aperture a_r
inline constexpr double kExtinctionBeta = 0.7;      // zenith extinction parameter
inline constexpr double kPointingError = 2e-6;      // rad, downlink pointing error
inline constexpr double kN0Day = 0.01;              // m^-3 scattering particle density
inline constexpr double kN0Night = 0.61;            // m^-3
inline constexpr double kAltitudeMin = 18.5;        // m, nominal validity range
inline constexpr double kAltitudeMax = 240.0;       // m
}  // namespace link_defaults

}  // namespace droneqc
