#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "droneqc/geometry.hpp"

namespace droneqc::attenuation {

/// Scattering size-distribution model selecting the exponent p in the fog
/// attenuation law.
enum class ScatteringModel { kKim, kKruse };

ScatteringModel scattering_model_from_name(const std::string& name);

/// Size distribution coefficient p as a function of visibility V (km).
///
/// Kim:   1.6 (V >= 50), 1.3 (6 <= V < 50), 0.16 V + 0.34 (1 <= V < 6),
///        V - 0.5 (0.5 <= V < 1), 0 (V < 0.5).
/// Kruse: 1.6 (V >= 50), 1.3 (6 <= V < 50), 0.585 V^{1/3} (V < 6).
///
/// Intervals are closed below, so boundary visibilities take the
/// higher-visibility branch.
double size_distribution_p(ScatteringModel model, double visibility_km);

/// Fog/haze attenuation coefficient (3.91 / V) (lambda / 550)^{-p} in km^-1,
/// wavelength in nm.
double beta_fog(double visibility_km, double wavelength_nm, double p);

/// Rain attenuation coefficient 2.8 / V in km^-1.
double beta_rain(double visibility_km);

/// Path attenuation tau = 4.3429 beta L in dB for beta in km^-1 and L in km.
double path_attenuation_db(double beta_km_inv, double distance_km);

/// Extinction factor alpha(h) in km^-1 as a function of altitude in meters.
struct ExtinctionProfile {
  std::function<double(double)> alpha_of_h;
  std::string description;

  static ExtinctionProfile constant(double alpha_km_inv);
  /// alpha0 e^{-h/scale}, a simple decaying-aerosol column.
  static ExtinctionProfile exponential(double alpha0_km_inv, double scale_m);
};

/// Beer-Lambert transmissivity exp(-int alpha dl) along the straight slant
/// ray from the ground to the drone. For a zenith path with constant alpha
/// this reduces to e^{-alpha h}.
double atm_transmissivity(const ExtinctionProfile& profile,
                          const ChannelGeometry& geometry,
                          double rel_tol = 1e-8);

struct VisibilityRecord {
  std::string label;
  double visibility_km = 0.0;
};

struct VisibilityRow {
  std::string label;
  double p = 0.0;
  double beta_fog_km_inv = 0.0;
  double attenuation_db = 0.0;
};

/// One attenuation-budget row per visibility record: p, beta_fog and the dB
/// path attenuation over the given link distance.
std::vector<VisibilityRow> visibility_report(
    const std::vector<VisibilityRecord>& records, double wavelength_nm,
    ScatteringModel model, double distance_km);

/// Parse `label,visibility_km` CSV (header required). Throws MalformedRecord
/// with the offending row index.
std::vector<VisibilityRecord> read_visibility_csv(std::istream& in);

}  // namespace droneqc::attenuation
