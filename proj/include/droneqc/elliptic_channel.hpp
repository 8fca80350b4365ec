#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "droneqc/geometry.hpp"
#include "droneqc/rng.hpp"

namespace droneqc::elliptic {

/// Elliptic beam profile at the receiver plane: centroid (x0, y0), squared
/// principal semi-axes W1^2, W2^2 and orientation angle theta in [0, pi/2].
struct BeamParams {
  double x0_m = 0.0;
  double y0_m = 0.0;
  double w1_sq_m2 = 0.0;
  double w2_sq_m2 = 0.0;
  double theta_rad = 0.0;

  void validate() const;
};

enum class Direction { kUplink, kDownlink };

/// Reading of the downlink centroid variance alpha_p * z. The product has
/// mixed units as printed in the source model; kAsPrinted uses it directly
/// as a variance in m^2, kSquared uses (alpha_p z)^2 instead.
enum class PointingVariance { kAsPrinted, kSquared };

/// Distribution family used for the squared semi-axes (W1^2, W2^2).
/// Log-normal (default) is matched to the model's mean and covariance and
/// keeps W_i^2 positive; truncated-normal redraws negative candidates.
enum class SemiAxisFamily { kLogNormal, kTruncatedNormal };

/// Atmospheric condition and direction of a link, with the altitude-scaling
/// C_n^2 law used inside the beam statistics.
struct LinkCondition {
  Direction direction = Direction::kDownlink;
  bool daytime = true;
  double n0 = link_defaults::kN0Day;            // scattering particle density
  double alpha_p = link_defaults::kPointingError;  // downlink pointing error
  double beta = link_defaults::kExtinctionBeta;    // chi_ext(phi) parameter
  PointingVariance pointing = PointingVariance::kAsPrinted;
  SemiAxisFamily semi_axis_family = SemiAxisFamily::kLogNormal;
  /// C_n^2(h) used in the Rytov variance; defaults to the day/night
  /// low-altitude laws 3.13e-13 / h and 4.008e-13 / h^1.054.
  std::function<double(double)> cn2_of_altitude;

  static LinkCondition make(Direction direction, bool daytime);
  double cn2(double altitude_m) const;
};

/// First and second moments of the beam-parameter distribution: centroid
/// variance (per axis), mean squared semi-axis and the 2x2 covariance of
/// (W1^2, W2^2).
struct BeamMoments {
  double centroid_var_m2 = 0.0;
  double mean_w_sq_m2 = 0.0;
  Eigen::Matrix2d cov_w_sq_m4 = Eigen::Matrix2d::Zero();
};

/// Beam statistics for the given condition and geometry.
///
/// Uplink:  <x0^2> = 0.419 sigma_R^2 w_D^2 Omega^{-7/6},
///          <W_i^2> = (w_D^2/Omega^2)(1 + (pi/8) z n0 w_D^2
///                    + 2.6 sigma_R^2 Omega^{5/6}),
///          <dW_i^2 dW_j^2> = (2 delta_ij - 0.8)(w_D^4/Omega^{19/6})
///                    (1 + (pi/8) z n0 w_D^2) sigma_R^2.
/// Downlink: <x0^2> = alpha_p z, with pi/24 and 1.6 coefficients in <W_i^2>
///          and an extra 3/8 factor in the covariance.
BeamMoments beam_moments(const LinkCondition& cond,
                         const ChannelGeometry& geom);

/// Draw one beam-parameter 5-tuple: centroid components are zero-mean
/// normal, (W1^2, W2^2) follow the configured family matched to the
/// moments, theta is uniform on [0, pi/2]. Deterministic per stream.
BeamParams sample_beam_params(const BeamMoments& moments, SampleStream& rng,
                              SemiAxisFamily family = SemiAxisFamily::kLogNormal);

/// Numeric evaluation scheme for the transmittance integral.
struct QuadratureSpec {
  enum class Method {
    /// Tensor-product Gauss-Legendre over the aperture polar coordinates
    /// (rho, phi), refined by escalating the node counts.
    kAperturePolar,
    /// Boundary line integral in beam-normalized coordinates (Green's
    /// theorem with an erf potential). Smooth for every beam placement and
    /// robust when the beam is much smaller than the aperture, as happens
    /// at short range; used by the Monte Carlo loops.
    kBeamFrame,
  };
  Method method = Method::kAperturePolar;
  int radial_nodes = 64;
  int angular_nodes = 128;
  bool adaptive = true;
  double rel_tol = 1e-6;
  /// Convergence floor for transmittances that are zero for all practical
  /// purposes (a grazing or missing beam); refinement stops once successive
  /// estimates agree to rel_tol relatively or abs_tol absolutely.
  double abs_tol = 1e-12;

  static QuadratureSpec aperture_polar() { return {}; }
  static QuadratureSpec beam_frame() {
    QuadratureSpec spec;
    spec.method = Method::kBeamFrame;
    return spec;
  }
};

/// Transmittance of an elliptic Gaussian beam through a circular aperture
/// of radius a_r, scaled by the extinction transmissivity chi_ext:
///
///   eta = (2 chi_ext / (pi W1 W2)) int_0^{a_r} rho drho int_0^{2pi} dphi
///         exp[-2A (rho cos phi - rho0)^2 - 2B rho^2 sin^2 phi
///             - 2C (rho cos phi - rho0) rho sin phi],
///
/// with A, B, C the usual quadratic-form coefficients of the beam ellipse
/// rotated by theta - phi0. The result lies in [0, chi_ext].
double elliptic_transmittance(const BeamParams& params, double a_r,
                              double chi_ext,
                              const QuadratureSpec& quad = {});

/// Default extinction transmissivity chi_ext(phi): Beer-Lambert over the
/// slant path with the constant extinction factor beta / h, which makes the
/// zenith optical depth equal beta, i.e. chi_ext = e^{-beta sec(phi)}.
double default_chi_ext(double beta, const ChannelGeometry& geom);

/// Binned probability distribution of transmittance.
struct PdtHistogram {
  std::vector<double> bin_edges;      // size bins + 1, ascending over [0, 1]
  std::vector<double> probabilities;  // size bins, sums to 1
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;

  int mode_bin() const;
  double bin_center(int bin) const;
};

struct MonteCarloOptions {
  std::int64_t n_samples = 1000000;
  int bins = 100;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = hardware concurrency; results independent of it
  QuadratureSpec quad = QuadratureSpec::beam_frame();
};

/// Monte Carlo PDT: n_samples independent transmittance draws, rounded to
/// five decimal places and histogrammed over [0, 1]. Bit-reproducible for a
/// fixed seed regardless of thread count.
PdtHistogram pdt(const LinkCondition& cond, const ChannelGeometry& geom,
                 const MonteCarloOptions& opts);

/// Raw per-sample transmittances in sample order (unrounded).
std::vector<double> transmittance_samples(const LinkCondition& cond,
                                          const ChannelGeometry& geom,
                                          const MonteCarloOptions& opts);

struct SurfaceCell {
  double altitude_m = 0.0;
  double zenith_rad = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
};

/// Mean transmittance over an altitude x zenith grid, one Monte Carlo run
/// per cell. All cells share the seed, so sample k uses identical random
/// draws in every cell (paired seeds).
std::vector<SurfaceCell> transmittance_surface(
    const LinkCondition& cond, const std::vector<double>& altitudes_m,
    const std::vector<double>& zeniths_rad, const ChannelGeometry& base_geom,
    const MonteCarloOptions& opts);

}  // namespace droneqc::elliptic
