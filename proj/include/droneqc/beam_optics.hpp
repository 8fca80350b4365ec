#pragma once

#include <optional>

namespace droneqc::beam {

/// Quasi-monochromatic Gaussian beam leaving the transmitter. A collimated
/// beam is represented explicitly (empty curvature) rather than by a
/// sentinel radius.
struct GaussianBeam {
  double w0_m = 0.0;                           // initial spot size
  double wavelength_m = 0.0;                   // signal wavelength
  std::optional<double> radius_of_curvature;   // empty == collimated

  static GaussianBeam collimated(double w0_m, double wavelength_m);
  static GaussianBeam focused(double w0_m, double wavelength_m, double r0_m);

  /// Rayleigh length pi w0^2 / lambda.
  double rayleigh_length_m() const;
};

/// Diffraction-broadened spot size after propagating a distance z:
/// w0 sqrt((1 - z/R0)^2 + (z/z_R)^2); collimated beams drop the curvature
/// term.
double spot_size(const GaussianBeam& beam, double z_m);

/// Fraction of a centered Gaussian beam captured by a circular aperture of
/// radius a_r: 1 - e^{-2 a_r^2 / w_d^2}.
double diffraction_transmissivity(double a_r_m, double w_d_m);

/// Far-field approximation 2 a_r^2 / w_d^2, an over-bound of the exact
/// transmissivity, valid when the ratio is small.
double diffraction_transmissivity_far_field(double a_r_m, double w_d_m);

/// Secret-bit upper bound per channel use, (2 / ln 2) a_r^2 / w_d^2.
struct PlobBound {
  double bits_per_use = 0.0;
  bool far_field_valid = false;  // true when 2 a_r^2 / w_d^2 < 0.1
};
PlobBound plob_upper_bound(double a_r_m, double w_d_m);

/// Geometric (divergence) loss in dB for transmitter/receiver aperture
/// areas A_t, A_r (m^2): -10 [2 log10(4/pi) + log10(A_t A_r / (lambda z)^2)].
double divergence_loss_db(double a_t_area_m2, double a_r_area_m2,
                          double wavelength_m, double z_m);

/// Product of diffraction, receiver-efficiency and atmospheric
/// transmissivities. Each factor must lie in [0, 1].
double overall_transmissivity(double eta_d, double eta_eff, double eta_atm);

/// Beam wander bookkeeping: pointing-error and turbulence variances add.
struct WanderBudget {
  double var_pointing_m2 = 0.0;
  double var_turbulence_m2 = 0.0;
  double var_total_m2 = 0.0;
  double long_term_waist_sq_m2 = 0.0;
  /// True when w_lt^2 >= sigma_tb^2 >= sigma_pe^2, the ordering seen at all
  /// distances for this class of links.
  bool ordering_ok = false;
};
WanderBudget wander_budget(double var_pe_m2, double var_tb_m2,
                           double w_lt_sq_m2);

namespace literature {
/// Weak-turbulence beam-wander variance 2.42 C_n^2 z^3 w0^{-1/3}, with an
/// optional outer-scale reduction factor. Literature formula, provided for
/// wander-vs-distance plots; not part of the channel model proper.
double beam_wander_variance(double cn2, double z_m, double w0_m,
                            double outer_scale_m = 0.0);
}  // namespace literature

}  // namespace droneqc::beam
