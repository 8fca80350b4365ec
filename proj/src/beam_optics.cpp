#include "droneqc/beam_optics.hpp"

#include <cmath>

#include "droneqc/constants.hpp"
#include "droneqc/errors.hpp"

namespace droneqc::beam {

GaussianBeam GaussianBeam::collimated(double w0_m, double wavelength_m) {
  if (!(w0_m > 0.0) || !(wavelength_m > 0.0))
    throw InvalidInputError("beam waist and wavelength must be positive");
  return {w0_m, wavelength_m, std::nullopt};
}

GaussianBeam GaussianBeam::focused(double w0_m, double wavelength_m,
                                   double r0_m) {
  if (!(w0_m > 0.0) || !(wavelength_m > 0.0))
    throw InvalidInputError("beam waist and wavelength must be positive");
  if (r0_m == 0.0) throw InvalidInputError("radius of curvature must be nonzero");
  return {w0_m, wavelength_m, r0_m};
}

double GaussianBeam::rayleigh_length_m() const {
  return kPi * w0_m * w0_m / wavelength_m;
}

double spot_size(const GaussianBeam& beam, double z_m) {
  if (z_m < 0.0) throw InvalidInputError("propagation distance must be >= 0");
  const double zr = beam.rayleigh_length_m();
  const double diffraction = z_m / zr;
  double curvature = 0.0;
  if (beam.radius_of_curvature)
    curvature = 1.0 - z_m / *beam.radius_of_curvature;
  else
    curvature = 1.0;
  return beam.w0_m * std::hypot(curvature, diffraction);
}

double diffraction_transmissivity(double a_r_m, double w_d_m) {
  if (!(a_r_m > 0.0) || !(w_d_m > 0.0))
    throw InvalidInputError("aperture and spot size must be positive");
  return 1.0 - std::exp(-2.0 * a_r_m * a_r_m / (w_d_m * w_d_m));
}

double diffraction_transmissivity_far_field(double a_r_m, double w_d_m) {
  if (!(a_r_m > 0.0) || !(w_d_m > 0.0))
    throw InvalidInputError("aperture and spot size must be positive");
  return 2.0 * a_r_m * a_r_m / (w_d_m * w_d_m);
}

PlobBound plob_upper_bound(double a_r_m, double w_d_m) {
  const double ratio_sq = a_r_m * a_r_m / (w_d_m * w_d_m);
  if (!(a_r_m > 0.0) || !(w_d_m > 0.0))
    throw InvalidInputError("aperture and spot size must be positive");
  PlobBound bound;
  bound.bits_per_use = (2.0 / std::log(2.0)) * ratio_sq;
  bound.far_field_valid = 2.0 * ratio_sq < 0.1;
  return bound;
}

double divergence_loss_db(double a_t_area_m2, double a_r_area_m2,
                          double wavelength_m, double z_m) {
  if (!(a_t_area_m2 > 0.0) || !(a_r_area_m2 > 0.0) || !(wavelength_m > 0.0) ||
      !(z_m > 0.0))
    throw InvalidInputError("divergence loss inputs must be positive");
  const double lz = wavelength_m * z_m;
  return -10.0 * (2.0 * std::log10(4.0 / kPi) +
                  std::log10(a_t_area_m2 * a_r_area_m2 / (lz * lz)));
}

double overall_transmissivity(double eta_d, double eta_eff, double eta_atm) {
  for (double eta : {eta_d, eta_eff, eta_atm}) {
    if (!(eta >= 0.0 && eta <= 1.0))
      throw FactorOutOfRange("transmissivity factor outside [0, 1]");
  }
  return eta_d * eta_eff * eta_atm;
}

WanderBudget wander_budget(double var_pe_m2, double var_tb_m2,
                           double w_lt_sq_m2) {
  if (var_pe_m2 < 0.0 || var_tb_m2 < 0.0 || w_lt_sq_m2 < 0.0)
    throw NegativeVariance("wander variances must be non-negative");
  WanderBudget budget;
  budget.var_pointing_m2 = var_pe_m2;
  budget.var_turbulence_m2 = var_tb_m2;
  budget.var_total_m2 = var_pe_m2 + var_tb_m2;
  budget.long_term_waist_sq_m2 = w_lt_sq_m2;
  budget.ordering_ok = w_lt_sq_m2 >= var_tb_m2 && var_tb_m2 >= var_pe_m2;
  return budget;
}

namespace literature {

double beam_wander_variance(double cn2, double z_m, double w0_m,
                            double outer_scale_m) {
  if (cn2 < 0.0 || z_m < 0.0 || !(w0_m > 0.0))
    throw InvalidInputError("invalid beam wander inputs");
  double value = 2.42 * cn2 * z_m * z_m * z_m * std::pow(w0_m, -1.0 / 3.0);
  if (outer_scale_m > 0.0) {
    const double k0w = 2.0 * kPi / outer_scale_m * w0_m;
    const double k0w_sq = k0w * k0w;
    value *= 1.0 - std::pow(k0w_sq / (1.0 + k0w_sq), 1.0 / 6.0);
  }
  return value;
}

}  // namespace literature

}  // namespace droneqc::beam
