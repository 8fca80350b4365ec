#include "droneqc/elliptic_channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "droneqc/attenuation.hpp"
#include "droneqc/errors.hpp"
#include "droneqc/parallel.hpp"
#include "droneqc/quadrature.hpp"
#include "droneqc/turbulence.hpp"

namespace droneqc::elliptic {

namespace {

double day_cn2(double h) { return 3.13e-13 / h; }
double night_cn2(double h) { return 4.008e-13 / std::pow(h, 1.054); }

struct Chol2 {
  // Lower-triangular factor of a symmetric 2x2 matrix with equal diagonal.
  double l11 = 0.0, l21 = 0.0, l22 = 0.0;
};

Chol2 cholesky2(double diag, double off) {
  if (diag == 0.0 && off == 0.0) return {};
  if (!(diag > 0.0))
    throw NonPositiveDefiniteCovariance("semi-axis covariance diagonal <= 0");
  Chol2 c;
  c.l11 = std::sqrt(diag);
  c.l21 = off / c.l11;
  const double rest = diag - c.l21 * c.l21;
  if (rest < -1e-30 * diag)
    throw NonPositiveDefiniteCovariance(
        "semi-axis covariance is not positive semidefinite");
  c.l22 = std::sqrt(std::max(rest, 0.0));
  return c;
}

}  // namespace

void BeamParams::validate() const {
  if (!(w1_sq_m2 > 0.0) || !(w2_sq_m2 > 0.0))
    throw InvalidInputError("squared semi-axes must be positive");
  if (!std::isfinite(x0_m) || !std::isfinite(y0_m) ||
      !std::isfinite(theta_rad))
    throw InvalidInputError("beam parameters must be finite");
}

LinkCondition LinkCondition::make(Direction direction, bool daytime) {
  LinkCondition cond;
  cond.direction = direction;
  cond.daytime = daytime;
  cond.n0 = daytime ? link_defaults::kN0Day : link_defaults::kN0Night;
  return cond;
}

double LinkCondition::cn2(double altitude_m) const {
  if (!(altitude_m > 0.0)) throw InvalidGeometry("altitude must be positive");
  if (cn2_of_altitude) return cn2_of_altitude(altitude_m);
  return daytime ? day_cn2(altitude_m) : night_cn2(altitude_m);
}

BeamMoments beam_moments(const LinkCondition& cond,
                         const ChannelGeometry& geom) {
  geom.validate();
  if (cond.n0 < 0.0) throw InvalidInputError("n0 must be non-negative");
  const double z = geom.path_length_m();
  const double w_sq = geom.w_d * geom.w_d;
  const double rytov_sq =
      turbulence::rytov_sq(cond.cn2(geom.altitude_m), geom.wavelength_m, z);
  const double omega = turbulence::fresnel(geom.wavelength_m, geom.w_d, z);

  BeamMoments m;
  if (cond.direction == Direction::kUplink) {
    m.centroid_var_m2 =
        0.419 * rytov_sq * w_sq * std::pow(omega, -7.0 / 6.0);
    const double scatter = (kPi / 8.0) * z * cond.n0 * w_sq;
    m.mean_w_sq_m2 = w_sq / (omega * omega) *
                     (1.0 + scatter + 2.6 * rytov_sq * std::pow(omega, 5.0 / 6.0));
    const double base = w_sq * w_sq / std::pow(omega, 19.0 / 6.0) *
                        (1.0 + scatter) * rytov_sq;
    m.cov_w_sq_m4 << 1.2 * base, -0.8 * base, -0.8 * base, 1.2 * base;
  } else {
    const double alpha_z = cond.alpha_p * z;
    m.centroid_var_m2 = cond.pointing == PointingVariance::kAsPrinted
                            ? alpha_z
                            : alpha_z * alpha_z;
    const double scatter = (kPi / 24.0) * z * cond.n0 * w_sq;
    m.mean_w_sq_m2 = w_sq / (omega * omega) *
                     (1.0 + scatter + 1.6 * rytov_sq * std::pow(omega, 5.0 / 6.0));
    const double base = (3.0 / 8.0) * w_sq * w_sq /
                        std::pow(omega, 19.0 / 6.0) * (1.0 + scatter) *
                        rytov_sq;
    m.cov_w_sq_m4 << 1.2 * base, -0.8 * base, -0.8 * base, 1.2 * base;
  }
  return m;
}

BeamParams sample_beam_params(const BeamMoments& moments, SampleStream& rng,
                              SemiAxisFamily family) {
  if (moments.centroid_var_m2 < 0.0)
    throw InvalidInputError("centroid variance must be non-negative");
  if (!(moments.mean_w_sq_m2 > 0.0))
    throw InvalidInputError("mean squared semi-axis must be positive");

  BeamParams p;
  const double sigma = std::sqrt(moments.centroid_var_m2);
  const auto [g1, g2] = rng.normal_pair();
  p.x0_m = sigma * g1;
  p.y0_m = sigma * g2;

  const double m = moments.mean_w_sq_m2;
  const double var = moments.cov_w_sq_m4(0, 0);
  const double cov = moments.cov_w_sq_m4(0, 1);
  const auto [g3, g4] = rng.normal_pair();
  if (family == SemiAxisFamily::kLogNormal) {
    // Log-normal matched to (m, var, cov): exact positivity for W_i^2.
    const double rd = 1.0 + var / (m * m);
    const double ro = 1.0 + cov / (m * m);
    if (!(rd > 0.0) || !(ro > 0.0))
      throw NonPositiveDefiniteCovariance(
          "covariance too large for a log-normal match");
    const Chol2 chol = cholesky2(std::log(rd), std::log(ro));
    const double mu = std::log(m) - 0.5 * std::log(rd);
    p.w1_sq_m2 = std::exp(mu + chol.l11 * g3);
    p.w2_sq_m2 = std::exp(mu + chol.l21 * g3 + chol.l22 * g4);
  } else {
    const Chol2 chol = cholesky2(var, cov);
    double c1 = m + chol.l11 * g3;
    double c2 = m + chol.l21 * g3 + chol.l22 * g4;
    int tries = 0;
    while (!(c1 > 0.0) || !(c2 > 0.0)) {
      if (++tries > 1000)
        throw NumericError("truncated-normal semi-axis sampling stalled");
      const auto [h1, h2] = rng.normal_pair();
      c1 = m + chol.l11 * h1;
      c2 = m + chol.l21 * h1 + chol.l22 * h2;
    }
    p.w1_sq_m2 = c1;
    p.w2_sq_m2 = c2;
  }

  p.theta_rad = rng.uniform() * (kPi / 2.0);
  return p;
}

namespace {

struct EllipseForm {
  double a = 0.0, b = 0.0, c = 0.0;  // quadratic-form coefficients A, B, C
  double rho0 = 0.0;
  double w1 = 0.0, w2 = 0.0;
};

EllipseForm ellipse_form(const BeamParams& p) {
  EllipseForm f;
  f.w1 = std::sqrt(p.w1_sq_m2);
  f.w2 = std::sqrt(p.w2_sq_m2);
  f.rho0 = std::hypot(p.x0_m, p.y0_m);
  const double phi0 = f.rho0 > 0.0 ? std::atan2(p.y0_m, p.x0_m) : 0.0;
  const double rel = p.theta_rad - phi0;
  const double cs = std::cos(rel), sn = std::sin(rel);
  f.a = cs * cs / p.w1_sq_m2 + sn * sn / p.w2_sq_m2;
  f.b = sn * sn / p.w1_sq_m2 + cs * cs / p.w2_sq_m2;
  f.c = (1.0 / p.w1_sq_m2 - 1.0 / p.w2_sq_m2) * std::sin(2.0 * rel);
  return f;
}

// Tensor-product Gauss-Legendre over (rho, phi) on the aperture disk.
double aperture_polar_pass(const EllipseForm& f, double a_r, int n_radial,
                           int n_angular) {
  const GaussLegendreRule& rr = gauss_legendre(n_radial);
  const GaussLegendreRule& ra = gauss_legendre(n_angular);
  std::vector<double> cos_phi(n_angular), sin_phi(n_angular);
  for (int j = 0; j < n_angular; ++j) {
    const double phi = kPi * (ra.nodes[j] + 1.0);
    cos_phi[j] = std::cos(phi);
    sin_phi[j] = std::sin(phi);
  }
  double sum = 0.0;
  for (int i = 0; i < n_radial; ++i) {
    const double rho = 0.5 * a_r * (rr.nodes[i] + 1.0);
    double inner = 0.0;
    for (int j = 0; j < n_angular; ++j) {
      const double dx = rho * cos_phi[j] - f.rho0;
      const double dy = rho * sin_phi[j];
      const double expo =
          -2.0 * (f.a * dx * dx + f.b * dy * dy + f.c * dx * dy);
      if (expo > -746.0) inner += ra.weights[j] * std::exp(expo);
    }
    sum += rr.weights[i] * rho * inner;
  }
  // Jacobians of the affine maps [-1,1] -> [0,a_r] and [-1,1] -> [0,2pi].
  return sum * (0.5 * a_r) * kPi;
}

double aperture_polar(const BeamParams& p, double a_r, double chi_ext,
                      const QuadratureSpec& quad) {
  const EllipseForm f = ellipse_form(p);
  const double norm = 2.0 * chi_ext / (kPi * f.w1 * f.w2);
  int nr = quad.radial_nodes, na = quad.angular_nodes;
  double prev = norm * aperture_polar_pass(f, a_r, nr, na);
  if (!quad.adaptive) return std::clamp(prev, 0.0, chi_ext);
  const int max_radial = 2048, max_angular = 4096;
  while (true) {
    nr = std::min(max_radial, nr + (nr + 1) / 2);
    na = std::min(max_angular, na + (na + 1) / 2);
    const double cur = norm * aperture_polar_pass(f, a_r, nr, na);
    if (std::abs(cur - prev) <= quad.rel_tol * std::abs(cur) + quad.abs_tol)
      return std::clamp(cur, 0.0, chi_ext);
    if (nr == max_radial && na == max_angular)
      throw QuadratureFailure(
          "aperture-polar transmittance quadrature did not reach relative "
          "tolerance " +
          std::to_string(quad.rel_tol));
    prev = cur;
  }
}

// Beam-frame evaluation via Green's theorem. In the beam-normalized
// coordinates u = sqrt(2) diag(1/W1, 1/W2) R(-theta) (r - r0) the intensity
// is the standard Gaussian e^{-u^2-v^2} and the aperture maps to an ellipse
// E, so
//   eta / chi = (1/pi) oint_{dE} (sqrt(pi)/2) erf(u) e^{-v^2} dv.
// The boundary integrand is smooth and periodic for every beam placement,
// so the nested trapezoid rule converges geometrically; ray-based schemes
// lose accuracy at aperture-grazing angles.
class BeamBoundary {
 public:
  BeamBoundary(const BeamParams& p, double a_r) {
    const double cs = std::cos(p.theta_rad), sn = std::sin(p.theta_rad);
    const double s1 = std::sqrt(2.0 / p.w1_sq_m2);
    const double s2 = std::sqrt(2.0 / p.w2_sq_m2);
    pu_ = s1 * a_r * cs;
    qu_ = s1 * a_r * sn;
    cu_ = -s1 * (cs * p.x0_m + sn * p.y0_m);
    pv_ = -s2 * a_r * sn;
    qv_ = s2 * a_r * cs;
    cv_ = -s2 * (-sn * p.x0_m + cs * p.y0_m);
    centroid_inside_ = p.x0_m * p.x0_m + p.y0_m * p.y0_m < a_r * a_r;
  }

  // erf(u) e^{-v^2} v'(tau); also reports the squared distance of the
  // boundary point from the beam axis for the far-field guards.
  double term(double cos_tau, double sin_tau, double* dist_sq) const {
    const double u = pu_ * cos_tau + qu_ * sin_tau + cu_;
    const double v = pv_ * cos_tau + qv_ * sin_tau + cv_;
    const double dv = -pv_ * sin_tau + qv_ * cos_tau;
    *dist_sq = u * u + v * v;
    const double vv = v * v;
    if (vv > 746.0) return 0.0;
    return std::erf(u) * std::exp(-vv) * dv;
  }

  bool centroid_inside() const { return centroid_inside_; }

  // Bound on |d(u, v)/dtau|, used to bracket how far the boundary can dip
  // between scan nodes.
  double max_speed() const {
    return std::hypot(pu_, qu_) + std::hypot(pv_, qv_);
  }

 private:
  double pu_, qu_, cu_, pv_, qv_, cv_;
  bool centroid_inside_;
};

double beam_frame(const BeamParams& p, double a_r, double chi_ext,
                  const QuadratureSpec& quad) {
  const BeamBoundary boundary(p, a_r);
  const double scale = std::sqrt(kPi) / 2.0 / kPi;

  // Nested trapezoid rule over tau in [0, 2pi); the extended accumulator
  // keeps cancellation noise below the convergence floor.
  int n = std::max(16, quad.angular_nodes);
  long double total = 0.0L;
  double min_dist_sq = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const double tau = 2.0 * kPi * k / n;
    double dist_sq = 0.0;
    total += boundary.term(std::cos(tau), std::sin(tau), &dist_sq);
    min_dist_sq = std::min(min_dist_sq, dist_sq);
  }
  // The whole aperture boundary sits in the far Gaussian tail: the beam is
  // either captured whole or missed whole. The node minimum is padded by
  // the largest possible dip between scan nodes.
  const double guard = 15.0 + boundary.max_speed() * kPi / n;
  if (min_dist_sq >= guard * guard)
    return boundary.centroid_inside() ? chi_ext : 0.0;

  double prev = static_cast<double>(total) * (2.0 * kPi / n) * scale;
  if (!quad.adaptive)
    return std::clamp(chi_ext * prev, 0.0, chi_ext);
  const int max_nodes = 1 << 18;
  while (n < max_nodes) {
    for (int k = 0; k < n; ++k) {
      const double tau = 2.0 * kPi * (k + 0.5) / n;
      double dist_sq = 0.0;
      total += boundary.term(std::cos(tau), std::sin(tau), &dist_sq);
    }
    n *= 2;
    const double cur = static_cast<double>(total) * (2.0 * kPi / n) * scale;
    if (std::abs(cur - prev) <= quad.rel_tol * std::abs(cur) + quad.abs_tol)
      return std::clamp(chi_ext * cur, 0.0, chi_ext);
    prev = cur;
  }
  throw QuadratureFailure(
      "beam-frame transmittance quadrature did not reach relative tolerance " +
      std::to_string(quad.rel_tol));
}

}  // namespace

double elliptic_transmittance(const BeamParams& params, double a_r,
                              double chi_ext, const QuadratureSpec& quad) {
  params.validate();
  if (!(a_r > 0.0)) throw InvalidInputError("aperture radius must be positive");
  if (!(chi_ext > 0.0 && chi_ext <= 1.0))
    throw InvalidInputError("chi_ext must lie in (0, 1]");
  if (quad.method == QuadratureSpec::Method::kBeamFrame)
    return beam_frame(params, a_r, chi_ext, quad);
  return aperture_polar(params, a_r, chi_ext, quad);
}

double default_chi_ext(double beta, const ChannelGeometry& geom) {
  if (beta < 0.0) throw InvalidInputError("beta must be non-negative");
  if (beta == 0.0) return 1.0;
  // Constant extinction factor beta / h over the column, so the zenith
  // optical depth is beta and the slant depth is beta sec(phi).
  const auto profile =
      attenuation::ExtinctionProfile::constant(1000.0 * beta / geom.altitude_m);
  return attenuation::atm_transmissivity(profile, geom);
}

int PdtHistogram::mode_bin() const {
  int best = 0;
  for (int i = 1; i < static_cast<int>(probabilities.size()); ++i)
    if (probabilities[i] > probabilities[best]) best = i;
  return best;
}

double PdtHistogram::bin_center(int bin) const {
  return 0.5 * (bin_edges[bin] + bin_edges[bin + 1]);
}

std::vector<double> transmittance_samples(const LinkCondition& cond,
                                          const ChannelGeometry& geom,
                                          const MonteCarloOptions& opts) {
  if (opts.n_samples < 1) throw InvalidInputError("n_samples must be >= 1");
  geom.validate();
  const double chi_ext =
      geom.chi_ext ? *geom.chi_ext : default_chi_ext(cond.beta, geom);
  const BeamMoments moments = beam_moments(cond, geom);
  std::vector<double> eta(static_cast<std::size_t>(opts.n_samples));
  parallel_for(opts.n_samples, opts.threads, [&](std::int64_t k) {
    SampleStream stream(opts.seed, static_cast<std::uint64_t>(k));
    const BeamParams p =
        sample_beam_params(moments, stream, cond.semi_axis_family);
    eta[static_cast<std::size_t>(k)] =
        elliptic_transmittance(p, geom.a_r, chi_ext, opts.quad);
  });
  return eta;
}

PdtHistogram pdt(const LinkCondition& cond, const ChannelGeometry& geom,
                 const MonteCarloOptions& opts) {
  if (opts.n_samples < 1000)
    throw InvalidInputError("pdt requires at least 1000 samples");
  if (opts.bins < 1) throw InvalidInputError("pdt requires at least one bin");
  const std::vector<double> eta = transmittance_samples(cond, geom, opts);

  PdtHistogram hist;
  hist.n_samples = opts.n_samples;
  hist.seed = opts.seed;
  hist.bin_edges.resize(opts.bins + 1);
  for (int i = 0; i <= opts.bins; ++i)
    hist.bin_edges[i] = static_cast<double>(i) / opts.bins;
  std::vector<std::int64_t> counts(opts.bins, 0);
  for (double value : eta) {
    // Five-decimal rounding applies to the binned values only.
    const double rounded = std::round(value * 1e5) / 1e5;
    int bin = static_cast<int>(rounded * opts.bins);
    bin = std::clamp(bin, 0, opts.bins - 1);
    ++counts[bin];
  }
  hist.probabilities.resize(opts.bins);
  for (int i = 0; i < opts.bins; ++i)
    hist.probabilities[i] =
        static_cast<double>(counts[i]) / static_cast<double>(opts.n_samples);
  return hist;
}

std::vector<SurfaceCell> transmittance_surface(
    const LinkCondition& cond, const std::vector<double>& altitudes_m,
    const std::vector<double>& zeniths_rad, const ChannelGeometry& base_geom,
    const MonteCarloOptions& opts) {
  if (altitudes_m.empty() || zeniths_rad.empty())
    throw InvalidInputError("surface grids must be non-empty");
  if (opts.n_samples < 1) throw InvalidInputError("n_samples must be >= 1");
  std::vector<SurfaceCell> cells;
  cells.reserve(altitudes_m.size() * zeniths_rad.size());
  for (double altitude : altitudes_m) {
    for (double zenith : zeniths_rad) {
      ChannelGeometry g = base_geom;
      g.altitude_m = altitude;
      g.zenith_rad = zenith;
      const std::vector<double> eta = transmittance_samples(cond, g, opts);
      double sum = 0.0;
      for (double v : eta) sum += v;
      const double mean = sum / static_cast<double>(eta.size());
      double ss = 0.0;
      for (double v : eta) ss += (v - mean) * (v - mean);
      SurfaceCell cell;
      cell.altitude_m = altitude;
      cell.zenith_rad = zenith;
      cell.mean = mean;
      cell.std_error =
          eta.size() > 1
              ? std::sqrt(ss / (static_cast<double>(eta.size()) - 1.0) /
                          static_cast<double>(eta.size()))
              : 0.0;
      cells.push_back(cell);
    }
  }
  return cells;
}

}  // namespace droneqc::elliptic
