#include "droneqc/link_budget.hpp"

#include <cmath>

#include "droneqc/errors.hpp"

namespace droneqc::budget {

void LinkBudgetSpec::validate() const {
  if (!(theta_div_rad > 0.0))
    throw NonPositiveGeometry("divergence half-angle must be positive");
  if (!(d_rx_m > 0.0))
    throw NonPositiveGeometry("receiver diameter must be positive");
  if (!(range_km > 0.0)) throw NonPositiveGeometry("range must be positive");
  if (alpha_fog_db_per_km < 0.0)
    throw InvalidInputError("fog attenuation must be non-negative");
}

double link_margin_db(const LinkBudgetSpec& spec) {
  spec.validate();
  const double range_m = spec.range_km * 1000.0;
  const double geometric_db =
      20.0 * std::log10(std::sqrt(2.0) * range_m * spec.theta_div_rad /
                        spec.d_rx_m);
  return spec.p_t_dbm - spec.a_tx_db - geometric_db - spec.a_rx_db -
         spec.alpha_fog_db_per_km * spec.range_km - spec.s_r_dbm;
}

MarginSweep margin_sweep(const LinkBudgetSpec& base,
                         const std::vector<double>& ranges_km,
                         const std::vector<double>& diameters_m) {
  if (ranges_km.empty() || diameters_m.empty())
    throw InvalidInputError("sweep grids must be non-empty");
  for (std::size_t i = 1; i < ranges_km.size(); ++i)
    if (!(ranges_km[i] > ranges_km[i - 1]))
      throw InvalidInputError("ranges must be strictly increasing");

  MarginSweep sweep;
  sweep.cells.reserve(ranges_km.size() * diameters_m.size());
  sweep.break_even_range_km.assign(diameters_m.size(), std::nullopt);
  sweep.non_operational.assign(diameters_m.size(), true);

  for (double range : ranges_km) {
    for (std::size_t d = 0; d < diameters_m.size(); ++d) {
      LinkBudgetSpec spec = base;
      spec.range_km = range;
      spec.d_rx_m = diameters_m[d];
      MarginCell cell;
      cell.range_km = range;
      cell.diameter_m = diameters_m[d];
      cell.margin_db = link_margin_db(spec);
      cell.operational = cell.margin_db > 0.0;
      if (cell.operational) sweep.non_operational[d] = false;
      sweep.cells.push_back(cell);
    }
  }

  // Break-even by linear interpolation between bracketing grid points.
  const std::size_t nd = diameters_m.size();
  for (std::size_t d = 0; d < nd; ++d) {
    for (std::size_t r = 1; r < ranges_km.size(); ++r) {
      const MarginCell& lo = sweep.cells[(r - 1) * nd + d];
      const MarginCell& hi = sweep.cells[r * nd + d];
      if (lo.margin_db > 0.0 && hi.margin_db <= 0.0) {
        const double t = lo.margin_db / (lo.margin_db - hi.margin_db);
        sweep.break_even_range_km[d] =
            lo.range_km + t * (hi.range_km - lo.range_km);
        break;
      }
    }
  }
  return sweep;
}

}  // namespace droneqc::budget
