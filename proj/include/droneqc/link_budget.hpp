#pragma once

#include <optional>
#include <vector>

namespace droneqc::budget {

/// Inputs of the free-space optical link margin calculation.
struct LinkBudgetSpec {
  double p_t_dbm = 0.0;        // transmitted power
  double a_tx_db = 0.0;        // transmitter coupling loss
  double a_rx_db = 0.0;        // receiver coupling loss
  double theta_div_rad = 0.0;  // half-angle divergence
  double d_rx_m = 0.0;         // receiver aperture diameter
  double alpha_fog_db_per_km = 0.0;
  double s_r_dbm = 0.0;        // receiver sensitivity
  double range_km = 0.0;

  void validate() const;
};

/// Link margin in dB:
///   P_t - A_tx - 20 log10(sqrt(2) L theta_div / D) - A_rx - alpha_fog L - S_r
/// with L in meters inside the geometric term and in km for the fog term.
double link_margin_db(const LinkBudgetSpec& spec);

struct MarginCell {
  double range_km = 0.0;
  double diameter_m = 0.0;
  double margin_db = 0.0;
  bool operational = false;  // margin > 0
};

struct MarginSweep {
  std::vector<MarginCell> cells;  // ranges-major, diameters-minor
  /// Break-even range per diameter (linear interpolation between the grid
  /// points bracketing margin = 0); empty when the margin never crosses
  /// zero on the grid.
  std::vector<std::optional<double>> break_even_range_km;
  /// True per diameter when every grid point is negative.
  std::vector<bool> non_operational;
};

/// Margin over a (range x diameter) grid, with per-diameter break-even
/// ranges. Ranges must be strictly increasing.
MarginSweep margin_sweep(const LinkBudgetSpec& base,
                         const std::vector<double>& ranges_km,
                         const std::vector<double>& diameters_m);

}  // namespace droneqc::budget
