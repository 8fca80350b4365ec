#include "droneqc/link_budget.hpp"

#include <cmath>

#include "doctest.h"
#include "droneqc/errors.hpp"

using namespace droneqc;
using namespace droneqc::budget;

namespace {

LinkBudgetSpec example_spec() {
  LinkBudgetSpec s;
  s.p_t_dbm = 10.0;
  s.a_tx_db = 1.0;
  s.a_rx_db = 1.0;
  s.theta_div_rad = 1e-3;
  s.d_rx_m = 0.1;
  s.alpha_fog_db_per_km = 1.0;
  s.s_r_dbm = -40.0;
  s.range_km = 1.0;
  return s;
}

}  // namespace

TEST_CASE("Link margin value and structure") {
  CHECK(link_margin_db(example_spec()) ==
        doctest::Approx(23.989700043360187).epsilon(1e-13));

  // The geometric term vanishes when sqrt(2) L theta = D.
  LinkBudgetSpec flat = example_spec();
  flat.theta_div_rad = 1e-4;
  flat.d_rx_m = std::sqrt(2.0) * 1000.0 * 1e-4;
  CHECK(link_margin_db(flat) ==
        doctest::Approx(10.0 - 1.0 - 1.0 - 1.0 + 40.0).epsilon(1e-12));

  // Doubling the receiver diameter buys 20 log10(2) dB.
  LinkBudgetSpec big = example_spec();
  big.d_rx_m *= 2.0;
  CHECK(link_margin_db(big) - link_margin_db(example_spec()) ==
        doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-12));

  // Linear coefficients of the dB terms.
  LinkBudgetSpec s = example_spec();
  s.p_t_dbm += 2.5;
  CHECK(link_margin_db(s) == doctest::Approx(link_margin_db(example_spec()) + 2.5));
  s = example_spec();
  s.a_tx_db += 1.5;
  CHECK(link_margin_db(s) == doctest::Approx(link_margin_db(example_spec()) - 1.5));
  s = example_spec();
  s.a_rx_db += 0.5;
  CHECK(link_margin_db(s) == doctest::Approx(link_margin_db(example_spec()) - 0.5));
  s = example_spec();
  s.s_r_dbm -= 3.0;
  CHECK(link_margin_db(s) == doctest::Approx(link_margin_db(example_spec()) + 3.0));

  // Strictly decreasing in range.
  double prev = link_margin_db(example_spec());
  for (double range = 1.5; range < 40.0; range *= 1.4) {
    s = example_spec();
    s.range_km = range;
    const double m = link_margin_db(s);
    CHECK(m < prev);
    prev = m;
  }

  s = example_spec();
  s.d_rx_m = 0.0;
  CHECK_THROWS_AS(link_margin_db(s), NonPositiveGeometry);
  s = example_spec();
  s.range_km = -1.0;
  CHECK_THROWS_AS(link_margin_db(s), NonPositiveGeometry);
}

TEST_CASE("Margin sweep") {
  const LinkBudgetSpec base = example_spec();

  // A single cell reproduces link_margin_db.
  const auto one = margin_sweep(base, {2.0}, {0.1});
  REQUIRE(one.cells.size() == 1);
  LinkBudgetSpec s = base;
  s.range_km = 2.0;
  CHECK(one.cells[0].margin_db == doctest::Approx(link_margin_db(s)));

  std::vector<double> ranges;
  for (int i = 1; i <= 30; ++i) ranges.push_back(2.0 * i);
  const std::vector<double> diameters = {0.05, 0.1, 0.2};
  const auto sweep = margin_sweep(base, ranges, diameters);
  REQUIRE(sweep.cells.size() == ranges.size() * diameters.size());

  // Margins decrease along range and increase along diameter.
  for (std::size_t r = 1; r < ranges.size(); ++r)
    for (std::size_t d = 0; d < diameters.size(); ++d)
      CHECK(sweep.cells[r * diameters.size() + d].margin_db <
            sweep.cells[(r - 1) * diameters.size() + d].margin_db);
  for (std::size_t r = 0; r < ranges.size(); ++r)
    for (std::size_t d = 1; d < diameters.size(); ++d)
      CHECK(sweep.cells[r * diameters.size() + d].margin_db >
            sweep.cells[r * diameters.size() + d - 1].margin_db);

  // The interpolated break-even range brackets the sign change and the
  // margin interpolates to zero there.
  for (std::size_t d = 0; d < diameters.size(); ++d) {
    REQUIRE(sweep.break_even_range_km[d].has_value());
    const double be = *sweep.break_even_range_km[d];
    LinkBudgetSpec at = base;
    at.d_rx_m = diameters[d];
    at.range_km = be;
    // The alpha_fog term is linear and the log term slowly varying, so the
    // linear interpolation lands close to the true root.
    CHECK(std::abs(link_margin_db(at)) < 0.2);
    CHECK_FALSE(sweep.non_operational[d]);
  }

  // A sweep that never goes positive is flagged non-operational.
  LinkBudgetSpec weak = base;
  weak.p_t_dbm = -80.0;
  const auto dead = margin_sweep(weak, {1.0, 2.0, 3.0}, {0.1});
  CHECK(dead.non_operational[0]);
  CHECK_FALSE(dead.break_even_range_km[0].has_value());
  for (const auto& cell : dead.cells) CHECK_FALSE(cell.operational);

  CHECK_THROWS_AS(margin_sweep(base, {}, {0.1}), InvalidInputError);
  CHECK_THROWS_AS(margin_sweep(base, {2.0, 1.0}, {0.1}), InvalidInputError);
}
