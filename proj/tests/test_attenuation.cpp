#include "droneqc/attenuation.hpp"

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "droneqc/errors.hpp"

using namespace droneqc;
using namespace droneqc::attenuation;

TEST_CASE("Kim size distribution branches") {
  CHECK(size_distribution_p(ScatteringModel::kKim, 0.3) == 0.0);
  CHECK(size_distribution_p(ScatteringModel::kKim, 0.7) ==
        doctest::Approx(0.2));
  CHECK(size_distribution_p(ScatteringModel::kKim, 3.0) ==
        doctest::Approx(0.16 * 3.0 + 0.34));
  CHECK(size_distribution_p(ScatteringModel::kKim, 10.0) ==
        doctest::Approx(1.3));
  CHECK(size_distribution_p(ScatteringModel::kKim, 60.0) ==
        doctest::Approx(1.6));
  // Closed-below boundaries; the piecewise form is continuous at 0.5, 1, 6.
  CHECK(size_distribution_p(ScatteringModel::kKim, 0.5) == doctest::Approx(0.0));
  CHECK(size_distribution_p(ScatteringModel::kKim, 1.0) == doctest::Approx(0.5));
  CHECK(size_distribution_p(ScatteringModel::kKim, 6.0) == doctest::Approx(1.3));
  CHECK(size_distribution_p(ScatteringModel::kKim, 50.0) == doctest::Approx(1.6));
  CHECK_THROWS_AS(size_distribution_p(ScatteringModel::kKim, 0.0),
                  InvalidInputError);
}

TEST_CASE("Scattering model names") {
  CHECK(scattering_model_from_name("kim") == ScatteringModel::kKim);
  CHECK(scattering_model_from_name("kruse") == ScatteringModel::kKruse);
  CHECK_THROWS_AS(scattering_model_from_name("mie"), InvalidInputError);
}

TEST_CASE("Kruse size distribution and agreement with Kim above 6 km") {
  CHECK(size_distribution_p(ScatteringModel::kKruse, 2.0) ==
        doctest::Approx(0.7370538141885008).epsilon(1e-13));
  for (double v = 6.0; v < 120.0; v += 3.7) {
    CHECK(size_distribution_p(ScatteringModel::kKruse, v) ==
          size_distribution_p(ScatteringModel::kKim, v));
  }
}

TEST_CASE("Fog and rain attenuation coefficients") {
  CHECK(beta_fog(0.5, 850.0, 0.0) == doctest::Approx(7.82));
  CHECK(beta_fog(3.91, 550.0, 1.234) == doctest::Approx(1.0));
  CHECK(beta_fog(1.0, 1550.0, 0.5) ==
        doctest::Approx(2.329122082978768).epsilon(1e-13));
  // Thick fog (p = 0) is wavelength independent.
  CHECK(beta_fog(0.4, 850.0, 0.0) == beta_fog(0.4, 1550.0, 0.0));
  // Decreasing in visibility, decreasing in wavelength for p > 0.
  double prev = beta_fog(0.2, 850.0, 1.0);
  for (double v = 0.4; v < 20.0; v *= 1.6) {
    const double b = beta_fog(v, 850.0, 1.0);
    CHECK(b < prev);
    prev = b;
  }
  CHECK(beta_fog(1.0, 1550.0, 0.7) < beta_fog(1.0, 850.0, 0.7));

  CHECK(beta_rain(2.8) == doctest::Approx(1.0));
  CHECK(beta_rain(1.0) == doctest::Approx(2.8));
  CHECK(beta_rain(5.6) == doctest::Approx(0.5));
}

TEST_CASE("Path attenuation in dB") {
  CHECK(path_attenuation_db(1.0, 1.0) == doctest::Approx(4.3429).epsilon(1e-13));
  CHECK(path_attenuation_db(3.2, 0.0) == 0.0);
  CHECK(path_attenuation_db(7.82, 0.5) ==
        doctest::Approx(16.980739).epsilon(1e-13));
  CHECK(path_attenuation_db(2.0, 3.0) ==
        doctest::Approx(2.0 * 3.0 * path_attenuation_db(1.0, 1.0)));
}

TEST_CASE("Beer-Lambert slant transmissivity") {
  ChannelGeometry geom;
  geom.altitude_m = 10000.0;
  geom.zenith_rad = 0.0;

  CHECK(atm_transmissivity(ExtinctionProfile::constant(0.0), geom) == 1.0);
  CHECK(atm_transmissivity(ExtinctionProfile::constant(0.1), geom) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-10));

  // Zenith path length equals the altitude.
  geom.altitude_m = 2500.0;
  CHECK(atm_transmissivity(ExtinctionProfile::constant(1.0), geom) ==
        doctest::Approx(std::exp(-2.5)).epsilon(1e-10));

  // Slant path scales as sec(phi) for a constant profile.
  geom.zenith_rad = 60.0 * kPi / 180.0;
  CHECK(atm_transmissivity(ExtinctionProfile::constant(1.0), geom) ==
        doctest::Approx(std::exp(-5.0)).epsilon(1e-10));

  // Exponentially decaying profile against the closed-form column depth.
  geom.zenith_rad = 0.0;
  geom.altitude_m = 3000.0;
  const auto profile = ExtinctionProfile::exponential(2.0, 1000.0);
  const double depth = 2.0 * 1.0 * (1.0 - std::exp(-3.0));  // km^-1 * km
  CHECK(atm_transmissivity(profile, geom) ==
        doctest::Approx(std::exp(-depth)).epsilon(1e-8));

  geom.zenith_rad = 89.0 * kPi / 180.0;
  CHECK_THROWS_AS(atm_transmissivity(ExtinctionProfile::constant(1.0), geom),
                  InvalidGeometry);
}

TEST_CASE("Visibility report rows") {
  std::vector<VisibilityRecord> records = {{"sep-21", 9.0}};
  const auto rows =
      visibility_report(records, 850.0, ScatteringModel::kKim, 1.0);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].p == doctest::Approx(1.3));
  CHECK(rows[0].beta_fog_km_inv ==
        doctest::Approx(0.2466954507638559).epsilon(1e-13));
  CHECK(rows[0].attenuation_db ==
        doctest::Approx(1.0713736731223498).epsilon(1e-13));

  records.push_back({"oct-21", 9.0});
  const auto two = visibility_report(records, 850.0, ScatteringModel::kKim, 1.0);
  CHECK(two[0].p == two[1].p);
  CHECK(two[0].beta_fog_km_inv == two[1].beta_fog_km_inv);
  CHECK(two[0].attenuation_db == two[1].attenuation_db);

  records.push_back({"bad", -2.0});
  CHECK_THROWS_AS(
      visibility_report(records, 850.0, ScatteringModel::kKim, 1.0),
      MalformedRecord);
  CHECK_THROWS_AS(visibility_report({}, 850.0, ScatteringModel::kKim, 1.0),
                  EmptyInput);
}

TEST_CASE("Visibility CSV parsing") {
  std::istringstream good(
      "label,visibility_km\njan-2021,4.1\nfeb-2021,5.0\n");
  const auto records = read_visibility_csv(good);
  REQUIRE(records.size() == 2);
  CHECK(records[0].label == "jan-2021");
  CHECK(records[0].visibility_km == doctest::Approx(4.1));

  std::istringstream bad_header("month;vis\n");
  CHECK_THROWS_AS(read_visibility_csv(bad_header), MalformedRecord);

  std::istringstream bad_value("label,visibility_km\njan,abc\n");
  try {
    read_visibility_csv(bad_value);
    FAIL("expected MalformedRecord");
  } catch (const MalformedRecord& e) {
    CHECK(e.row == 1);
  }

  std::istringstream empty("");
  CHECK_THROWS_AS(read_visibility_csv(empty), EmptyInput);
}
