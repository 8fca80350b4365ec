#include "droneqc/turbulence.hpp"

#include <cmath>

#include "doctest.h"
#include "droneqc/constants.hpp"
#include "droneqc/errors.hpp"

using namespace droneqc;
using namespace droneqc::turbulence;

TEST_CASE("SLC-D day profile branches") {
  const auto day = TurbulenceProfile::slcd_day();
  CHECK(cn2(day, 10.0) == doctest::Approx(1.70e-14).epsilon(1e-14));
  CHECK(cn2(day, 100.0) == doctest::Approx(3.13e-15).epsilon(1e-14));
  CHECK(cn2(day, 500.0) == doctest::Approx(1.30e-15).epsilon(1e-14));
  CHECK(cn2(day, 1000.0) == doctest::Approx(8.87e-7 / 1e9).epsilon(1e-14));
  CHECK(cn2(day, 10000.0) ==
        doctest::Approx(2.00e-16 / std::sqrt(10000.0)).epsilon(1e-14));
  // Boundaries belong to the lower-altitude branch.
  CHECK(cn2(day, 18.5) == doctest::Approx(1.70e-14).epsilon(1e-14));
  CHECK(cn2(day, 240.0) == doctest::Approx(3.13e-13 / 240.0).epsilon(1e-14));
  CHECK_THROWS_AS(cn2(day, 0.0), AltitudeOutOfRange);
  CHECK_THROWS_AS(cn2(day, 20000.5), AltitudeOutOfRange);
}

TEST_CASE("SLC-D night variant branches") {
  const auto night = TurbulenceProfile::slcd_night_variant();
  CHECK(cn2(night, 10.0) == 0.0);
  CHECK(cn2(night, 100.0) ==
        doctest::Approx(3.1255590829772202e-15).epsilon(1e-13));
  CHECK(cn2(night, 19.0) == 0.0);
  CHECK(cn2(night, 400.0) == doctest::Approx(1.30e-15).epsilon(1e-14));
  CHECK_THROWS_AS(cn2(night, -1.0), AltitudeOutOfRange);
}

TEST_CASE("SLC-D day profile is non-increasing within each branch") {
  const auto day = TurbulenceProfile::slcd_day();
  const double edges[] = {1e-6, 18.5, 240.0, 880.0, 7200.0, 20000.0};
  for (int b = 0; b < 5; ++b) {
    const double lo = edges[b] + 1e-3, hi = edges[b + 1];
    double prev = cn2(day, lo);
    for (int i = 1; i <= 50; ++i) {
      const double h = lo + (hi - lo) * i / 50.0;
      const double value = cn2(day, h);
      CHECK(std::isfinite(value));
      CHECK(value >= 0.0);
      CHECK(value <= prev * (1.0 + 1e-12));
      prev = value;
    }
  }
  // Branch edges themselves evaluate cleanly.
  for (double h : {18.5, 240.0, 880.0, 7200.0, 20000.0})
    CHECK(std::isfinite(cn2(day, h)));
}

TEST_CASE("HVB and Fried profiles") {
  const auto hvb = TurbulenceProfile::hvb(21.0);
  CHECK(cn2(hvb, 0.0 + 1.0) > 0.0);
  CHECK(cn2(hvb, 10.0) == doctest::Approx(0.00594 * std::pow(21.0 / 27.0, 2) *
                                              std::pow(1e-4, 10.0) *
                                              std::exp(-0.01) +
                                          2.7e-16 * std::exp(-10.0 / 1500.0) +
                                          1.7e-14 * std::exp(-0.1)));
  // Stronger wind means stronger upper-altitude turbulence.
  const auto hvb_fast = TurbulenceProfile::hvb(40.0);
  CHECK(cn2(hvb_fast, 8000.0) > cn2(hvb, 8000.0));

  const auto fried = TurbulenceProfile::fried(1e-13);
  CHECK(cn2(fried, 100.0) ==
        doctest::Approx(1e-13 * std::pow(100.0, -1.0 / 3.0) *
                        std::exp(-100.0 / 3200.0)));
  const auto fried_strong = TurbulenceProfile::fried(5e-13);
  CHECK(cn2(fried_strong, 100.0) > cn2(fried, 100.0));
}

TEST_CASE("Profile names") {
  CHECK(TurbulenceProfile::kind_from_name("slcd-day") ==
        TurbulenceProfile::Kind::kSlcdDay);
  CHECK(TurbulenceProfile::kind_from_name("slcd-night-variant") ==
        TurbulenceProfile::Kind::kSlcdNightVariant);
  CHECK(TurbulenceProfile::kind_from_name("hvb") ==
        TurbulenceProfile::Kind::kHvb);
  CHECK(TurbulenceProfile::kind_from_name("fried") ==
        TurbulenceProfile::Kind::kFried);
  CHECK_THROWS_AS(TurbulenceProfile::kind_from_name("hv57"),
                  InvalidInputError);
}

TEST_CASE("Kolmogorov spectrum") {
  CHECK(kolmogorov_spectrum(1.0, 1.0) == doctest::Approx(0.033));
  CHECK(kolmogorov_spectrum(0.0, 123.0) == 0.0);
  CHECK(kolmogorov_spectrum(1e-14, 100.0) ==
        doctest::Approx(0.033e-14 * std::pow(100.0, -11.0 / 3.0)));
  CHECK_THROWS_AS(kolmogorov_spectrum(1e-14, 0.0), NonPositiveWavenumber);
  CHECK_THROWS_AS(kolmogorov_spectrum(1e-14, -1.0), NonPositiveWavenumber);

  double prev = kolmogorov_spectrum(1e-14, 1.0);
  for (double k = 2.0; k < 1000.0; k *= 1.7) {
    const double value = kolmogorov_spectrum(1e-14, k);
    CHECK(value < prev);
    prev = value;
  }
}

TEST_CASE("Rytov variance") {
  CHECK(rytov_sq(0.0, 800e-9, 1000.0) == 0.0);
  CHECK(rytov_sq(1.28e-14, 800e-9, 1000.0) ==
        doctest::Approx(0.5512982442347384).epsilon(1e-13));
  // Scaling law in distance and linearity in cn2.
  const double base = rytov_sq(1e-14, 810e-9, 500.0);
  CHECK(rytov_sq(1e-14, 810e-9, 1000.0) ==
        doctest::Approx(base * std::pow(2.0, 11.0 / 6.0)).epsilon(1e-12));
  for (double c = 0.25; c <= 4.0; c *= 2.0)
    CHECK(rytov_sq(c * 1e-14, 810e-9, 500.0) ==
          doctest::Approx(c * base).epsilon(1e-12));
  CHECK_THROWS_AS(rytov_sq(1e-14, 810e-9, 0.0), ZeroDistance);
}

TEST_CASE("Fresnel number") {
  CHECK(fresnel(810e-9, 1.15e-2, 30.0) ==
        doctest::Approx(17.097762487129636).epsilon(1e-13));
  const double base = fresnel(810e-9, 1e-2, 100.0);
  CHECK(fresnel(810e-9, 2e-2, 100.0) == doctest::Approx(4.0 * base));
  CHECK(fresnel(810e-9, 1e-2, 200.0) == doctest::Approx(0.5 * base));
  for (double z = 10.0; z < 1e4; z *= 3.0)
    CHECK(fresnel(810e-9, 1e-2, z) * z == doctest::Approx(base * 100.0));
  CHECK_THROWS_AS(fresnel(810e-9, 1e-2, 0.0), ZeroDistance);
}
