// Ambient background checks: blackbody and mirror-distorted vacuum.
//
// Frozen reference values (independent evaluation of the closed forms with
// k_B/hbar c from CODATA and the 1.6735e7 volt anchor):
//   thermal 2600 K: 1.0935724331790588 um^-4   (T_nat = 1.1354284367578609)
//   thermal  300 K: 1.9383811641640649e-4 um^-4
//   perfect plate, z = 1 um: 1.8997721932938333e-2 um^-4
//   plasma regime, z = 0.1 um, lambda_p = 0.2 um: 441.9417382415921 um^-4

#include <doctest.h>

#include <cmath>

#include <fluctoptics/ambient.hpp>
#include <fluctoptics/errors.hpp>
#include <fluctoptics/qstates.hpp>
#include <fluctoptics/units.hpp>

using namespace fluctoptics;
using namespace fluctoptics::ambient;
using fluctoptics::units::Quantity;
using fluctoptics::units::Unit;

namespace {

Quantity kelvin(double t) { return {t, Unit::kelvin()}; }

}  // namespace

TEST_CASE("blackbody mean squared field at reference temperatures") {
  CHECK(e2_thermal(kelvin(2600.0)).value_in(Unit::microns(-4)) ==
        doctest::Approx(1.0935724331790588).epsilon(1e-14));
  CHECK(e2_thermal(kelvin(300.0)).value ==
        doctest::Approx(1.9383811641640649e-4).epsilon(1e-14));
  CHECK(e2_thermal(kelvin(0.0)).value == 0.0);
}

TEST_CASE("blackbody value scales exactly as T^4") {
  // Doubling T scales only binary exponents, so the ratio is exact.
  CHECK(e2_thermal(kelvin(2600.0)).value == 16.0 * e2_thermal(kelvin(1300.0)).value);
  CHECK(e2_thermal(kelvin(600.0)).value == 16.0 * e2_thermal(kelvin(300.0)).value);
  CHECK(e2_thermal(kelvin(900.0)).value ==
        doctest::Approx(81.0 * e2_thermal(kelvin(300.0)).value).epsilon(1e-15));
}

TEST_CASE("blackbody input validation") {
  CHECK_THROWS_AS((void)e2_thermal(kelvin(-1.0)), DomainError);
  CHECK_THROWS_AS((void)e2_thermal(Quantity{300.0, Unit::microns(-1)}), UnitError);
}

TEST_CASE("perfect plate distortion at z = 1 um") {
  CasimirResult r = e2_casimir(1.0);
  CHECK(r.regime == CasimirRegime::perfect_plate);
  CHECK(r.e2_total.value_in(Unit::microns(-4)) ==
        doctest::Approx(1.8997721932938333e-2).epsilon(1e-14));
  CHECK_FALSE(r.e2_other_regime.has_value());
}

TEST_CASE("plate field and magnetic counterpart satisfy the exact relations") {
  for (double z : {0.3, 1.0, 2.7}) {
    CasimirResult r = e2_casimir(z);
    // B^2 = -E^2 and the isotropic thirds are algebraic, so bit-exact.
    CHECK(r.b2_total.value == -r.e2_total.value);
    CHECK(r.e2_per_axis.value == r.e2_total.value / 3.0);
  }
}

TEST_CASE("perfect plate falls off as z^-4") {
  for (double z : {0.5, 1.0, 5.0}) {
    const double slope = std::log(e2_casimir(2.0 * z).e2_total.value /
                                  e2_casimir(z).e2_total.value) /
                         std::log(2.0);
    CHECK(slope == doctest::Approx(-4.0).epsilon(1e-6));
  }
}

TEST_CASE("plasma regime below the plasma wavelength falls off as z^-3") {
  const double lambda_p = 100.0;  // keep both probe points deep in the regime
  CasimirResult a = e2_casimir(1.0, lambda_p);
  CasimirResult b = e2_casimir(2.0, lambda_p);
  CHECK(a.regime == CasimirRegime::plasma);
  CHECK(b.regime == CasimirRegime::plasma);
  const double slope = std::log(b.e2_total.value / a.e2_total.value) / std::log(2.0);
  CHECK(slope == doctest::Approx(-3.0).epsilon(1e-6));

  CasimirResult ref = e2_casimir(0.1, 0.2);
  CHECK(ref.regime == CasimirRegime::plasma);
  CHECK(ref.e2_total.value == doctest::Approx(441.9417382415921).epsilon(1e-14));
}

TEST_CASE("regime switch surfaces the other model near the crossover") {
  const double lambda_p = 0.2;
  // Inside the plasma regime and within a factor 2 of lambda_p.
  CasimirResult near_in = e2_casimir(0.15, lambda_p);
  CHECK(near_in.regime == CasimirRegime::plasma);
  REQUIRE(near_in.e2_other_regime.has_value());
  CHECK(*near_in.e2_other_regime ==
        doctest::Approx(3.0 / (16.0 * M_PI * M_PI * std::pow(0.15, 4.0)))
            .epsilon(1e-12));
  // Outside the plate but still near the crossover.
  CasimirResult near_out = e2_casimir(0.3, lambda_p);
  CHECK(near_out.regime == CasimirRegime::perfect_plate);
  CHECK(near_out.e2_other_regime.has_value());
  // Far from the crossover on either side: not populated.
  CHECK_FALSE(e2_casimir(3.2, lambda_p).e2_other_regime.has_value());
  CHECK_FALSE(e2_casimir(0.05, lambda_p).e2_other_regime.has_value());
  // Without a plasma wavelength the plate model applies at all z.
  CHECK(e2_casimir(0.05).regime == CasimirRegime::perfect_plate);
}

TEST_CASE("plate input validation") {
  CHECK_THROWS_AS((void)e2_casimir(0.0), DomainError);
  CHECK_THROWS_AS((void)e2_casimir(-1.0), DomainError);
  CHECK_THROWS_AS((void)e2_casimir(1.0, 0.0), DomainError);
  CHECK_THROWS_AS((void)e2_casimir(1.0, -0.2), DomainError);
}

TEST_CASE("room-temperature background against the squeezed-beam peak") {
  // The 300 K background is a few percent of the beam's cycle peak taken at
  // unit bandwidth-spread product, not orders of magnitude below it: room
  // temperature is a real competitor for this carrier and must be managed
  // by bandwidth, not ignored.
  using namespace fluctoptics::qstates;
  SqueezedBeam b = SqueezedBeam::in_medium(10.6, 3.5, 1.5, 0.0, 0.01, 0.01);
  const double peak_unit_bw =
      b.carrier_prefactor() * std::sinh(1.5) * (std::sinh(1.5) + std::cosh(1.5));
  CHECK(peak_unit_bw == doctest::Approx(8.525946789295247e-3).epsilon(1e-12));
  const double ratio = e2_thermal(kelvin(300.0)).value / peak_unit_bw;
  CHECK(ratio == doctest::Approx(0.022735083997917974).epsilon(1e-12));
  CHECK(ratio < 0.05);
}
