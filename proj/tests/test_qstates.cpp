// Squeezed/coherent field statistics checks.
//
// Reference numbers below were derived independently (exact closed forms
// evaluated in extended precision) and frozen:
//
//   carrier at 10.6 um in n = 3.5:  k = 0.5927533308659987 um^-1
//                                   Omega = 0.1693580945331425 um^-1
//   Omega k^3/4pi^2                 8.93445840545024e-4 um^-4
//   q = 1.5: sinh = 2.1292794550948173, cosh = 2.352409615243247
//            sinh(sinh+cosh) = 9.542768461593832
//            sinh(sinh-cosh) = -0.47510646581606814 (= -sinh e^-q)
//            sinh^2 = 4.533830997888882
//   subvacuum duty arccos(tanh 1.5)/pi = 0.13975967923234073
//
// The cycle over which the beam statistics repeat is pi/Omega = 18.55 um
// exactly for the carrier above (lambda n / 2 = 10.6 * 3.5 / 2).

#include <doctest.h>

#include <array>
#include <cmath>
#include <functional>

#include <fluctoptics/errors.hpp>
#include <fluctoptics/qstates.hpp>
#include <fluctoptics/units.hpp>

using namespace fluctoptics;
using namespace fluctoptics::qstates;
using fluctoptics::units::Unit;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSinh15 = 2.1292794550948173;
constexpr double kCosh15 = 2.352409615243247;
constexpr double kStatic = 8.934458405450241e-08;  // prefactor * 1e-4

SqueezedBeam reference_beam() {
  return SqueezedBeam::in_medium(10.6, 3.5, 1.5, 0.0, 0.01, 0.01);
}

// Composite Simpson rule; integrands here are smooth trig polynomials, so
// 4096 panels leave errors far below the 1e-9 gates.
double simpson(const std::function<double(double)>& f, double a, double b,
               int panels = 4096) {
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) {
    sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("carrier construction from wavelength and index") {
  SqueezedBeam b = reference_beam();
  CHECK(b.k == doctest::Approx(0.5927533308659987).epsilon(1e-15));
  CHECK(b.omega == doctest::Approx(0.1693580945331425).epsilon(1e-15));
  CHECK(b.medium_index == 3.5);
  CHECK(b.carrier_prefactor() == doctest::Approx(8.93445840545024e-4).epsilon(1e-15));
  CHECK(b.static_prefactor() == doctest::Approx(kStatic).epsilon(1e-15));
  CHECK_THROWS_AS((void)SqueezedBeam::in_medium(0.0, 3.5, 1.5, 0.0, 0.01, 0.01),
                  DomainError);
  CHECK_THROWS_AS((void)SqueezedBeam::in_medium(10.6, 0.9, 1.5, 0.0, 0.01, 0.01),
                  DomainError);
}

TEST_CASE("beam precondition checks") {
  SqueezedBeam b = reference_beam();
  CHECK_NOTHROW(b.check());
  SqueezedBeam bad = b;
  bad.delta_theta = 2.0 * kPi;
  CHECK_THROWS_AS(bad.check(), DomainError);
  bad.delta_theta = 0.0;
  CHECK_THROWS_AS(bad.check(), DomainError);
  bad.delta_theta = kPi;  // boundary included
  CHECK_NOTHROW(bad.check());
  bad = b;
  bad.delta_k_over_k = 1.0;
  CHECK_THROWS_AS(bad.check(), DomainError);
  bad = b;
  bad.q = -0.1;
  CHECK_THROWS_AS(bad.check(), DomainError);
  bad = b;
  bad.omega = 0.0;
  CHECK_THROWS_AS(bad.check(), DomainError);
}

TEST_CASE("beam modelling warnings") {
  CHECK(reference_beam().warnings().empty());
  SqueezedBeam wide = reference_beam();
  wide.delta_k_over_k = 0.15;
  CHECK(wide.warnings().size() == 1);
  wide.delta_theta = 0.5;
  CHECK(wide.warnings().size() == 2);
  SqueezedBeam edge = reference_beam();
  edge.delta_theta = 0.3;  // warning is strictly above 0.3
  CHECK(edge.warnings().empty());
}

TEST_CASE("squeezed beam extremes at the stationary phases") {
  SqueezedBeam b = reference_beam();
  // Phase 0 at t = y = 0 (eta = 0): the cycle maximum sinh(sinh+cosh).
  CHECK(e2_squeezed_beam(b, 0.0, 0.0).value_in(Unit::microns(-4)) ==
        doctest::Approx(8.525946789295248e-07).epsilon(1e-12));
  // Phase pi at t = pi/(2 Omega) = 9.275: the subvacuum minimum
  // -static_prefactor * sinh e^-q.
  CHECK(e2_squeezed_beam(b, 9.275, 0.0).value ==
        doctest::Approx(-4.2448189569941274e-08).epsilon(1e-9));
  // Quadrature phase: the plateau static_prefactor * sinh^2.
  CHECK(e2_squeezed_beam(b, 9.275 / 2.0, 0.0).value ==
        doctest::Approx(kStatic * kSinh15 * kSinh15).epsilon(1e-9));
  // Sampled sweep stays inside the analytic envelope.
  const double lo = kStatic * kSinh15 * (kSinh15 - kCosh15) * (1.0 + 1e-12);
  const double hi = kStatic * kSinh15 * (kSinh15 + kCosh15) * (1.0 + 1e-12);
  for (int i = 0; i <= 1000; ++i) {
    const double v = e2_squeezed_beam(b, 18.55 * i / 1000.0, 0.0).value;
    CHECK(v >= lo);
    CHECK(v <= hi);
  }
}

TEST_CASE("squeezed beam vanishes identically at q = 0") {
  SqueezedBeam b = reference_beam();
  b.q = 0.0;
  for (double t : {0.0, 1.0, 9.275, 17.3}) {
    CHECK(e2_squeezed_beam(b, t, 0.4).value == 0.0);
  }
}

TEST_CASE("beam value scales exactly with bandwidth and spread") {
  SqueezedBeam a = reference_beam();
  SqueezedBeam b3 = a;
  b3.delta_k_over_k = 0.03;
  SqueezedBeam c2 = a;
  c2.delta_theta = 0.02;
  for (double t : {0.0, 2.3, 9.275, 14.1}) {
    const double base = e2_squeezed_beam(a, t, 0.7).value;
    CHECK(e2_squeezed_beam(b3, t, 0.7).value ==
          doctest::Approx(3.0 * base).epsilon(1e-12));
    CHECK(e2_squeezed_beam(c2, t, 0.7).value ==
          doctest::Approx(2.0 * base).epsilon(1e-12));
  }
}

TEST_CASE("coherent state is non-negative with nodes at quarter cycle") {
  CoherentMode c{1.3, 0.6, 2.0, 2.0};
  CHECK(e2_coherent(c, 0.0, 0.0).value == doctest::Approx(2.4336).epsilon(1e-15));
  // Node where k y - omega t = pi/2.
  const double t_node = (kPi / 2.0) / c.omega;
  CHECK(std::abs(e2_coherent(c, -t_node, 0.0).value) < 1e-30);
  for (int i = 0; i <= 200; ++i) {
    CHECK(e2_coherent(c, 0.05 * i, 0.3).value >= 0.0);
  }
  CoherentMode vac{0.0, 0.6, 2.0, 2.0};
  CHECK(e2_coherent(vac, 0.7, 0.3).value == 0.0);
}

TEST_CASE("mean photon numbers") {
  CHECK(mean_photon_number_coherent(2.5) == 6.25);
  CHECK(mean_photon_number_coherent(0.0) == 0.0);
  CHECK(mean_photon_number_squeezed(1.5) ==
        doctest::Approx(4.533830997888882).epsilon(1e-15));
  CHECK(mean_photon_number_squeezed(1e-3) == doctest::Approx(1e-6).epsilon(1e-5));
  CHECK(mean_photon_number_squeezed(0.0) == 0.0);
  CHECK_THROWS_AS((void)mean_photon_number_squeezed(-1.0), DomainError);
}

TEST_CASE("cycle averages equal 2 E0^2 <n> for both families") {
  CHECK(time_averaged_e2_coherent(1.0, 1.0).value == 2.0);
  CHECK(time_averaged_e2_squeezed(1.5, 1.0).value ==
        doctest::Approx(9.067661995777764).epsilon(1e-15));
  for (double z : {0.3, 1.7}) {
    for (double e0 : {0.5, 2.0}) {
      CHECK(time_averaged_e2_coherent(z, e0).value ==
            doctest::Approx(2.0 * e0 * e0 * mean_photon_number_coherent(z))
                .epsilon(1e-15));
    }
  }
  for (double q : {0.4, 1.5}) {
    CHECK(time_averaged_e2_squeezed(q, 0.7).value ==
          doctest::Approx(2.0 * 0.49 * mean_photon_number_squeezed(q))
              .epsilon(1e-14));
  }
}

TEST_CASE("coherent quadrature over one period matches the analytic average") {
  CoherentMode c{1.3, 0.6, 2.0, 2.0};
  const double period = 2.0 * kPi / c.omega;
  const double quad =
      simpson([&](double t) { return e2_coherent(c, t, 0.25).value; }, 0.0, period) /
      period;
  CHECK(e2_coherent_time_average(c).value == doctest::Approx(1.2168).epsilon(1e-15));
  CHECK(quad == doctest::Approx(e2_coherent_time_average(c).value).epsilon(1e-9));
}

TEST_CASE("single-mode squeezed quadrature matches its analytic average") {
  const double q = 1.5, eta = 0.7, e0 = 0.35, omega = 2.2, k = 1.3, y = 0.4;
  const double period = kPi / omega;  // phase advances by 2 omega t
  const double quad =
      simpson([&](double t) {
        return e2_single_mode_squeezed(q, eta, e0, t, y, omega, k).value;
      },
              0.0, period) /
      period;
  const double analytic = e2_single_mode_squeezed_time_average(q, e0).value;
  CHECK(analytic == doctest::Approx(2.221577188965552).epsilon(1e-14));
  CHECK(quad == doctest::Approx(analytic).epsilon(1e-9));
}

TEST_CASE("squeezed beam quadrature matches its analytic average") {
  SqueezedBeam b = reference_beam();
  const double period = kPi / b.omega;  // 18.55 exactly for this carrier
  CHECK(period == doctest::Approx(18.55).epsilon(1e-15));
  const double quad =
      simpson([&](double t) { return e2_squeezed_beam(b, t, 0.0).value; }, 0.0,
              period) /
      period;
  const double analytic = e2_squeezed_beam_time_average(b).value;
  CHECK(analytic == doctest::Approx(4.0507324467979177e-07).epsilon(1e-14));
  CHECK(quad == doctest::Approx(analytic).epsilon(1e-9));
}

TEST_CASE("mode-sum quadrature over the common period matches its average") {
  ModeSet s;
  s.volume = 5.0;
  s.modes.push_back({{0.0, 2.0, 0.0}, 2.0, 0.7, 0.4});
  s.modes.push_back({{0.0, 0.0, 3.0}, 3.0, 1.1, -0.9});
  const std::array<double, 3> x{0.3, -0.2, 0.1};
  // Mode periods pi/2 and pi/3 share the common period pi.
  const double quad =
      simpson([&](double t) { return e2_mode_sum(s, t, x).value; }, 0.0, kPi) / kPi;
  const double analytic = e2_mode_sum_time_average(s).value;
  CHECK(analytic == doctest::Approx(1.3005521917480967).epsilon(1e-14));
  CHECK(quad == doctest::Approx(analytic).epsilon(1e-9));
}

TEST_CASE("single squeezed mode with E0 = sqrt(omega/V)/2 equals the mode sum") {
  const double omega = 2.5, volume = 37.0, q = 0.8, eta = 0.3;
  const double e0 = 0.5 * std::sqrt(omega / volume);
  CHECK(e0 == doctest::Approx(0.12996881122750908).epsilon(1e-15));
  ModeSet s;
  s.volume = volume;
  s.modes.push_back({{0.0, omega, 0.0}, omega, q, eta});
  for (double t : {0.0, 0.3, 1.7}) {
    for (double y : {0.0, -0.6}) {
      const double a =
          e2_single_mode_squeezed(q, eta, e0, t, y, omega, omega).value;
      const double b = e2_mode_sum(s, t, {0.0, y, 0.0}).value;
      CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
  }
}

TEST_CASE("single-mode normalization relative to the 2 E0^2 <n> convention") {
  // The amplitude-parameter form averages to (2 E0)^2 sinh^2 q, which is the
  // 2 E0^2 <n> identity evaluated at amplitude E0 sqrt(2).
  for (double q : {0.4, 1.5}) {
    for (double e0 : {0.35, 1.0}) {
      CHECK(e2_single_mode_squeezed_time_average(q, e0).value ==
            doctest::Approx(2.0 * time_averaged_e2_squeezed(q, e0).value)
                .epsilon(1e-15));
    }
  }
}

TEST_CASE("mode sum input validation") {
  ModeSet s;
  s.volume = 1.0;
  CHECK_THROWS_AS((void)e2_mode_sum(s, 0.0, {0, 0, 0}), DomainError);
  s.modes.push_back({{0.0, 1.0, 0.0}, 1.0, 0.5, 0.0});
  s.volume = 0.0;
  CHECK_THROWS_AS((void)e2_mode_sum(s, 0.0, {0, 0, 0}), DomainError);
  CHECK_THROWS_AS((void)e2_mode_sum_time_average(s), DomainError);
}

TEST_CASE("peak ratio between squeezed and coherent at equal photon number") {
  // 1 + sqrt((1+n)/n): about 1/sqrt(n) for small n, 2 for large n.
  CHECK(peak_ratio_small_n(1e-6) ==
        doctest::Approx(1001.000499999875).epsilon(1e-12));
  CHECK(peak_ratio_small_n(1e-4) ==
        doctest::Approx(101.00499987500623).epsilon(1e-12));
  CHECK(peak_ratio_small_n(1e8) ==
        doctest::Approx(2.0000000050000004).epsilon(1e-12));
  CHECK_THROWS_AS((void)peak_ratio_small_n(0.0), DomainError);
  CHECK_THROWS_AS((void)peak_ratio_small_n(-1.0), DomainError);
}

TEST_CASE("subvacuum duty fraction closed form") {
  CHECK(subvacuum_duty_fraction(1.5) ==
        doctest::Approx(0.13975967923234073).epsilon(1e-15));
  CHECK(subvacuum_duty_fraction(0.5) ==
        doctest::Approx(0.3470899533760961).epsilon(1e-15));
  CHECK(subvacuum_duty_fraction(3.0) ==
        doctest::Approx(0.03166928263726921).epsilon(1e-15));
  // q = 0 has no excitation at all, but the conditional window tends to a
  // half cycle as q -> 0+.
  CHECK(subvacuum_duty_fraction(0.0) == 0.0);
  CHECK(subvacuum_duty_fraction(1e-12) == doctest::Approx(0.5).epsilon(1e-9));
  // Monotone decreasing in q.
  CHECK(subvacuum_duty_fraction(0.5) > subvacuum_duty_fraction(1.5));
  CHECK(subvacuum_duty_fraction(1.5) > subvacuum_duty_fraction(3.0));
  CHECK_THROWS_AS((void)subvacuum_duty_fraction(-0.1), DomainError);
}

TEST_CASE("subvacuum windows located by bisection") {
  SqueezedBeam b = reference_beam();
  const double period = kPi / b.omega;  // 18.55
  const double horizon = 3.0 * period;
  SubvacuumWindows w = subvacuum_windows(b, 0.0, horizon);
  CHECK(w.duty_fraction == doctest::Approx(0.13975967923234073).epsilon(1e-15));
  REQUIRE(w.intervals.size() == 3);
  const double expected_len = w.duty_fraction * period;
  for (const auto& [a, c] : w.intervals) {
    CHECK(c - a == doctest::Approx(expected_len).epsilon(1e-9));
    // Strictly below vacuum at the window center, above outside it.
    CHECK(e2_squeezed_beam(b, 0.5 * (a + c), 0.0).value < 0.0);
    CHECK(e2_squeezed_beam(b, a - 0.05 * period, 0.0).value > 0.0);
    CHECK(e2_squeezed_beam(b, c + 0.05 * period, 0.0).value > 0.0);
  }
  // Windows recur once per cycle, centered at the phase-pi points.
  CHECK(0.5 * (w.intervals[0].first + w.intervals[0].second) ==
        doctest::Approx(period / 2.0).epsilon(1e-9));
  CHECK(w.intervals[1].first - w.intervals[0].first ==
        doctest::Approx(period).epsilon(1e-9));

  SqueezedBeam quiet = b;
  quiet.q = 0.0;
  CHECK(subvacuum_windows(quiet, 0.0, horizon).intervals.empty());
  CHECK_THROWS_AS((void)subvacuum_windows(b, 0.0, 0.0), DomainError);
}

TEST_CASE("subvacuum windows respect the horizon and the y offset") {
  SqueezedBeam b = reference_beam();
  const double period = kPi / b.omega;
  // Horizon ending inside a window truncates it.
  SubvacuumWindows w = subvacuum_windows(b, 0.0, period / 2.0);
  REQUIRE(w.intervals.size() == 1);
  CHECK(w.intervals[0].second == doctest::Approx(period / 2.0).epsilon(1e-12));
  // A spatial offset shifts the pattern by k/Omega * dy in t.
  const double dy = 1.3;
  SubvacuumWindows shifted = subvacuum_windows(b, dy, 2.0 * period);
  SubvacuumWindows base = subvacuum_windows(b, 0.0, 2.0 * period);
  REQUIRE(!shifted.intervals.empty());
  REQUIRE(!base.intervals.empty());
  const double dt = b.k * dy / b.omega;
  CHECK(shifted.intervals[0].first ==
        doctest::Approx(base.intervals[0].first + dt).epsilon(1e-9));
}
