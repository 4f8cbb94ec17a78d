#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fluctoptics/units.hpp"

// Normal-ordered mean squared electric field <:E^2:> for squeezed, coherent
// and multimode states, in natural units (um^-4). Negative values are the
// point: squeezed vacua dip below the vacuum level over part of each cycle.

namespace fluctoptics::qstates {

struct Mode {
    std::array<double, 3> k{0.0, 0.0, 0.0};  // wave vector, um^-1
    double omega = 0.0;                      // um^-1
    double q = 0.0;                          // squeeze parameter
    double eta = 0.0;                        // squeeze phase
};

struct ModeSet {
    double volume = 1.0;  // quantization volume, um^3
    std::vector<Mode> modes;
};

// Squeezed vacuum excited over a narrow bundle of modes around a carrier
// travelling along +y: wavenumber k, angular frequency Omega, fractional
// bandwidth delta_k_over_k and angular spread delta_theta.
struct SqueezedBeam {
    double omega = 0.0;           // um^-1
    double k = 0.0;               // um^-1
    double delta_k_over_k = 0.0;  // must be < 1; collimation warning at >= 0.1
    double delta_theta = 0.0;     // radians, in (0, pi]; soft warning above 0.3
    double q = 0.0;
    double eta = 0.0;
    double medium_index = 1.0;

    // Carrier at vacuum wavelength lambda_um inside a medium of index n:
    // k = 2 pi / lambda, Omega = k / n.
    static SqueezedBeam in_medium(double lambda_um, double medium_index,
                                  double q, double eta, double delta_k_over_k,
                                  double delta_theta);

    // (Omega k^3 / 4 pi^2), the um^-4 scale of the beam before bandwidth,
    // spread and squeezing factors.
    double carrier_prefactor() const;
    // carrier_prefactor * (delta_k/k) * delta_theta; multiplies
    // sinh q [sinh q + cosh q cos(...)] in e2_squeezed_beam.
    double static_prefactor() const;

    // Non-fatal modelling warnings (bandwidth, spread).
    std::vector<std::string> warnings() const;
    // Hard precondition check; throws DomainError.
    void check() const;
};

struct CoherentMode {
    double amplitude = 0.0;  // coherent amplitude Z (real)
    double e0 = 0.0;         // single-mode field scale E0, um^-2
    double omega = 0.0;      // um^-1
    double k = 0.0;          // um^-1
};

// Multimode squeezed vacuum:
//   <:E^2:> = (1/V) sum_k omega sinh q [sinh q + cosh q cos(2 omega t - 2 k.x - eta)].
units::Quantity e2_mode_sum(const ModeSet& s, double t,
                            const std::array<double, 3>& x);

// Narrow squeezed beam along y:
//   <:E^2:> = static_prefactor * sinh q [sinh q + cosh q cos(2 Omega t - 2 k y - eta)].
units::Quantity e2_squeezed_beam(const SqueezedBeam& b, double t, double y);

// Coherent state: <:E^2:> = (2 Z E0 cos(k y - omega t))^2. Never negative.
units::Quantity e2_coherent(const CoherentMode& c, double t, double y);

// Single squeezed mode, amplitude-parameter form:
//   <:E^2:> = (2 E0)^2 sinh q [sinh q + cosh q cos(2 omega t - 2 k y - eta)].
// With E0 = (1/2) sqrt(omega/V) this equals the one-mode mode sum exactly.
// Note the normalization: this form time-averages to (2 E0)^2 sinh^2 q,
// i.e. twice time_averaged_e2_squeezed(q, E0); the 2 E0^2 <n> identity
// corresponds to amplitude E0/sqrt(2) in this parameterization.
units::Quantity e2_single_mode_squeezed(double q, double eta, double e0_amp,
                                        double t, double y, double omega,
                                        double k);

double mean_photon_number_coherent(double amplitude);  // Z^2
double mean_photon_number_squeezed(double q);          // sinh^2 q

// Cycle-averaged <:E^2:> identities, 2 E0^2 <n> for both state families:
//   coherent: 2 E0^2 Z^2 (exact average of e2_coherent)
//   squeezed: 2 E0^2 sinh^2 q
units::Quantity time_averaged_e2_coherent(double amplitude, double e0);
units::Quantity time_averaged_e2_squeezed(double q, double e0);

// Exact analytic cycle averages of the instantaneous forms above.
units::Quantity e2_coherent_time_average(const CoherentMode& c);
units::Quantity e2_single_mode_squeezed_time_average(double q, double e0_amp);
units::Quantity e2_squeezed_beam_time_average(const SqueezedBeam& b);
units::Quantity e2_mode_sum_time_average(const ModeSet& s);

// Peak <:E^2:> of a squeezed mode over that of a coherent mode with the
// same mean photon number n and the same E0:
//   sinh q (sinh q + cosh q) / n with sinh^2 q = n.
// Diverges like 1/sqrt(n) for small n and tends to 2 for large n.
double peak_ratio_small_n(double n_mean);

// Subvacuum episode: e2_squeezed_beam < 0 requires cos(...) < -tanh q.
struct SubvacuumWindows {
    // Subvacuum t-intervals intersected with [0, horizon], at fixed y.
    std::vector<std::pair<double, double>> intervals;
    // Fraction of each cycle spent below vacuum: arccos(tanh q) / pi.
    double duty_fraction = 0.0;
};

// Closed-form duty fraction; 0 at q = 0 (the field never dips), 1/2 in the
// q -> 0+ limit of the conditional phase window.
double subvacuum_duty_fraction(double q);

// Interval endpoints located by bisection on the instantaneous formula to
// |phase error| <= phase_tol (default 1e-12); duty_fraction from the closed
// form. horizon must be positive.
SubvacuumWindows subvacuum_windows(const SqueezedBeam& b, double y,
                                   double horizon, double phase_tol = 1e-12);

}  // namespace fluctoptics::qstates
