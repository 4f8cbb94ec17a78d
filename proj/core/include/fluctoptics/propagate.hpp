#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fluctoptics/errors.hpp"

// 1D probe propagation through a medium whose effective wave speed is
// modulated in space and time by a travelling disturbance:
//   d2E/dt2 = v_eff(t,z)^2 d2E/dz2,   v_eff derived from v0 and f(t,z).
// Everything here is nondimensional (solver units).

namespace fluctoptics::propagate {

// How the fractional disturbance f maps to the effective speed.
enum class VelocityForm {
    reciprocal,    // v0 / (1 + f): f read as an index perturbation
    inverse_sqrt,  // v0 / sqrt(1 + f): f read as a permittivity perturbation
};

double effective_velocity(double f, double v0, VelocityForm form);

// Travelling sinusoidal disturbance f(t,z) = amplitude sin(k_mod z - omega_mod t).
// |amplitude| must stay below 1 or the effective speed diverges.
struct ModulationModel {
    double amplitude = 0.0;
    double k_mod = 1.0;
    double omega_mod = 1.0;

    double f(double t, double z) const;
    void check() const;
};

// Periodic grid: points >= 64 samples of [0, length).
struct ProbeGrid {
    double length = 6.283185307179586476925286766559;  // 2 pi
    int points = 1024;
    double cfl = 0.9;                 // in (0, 1]
    std::optional<double> dt;         // step override; validated against cfl bound

    void check() const;
};

struct InitialCondition {
    std::function<double(double)> field;  // E(0, z)
    std::function<double(double)> rate;   // dE/dt(0, z)

    // Rightward travelling wave: E = cos(k z), dE/dt = k v sin(k z),
    // exact for constant speed v.
    static InitialCondition travelling_cosine(double wavenumber, double speed);
};

struct Snapshot {
    double time = 0.0;
    std::vector<double> z;
    std::vector<double> field;
    std::vector<double> modulation;  // f(time, z)
};

// Explicit three-level leapfrog integrator with centered differences in
// space; second order in both dt and dz. The speed is evaluated at the
// middle time level and at cell centers, which keeps the update centered
// and the scheme exactly time-reversible.
class WaveRun {
public:
    WaveRun(const ProbeGrid& grid, const ModulationModel& mod, double v0,
            VelocityForm form, const InitialCondition& init);

    void step();
    // Advance until the run's time reaches t (within half a step).
    void run_until(double t);
    // Swap field levels and negate dt: subsequent steps retrace the run.
    void reverse();

    double time() const { return time_; }
    double dt() const { return dt_; }
    double dz() const { return dz_; }
    Snapshot snapshot() const;

    // Discrete Sum[(dE/dt)^2 + v^2 (dE/dz)^2] dz; conserved to O(dt^2)
    // wiggle for time-independent speed profiles.
    double energy_proxy() const;

private:
    void check_finite(const char* where) const;

    ModulationModel mod_;
    double v0_;
    VelocityForm form_;
    double dz_;
    double dt_;
    double time_ = 0.0;
    long steps_since_check_ = 0;
    std::vector<double> z_;
    std::vector<double> prev_;  // field at time_ - dt_
    std::vector<double> curr_;  // field at time_
};

// Run from t = 0 to t_end, returning n_snapshots snapshots at evenly spaced
// target times (the first is the untouched initial data at t = 0; later
// ones land on the first step at or past their target, with the actual time
// recorded).
std::vector<Snapshot> run(const ProbeGrid& grid, const ModulationModel& mod,
                          double v0, VelocityForm form,
                          const InitialCondition& init, double t_end,
                          int n_snapshots);

struct WavelengthSample {
    double z = 0.0;       // midpoint of a zero-crossing pair
    double lambda = 0.0;  // twice the crossing spacing
};

// Local wavelength from adjacent zero crossings of the field; needs at
// least 4 crossings in the snapshot.
std::vector<WavelengthSample> local_wavelength(const Snapshot& s);

struct SpectrumPeak {
    int mode_index = 0;
    double magnitude = 0.0;
};

struct Spectrum {
    // Cosine-amplitude-normalized DFT magnitudes for modes 0..N/2: a pure
    // cos(m z) field gives magnitude 1 at index m.
    std::vector<double> magnitude;
    // Local maxima at or above rel_threshold times the strongest magnitude,
    // in index order.
    std::vector<SpectrumPeak> peaks;
};

Spectrum spectrum(const Snapshot& s, double rel_threshold = 1e-3);

}  // namespace fluctoptics::propagate
