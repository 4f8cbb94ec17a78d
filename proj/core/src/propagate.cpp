#include "fluctoptics/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fluctoptics::propagate {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double effective_velocity(double f, double v0, VelocityForm form) {
    if (v0 <= 0.0) throw DomainError("base speed v0 must be positive");
    if (f <= -1.0) throw DomainError("disturbance f must stay above -1");
    switch (form) {
        case VelocityForm::reciprocal: return v0 / (1.0 + f);
        case VelocityForm::inverse_sqrt: return v0 / std::sqrt(1.0 + f);
    }
    throw DomainError("unknown velocity form");
}

double ModulationModel::f(double t, double z) const {
    return amplitude * std::sin(k_mod * z - omega_mod * t);
}

void ModulationModel::check() const {
    if (!(std::abs(amplitude) < 1.0)) {
        throw DomainError("modulation amplitude must satisfy |A| < 1");
    }
}

void ProbeGrid::check() const {
    if (points < 64) throw DomainError("grid needs at least 64 points");
    if (!(length > 0.0)) throw DomainError("grid length must be positive");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("cfl must lie in (0, 1]");
    if (dt && *dt <= 0.0) throw DomainError("dt must be positive");
}

InitialCondition InitialCondition::travelling_cosine(double wavenumber,
                                                     double speed) {
    InitialCondition ic;
    ic.field = [wavenumber](double z) { return std::cos(wavenumber * z); };
    ic.rate = [wavenumber, speed](double z) {
        return wavenumber * speed * std::sin(wavenumber * z);
    };
    return ic;
}

WaveRun::WaveRun(const ProbeGrid& grid, const ModulationModel& mod, double v0,
                 VelocityForm form, const InitialCondition& init)
    : mod_(mod), v0_(v0), form_(form) {
    grid.check();
    mod.check();
    if (!init.field || !init.rate) {
        throw DomainError("initial condition needs both field and rate");
    }

    const int n = grid.points;
    dz_ = grid.length / n;

    // Worst-case speed over the whole run bounds the stable step.
    const double v_max = effective_velocity(-std::abs(mod.amplitude), v0, form);
    const double dt_bound = grid.cfl * dz_ / v_max;
    dt_ = grid.dt.value_or(dt_bound);
    if (dt_ > dt_bound * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "time step " << dt_ << " violates the stability bound "
           << dt_bound << " (cfl " << grid.cfl << ", dz " << dz_ << ", v_max "
           << v_max << ")";
        throw NumericalError(os.str());
    }

    z_.resize(n);
    curr_.resize(n);
    prev_.resize(n);
    for (int i = 0; i < n; ++i) {
        z_[i] = i * dz_;
        curr_[i] = init.field(z_[i]);
    }
    // Virtual level at t = -dt via a Taylor step backwards, so curr_ holds
    // the exact initial data and the first leapfrog step is second order.
    for (int i = 0; i < n; ++i) {
        const int il = (i == 0) ? n - 1 : i - 1;
        const int ir = (i == n - 1) ? 0 : i + 1;
        const double d2 = (curr_[ir] - 2.0 * curr_[i] + curr_[il]) / (dz_ * dz_);
        const double v = effective_velocity(mod_.f(0.0, z_[i]), v0_, form_);
        prev_[i] = curr_[i] - dt_ * init.rate(z_[i]) + 0.5 * dt_ * dt_ * v * v * d2;
    }
    check_finite("initial data");
}

void WaveRun::step() {
    const int n = static_cast<int>(curr_.size());
    const double inv_dz2 = 1.0 / (dz_ * dz_);
    std::vector<double>& next = prev_;  // overwrite the oldest level in place
    for (int i = 0; i < n; ++i) {
        const int il = (i == 0) ? n - 1 : i - 1;
        const int ir = (i == n - 1) ? 0 : i + 1;
        const double v = effective_velocity(mod_.f(time_, z_[i]), v0_, form_);
        const double lap = (curr_[ir] - 2.0 * curr_[i] + curr_[il]) * inv_dz2;
        next[i] = 2.0 * curr_[i] - prev_[i] + dt_ * dt_ * v * v * lap;
    }
    std::swap(prev_, curr_);  // next was written into prev_'s storage
    time_ += dt_;
    if (++steps_since_check_ >= 16) {
        steps_since_check_ = 0;
        check_finite("field update");
    }
}

void WaveRun::run_until(double t) {
    if (dt_ > 0.0) {
        while (time_ < t - 0.5 * dt_) step();
    } else {
        while (time_ > t - 0.5 * dt_) step();
    }
    check_finite("run_until");
}

void WaveRun::reverse() {
    std::swap(prev_, curr_);
    time_ -= dt_;
    dt_ = -dt_;
}

Snapshot WaveRun::snapshot() const {
    check_finite("snapshot");
    Snapshot s;
    s.time = time_;
    s.z = z_;
    s.field = curr_;
    s.modulation.resize(z_.size());
    for (size_t i = 0; i < z_.size(); ++i) {
        s.modulation[i] = mod_.f(time_, z_[i]);
    }
    return s;
}

double WaveRun::energy_proxy() const {
    const int n = static_cast<int>(curr_.size());
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const int il = (i == 0) ? n - 1 : i - 1;
        const int ir = (i == n - 1) ? 0 : i + 1;
        const double dedt = (curr_[i] - prev_[i]) / dt_;
        const double dedz = (curr_[ir] - curr_[il]) / (2.0 * dz_);
        const double v = effective_velocity(mod_.f(time_, z_[i]), v0_, form_);
        sum += dedt * dedt + v * v * dedz * dedz;
    }
    return sum * dz_;
}

void WaveRun::check_finite(const char* where) const {
    for (double v : curr_) {
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "non-finite field value at t = " << time_ << " (" << where
               << "); the run is numerically dead";
            throw NumericalError(os.str());
        }
    }
}

std::vector<Snapshot> run(const ProbeGrid& grid, const ModulationModel& mod,
                          double v0, VelocityForm form,
                          const InitialCondition& init, double t_end,
                          int n_snapshots) {
    if (t_end <= 0.0) throw DomainError("t_end must be positive");
    if (n_snapshots < 2) throw DomainError("need at least 2 snapshots");
    WaveRun run(grid, mod, v0, form, init);
    std::vector<Snapshot> out;
    out.reserve(n_snapshots);
    out.push_back(run.snapshot());
    for (int s = 1; s < n_snapshots; ++s) {
        run.run_until(t_end * s / (n_snapshots - 1));
        out.push_back(run.snapshot());
    }
    return out;
}

std::vector<WavelengthSample> local_wavelength(const Snapshot& s) {
    const int n = static_cast<int>(s.field.size());
    std::vector<double> crossings;
    for (int i = 0; i + 1 < n; ++i) {
        const double a = s.field[i];
        const double b = s.field[i + 1];
        double zc;
        if (a == 0.0) {
            zc = s.z[i];
        } else if ((a < 0.0) != (b < 0.0)) {
            zc = s.z[i] + (s.z[i + 1] - s.z[i]) * a / (a - b);
        } else {
            continue;
        }
        if (crossings.empty() || zc > crossings.back()) crossings.push_back(zc);
    }
    if (crossings.size() < 4) {
        throw DomainError("need at least 4 zero crossings to estimate wavelengths");
    }
    std::vector<WavelengthSample> out;
    out.reserve(crossings.size() - 1);
    for (size_t i = 0; i + 1 < crossings.size(); ++i) {
        WavelengthSample w;
        w.z = 0.5 * (crossings[i] + crossings[i + 1]);
        w.lambda = 2.0 * (crossings[i + 1] - crossings[i]);
        out.push_back(w);
    }
    return out;
}

Spectrum spectrum(const Snapshot& s, double rel_threshold) {
    const int n = static_cast<int>(s.field.size());
    if (n < 2) throw DomainError("snapshot too small for a spectrum");
    const int half = n / 2;
    Spectrum sp;
    sp.magnitude.resize(half + 1);
    // Direct DFT: diagnostic-sized grids only, and it works for any n.
    for (int k = 0; k <= half; ++k) {
        double re = 0.0, im = 0.0;
        const double w = -2.0 * kPi * k / n;
        for (int j = 0; j < n; ++j) {
            re += s.field[j] * std::cos(w * j);
            im += s.field[j] * std::sin(w * j);
        }
        const bool unpaired = (k == 0) || (2 * k == n);
        const double norm = unpaired ? 1.0 / n : 2.0 / n;
        sp.magnitude[k] = std::hypot(re, im) * norm;
    }
    const double peak = *std::max_element(sp.magnitude.begin(), sp.magnitude.end());
    if (peak > 0.0) {
        for (int k = 0; k <= half; ++k) {
            const double m = sp.magnitude[k];
            if (m < rel_threshold * peak) continue;
            const double left = (k > 0) ? sp.magnitude[k - 1] : 0.0;
            const double right = (k < half) ? sp.magnitude[k + 1] : 0.0;
            if (m >= left && m >= right) {
                sp.peaks.push_back({k, m});
            }
        }
    }
    return sp;
}

}  // namespace fluctoptics::propagate
