#include "fluctoptics/qstates.hpp"

#include <cmath>

namespace fluctoptics::qstates {

namespace {

constexpr double kPi = 3.14159265358979323846;

units::Quantity um4_inv(double v) { return {v, units::Unit::microns(-4)}; }

}  // namespace

SqueezedBeam SqueezedBeam::in_medium(double lambda_um, double medium_index,
                                     double q, double eta,
                                     double delta_k_over_k, double delta_theta) {
    if (lambda_um <= 0.0) throw DomainError("wavelength must be positive");
    if (medium_index < 1.0) throw DomainError("medium index must be >= 1");
    SqueezedBeam b;
    b.k = 2.0 * kPi / lambda_um;
    b.medium_index = medium_index;
    b.omega = b.k / medium_index;
    b.q = q;
    b.eta = eta;
    b.delta_k_over_k = delta_k_over_k;
    b.delta_theta = delta_theta;
    b.check();
    return b;
}

void SqueezedBeam::check() const {
    if (omega <= 0.0 || k <= 0.0) throw DomainError("beam carrier must have omega, k > 0");
    if (q < 0.0) throw DomainError("squeeze parameter must be >= 0");
    if (!(delta_k_over_k > 0.0 && delta_k_over_k < 1.0)) {
        throw DomainError("delta_k_over_k must lie in (0, 1)");
    }
    if (!(delta_theta > 0.0 && delta_theta <= kPi)) {
        throw DomainError("delta_theta must lie in (0, pi]");
    }
}

double SqueezedBeam::carrier_prefactor() const {
    return omega * k * k * k / (4.0 * kPi * kPi);
}

double SqueezedBeam::static_prefactor() const {
    return carrier_prefactor() * delta_k_over_k * delta_theta;
}

std::vector<std::string> SqueezedBeam::warnings() const {
    std::vector<std::string> w;
    if (delta_k_over_k >= 0.1) {
        w.push_back("delta_k_over_k >= 0.1: narrow-bandwidth treatment is strained");
    }
    if (delta_theta > 0.3) {
        w.push_back("delta_theta > 0.3 rad: paraxial angular integration is strained");
    }
    return w;
}

units::Quantity e2_mode_sum(const ModeSet& s, double t,
                            const std::array<double, 3>& x) {
    if (s.volume <= 0.0) throw DomainError("quantization volume must be positive");
    if (s.modes.empty()) throw DomainError("mode set must not be empty");
    double sum = 0.0;
    for (const auto& m : s.modes) {
        const double sh = std::sinh(m.q);
        const double ch = std::cosh(m.q);
        const double kx = m.k[0] * x[0] + m.k[1] * x[1] + m.k[2] * x[2];
        const double phase = 2.0 * m.omega * t - 2.0 * kx - m.eta;
        sum += m.omega * sh * (sh + ch * std::cos(phase));
    }
    return um4_inv(sum / s.volume);
}

units::Quantity e2_squeezed_beam(const SqueezedBeam& b, double t, double y) {
    b.check();
    const double sh = std::sinh(b.q);
    const double ch = std::cosh(b.q);
    const double phase = 2.0 * b.omega * t - 2.0 * b.k * y - b.eta;
    return um4_inv(b.static_prefactor() * sh * (sh + ch * std::cos(phase)));
}

units::Quantity e2_coherent(const CoherentMode& c, double t, double y) {
    const double amp = 2.0 * c.amplitude * c.e0 * std::cos(c.k * y - c.omega * t);
    return um4_inv(amp * amp);
}

units::Quantity e2_single_mode_squeezed(double q, double eta, double e0_amp,
                                        double t, double y, double omega,
                                        double k) {
    if (q < 0.0) throw DomainError("squeeze parameter must be >= 0");
    const double sh = std::sinh(q);
    const double ch = std::cosh(q);
    const double phase = 2.0 * omega * t - 2.0 * k * y - eta;
    const double scale = 4.0 * e0_amp * e0_amp;  // (2 E0)^2
    return um4_inv(scale * sh * (sh + ch * std::cos(phase)));
}

double mean_photon_number_coherent(double amplitude) {
    return amplitude * amplitude;
}

double mean_photon_number_squeezed(double q) {
    if (q < 0.0) throw DomainError("squeeze parameter must be >= 0");
    const double sh = std::sinh(q);
    return sh * sh;
}

units::Quantity time_averaged_e2_coherent(double amplitude, double e0) {
    return um4_inv(2.0 * e0 * e0 * mean_photon_number_coherent(amplitude));
}

units::Quantity time_averaged_e2_squeezed(double q, double e0) {
    return um4_inv(2.0 * e0 * e0 * mean_photon_number_squeezed(q));
}

units::Quantity e2_coherent_time_average(const CoherentMode& c) {
    return time_averaged_e2_coherent(c.amplitude, c.e0);
}

units::Quantity e2_single_mode_squeezed_time_average(double q, double e0_amp) {
    const double sh = std::sinh(q);
    return um4_inv(4.0 * e0_amp * e0_amp * sh * sh);
}

units::Quantity e2_squeezed_beam_time_average(const SqueezedBeam& b) {
    const double sh = std::sinh(b.q);
    return um4_inv(b.static_prefactor() * sh * sh);
}

units::Quantity e2_mode_sum_time_average(const ModeSet& s) {
    if (s.volume <= 0.0) throw DomainError("quantization volume must be positive");
    if (s.modes.empty()) throw DomainError("mode set must not be empty");
    double sum = 0.0;
    for (const auto& m : s.modes) {
        const double sh = std::sinh(m.q);
        sum += m.omega * sh * sh;
    }
    return um4_inv(sum / s.volume);
}

double peak_ratio_small_n(double n_mean) {
    if (n_mean <= 0.0) throw DomainError("mean photon number must be positive");
    const double sh = std::sqrt(n_mean);
    const double ch = std::sqrt(1.0 + n_mean);  // cosh(asinh(sh))
    return sh * (sh + ch) / n_mean;
}

double subvacuum_duty_fraction(double q) {
    if (q < 0.0) throw DomainError("squeeze parameter must be >= 0");
    if (q == 0.0) return 0.0;  // e2 vanishes identically, no dips
    return std::acos(std::tanh(q)) / kPi;
}

SubvacuumWindows subvacuum_windows(const SqueezedBeam& b, double y,
                                   double horizon, double phase_tol) {
    b.check();
    if (horizon <= 0.0) throw DomainError("horizon must be positive");
    if (phase_tol <= 0.0) throw DomainError("phase tolerance must be positive");

    SubvacuumWindows out;
    out.duty_fraction = subvacuum_duty_fraction(b.q);
    if (b.q == 0.0) return out;

    // g(t) = sinh q + cosh q cos(2 Omega t - 2 k y - eta); sign changes of g
    // bracket the subvacuum windows. Scan at a resolution finer than half
    // the narrower of the two arcs, then bisect each bracket.
    const double sh = std::sinh(b.q);
    const double ch = std::cosh(b.q);
    auto g = [&](double t) {
        return sh + ch * std::cos(2.0 * b.omega * t - 2.0 * b.k * y - b.eta);
    };
    const double period = kPi / b.omega;  // one full phase cycle, 2 Omega t in [0, 2 pi)
    const double narrow = std::min(out.duty_fraction, 1.0 - out.duty_fraction);
    const int per_period = std::max(16, static_cast<int>(std::ceil(4.0 / narrow)));
    const double dt = period / per_period;
    const double t_tol = phase_tol / (2.0 * b.omega);

    auto bisect = [&](double lo, double hi) {
        // invariant: sign(g(lo)) != sign(g(hi))
        double flo = g(lo);
        while (hi - lo > t_tol) {
            const double mid = 0.5 * (lo + hi);
            const double fm = g(mid);
            if ((flo < 0.0) == (fm < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    double open = g(0.0) < 0.0 ? 0.0 : -1.0;  // window already open at t = 0
    double prev_t = 0.0;
    double prev_g = g(0.0);
    const long nsteps = static_cast<long>(std::ceil(horizon / dt));
    for (long i = 1; i <= nsteps; ++i) {
        const double t = std::min(horizon, i * dt);
        const double gt = g(t);
        if ((prev_g < 0.0) != (gt < 0.0)) {
            const double root = bisect(prev_t, t);
            if (gt < 0.0) {
                open = root;
            } else if (open >= 0.0) {
                out.intervals.emplace_back(open, root);
                open = -1.0;
            }
        }
        prev_t = t;
        prev_g = gt;
        if (t >= horizon) break;
    }
    if (open >= 0.0) out.intervals.emplace_back(open, horizon);
    return out;
}

}  // namespace fluctoptics::qstates
