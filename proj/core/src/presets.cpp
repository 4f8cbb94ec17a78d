#include "fluctoptics/presets.hpp"

namespace fluctoptics::scenario {

namespace {

Scenario cdgeas2_squeezed() {
    Scenario s;
    s.name = "cdgeas2-squeezed";
    s.material.preset = "cdgeas2";
    // Pinned literature coefficient for CdGeAs2 at 10.6 um; switch to
    // quantum_coefficient = computed to use the tensor table instead
    // (the two agree to about 12 percent).
    s.material.coefficient_mode = CoefficientMode::reference;
    s.material.reference_coefficient_um4 = 3.39e-9;

    StateSpec st;
    st.type = StateType::squeezed_beam;
    st.lambda_um = 10.6;
    st.medium_index = 3.5;
    st.q = 1.5;
    st.eta = 0.0;
    st.delta_k_over_k = 0.01;
    st.delta_theta = 0.01;
    s.state = st;

    s.sweep.axis = SweepAxis::time;
    s.sweep.from = 0.0;
    s.sweep.to = 18.55;  // one oscillation cycle: pi/Omega = lambda n / 2
    s.sweep.points = 256;
    s.sweep.y = 0.0;
    return s;
}

Scenario fig2() {
    // Modulated-propagation demo on solver defaults: unit speed, 25%
    // counter-modulation travelling with the wave, three periods.
    Scenario s;
    s.name = "fig2";
    return s;
}

Scenario thermal_2600() {
    Scenario s;
    s.name = "thermal-2600";
    StateSpec st;
    st.type = StateType::thermal;
    s.state = st;
    s.sweep.axis = SweepAxis::temperature;
    s.sweep.from = 0.0;
    s.sweep.to = 2600.0;  // incandescent-filament territory
    s.sweep.points = 27;
    return s;
}

Scenario casimir_sweep() {
    Scenario s;
    s.name = "casimir-sweep";
    StateSpec st;
    st.type = StateType::casimir;
    st.lambda_p_um = 0.2;
    s.state = st;
    s.sweep.axis = SweepAxis::distance;
    s.sweep.from = 0.05;
    s.sweep.to = 3.2;
    s.sweep.points = 64;
    s.sweep.spacing = Spacing::log;
    return s;
}

std::vector<Preset> build() {
    return {
        {"cdgeas2-squeezed",
         "squeezed 10.6 um beam in CdGeAs2: quantum Kerr birefringence over "
         "one cycle (e2, birefringence)",
         cdgeas2_squeezed()},
        {"fig2",
         "probe wave riding a travelling velocity modulation, three periods "
         "on a periodic domain (propagate)",
         fig2()},
        {"thermal-2600",
         "blackbody mean squared field from 0 K to 2600 K (ambient)",
         thermal_2600()},
        {"casimir-sweep",
         "mean squared field 0.05 to 3.2 um from a mirror with plasma "
         "wavelength 0.2 um (ambient)",
         casimir_sweep()},
    };
}

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = build();
    return all;
}

std::optional<Scenario> find_preset(const std::string& name) {
    for (const Preset& p : presets())
        if (p.name == name) return p.config;
    return std::nullopt;
}

}  // namespace fluctoptics::scenario
