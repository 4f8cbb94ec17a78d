#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fluctoptics/io.hpp"
#include "fluctoptics/media.hpp"
#include "fluctoptics/propagate.hpp"
#include "fluctoptics/qstates.hpp"

// Scenario configuration and execution: the programmatic core of the
// command line tool. A Scenario comes from an INI-style config file or a
// built-in preset, validates as a whole (all problems reported, not just
// the first), and runs deterministically: identical config and library
// version give byte-identical output files.

namespace fluctoptics::scenario {

inline constexpr const char* library_version = "0.1.0";

enum class Command { e2, birefringence, propagate, ambient, presets, validate };

std::optional<Command> parse_command(const std::string& name);
std::string to_string(Command c);

enum class StateType {
    squeezed_beam,
    mode_set,
    coherent,
    single_squeezed,
    thermal,
    casimir,
};

enum class SweepAxis { time, temperature, distance };
enum class Spacing { linear, log };
enum class OutputFormat { csv, json, both };

// How the birefringence command obtains its coefficient: computed from the
// material's chi3 table, or a pinned reference value carried in the config.
enum class CoefficientMode { computed, reference };

struct MaterialSpec {
    std::optional<std::string> preset;  // built-in material name
    std::optional<std::string> file;    // key-value material file path
    // Inline entries in material-file syntax, kept in input order.
    std::vector<std::pair<std::string, std::string>> inline_entries;
    CoefficientMode coefficient_mode = CoefficientMode::computed;
    std::optional<double> reference_coefficient_um4;

    bool empty() const {
        return !preset && !file && inline_entries.empty();
    }
};

struct StateSpec {
    StateType type = StateType::squeezed_beam;

    // squeezed_beam
    double lambda_um = 10.6;
    double medium_index = 1.0;
    double q = 0.0;
    double eta = 0.0;
    double delta_k_over_k = 0.01;
    double delta_theta = 0.01;

    // coherent / single_squeezed (natural units)
    double amplitude = 0.0;  // coherent Z
    double e0 = 0.0;         // um^-2
    double omega = 0.0;      // um^-1
    double k = 0.0;          // um^-1

    // mode_set
    double volume = 1.0;  // um^3
    std::array<double, 3> position{0.0, 0.0, 0.0};
    std::vector<qstates::Mode> modes;

    // casimir
    std::optional<double> lambda_p_um;
};

struct SweepSpec {
    SweepAxis axis = SweepAxis::time;
    double from = 0.0;
    double to = 1.0;
    int points = 128;
    Spacing spacing = Spacing::linear;
    double y = 0.0;  // fixed transverse position for time sweeps

    std::vector<double> values() const;
};

struct SolverSpec {
    int points = 1024;
    double length = 6.283185307179586476925286766559;  // 2 pi
    double cfl = 0.9;
    std::optional<double> dt;
    double v0 = 1.0;
    double amplitude = -0.25;
    double k_mod = 1.0;
    double omega_mod = 1.0;
    double t_end = 18.849555921538759;  // three modulation periods
    int snapshots = 4;
    double carrier = 10.0;  // initial travelling-cosine wavenumber
    propagate::VelocityForm velocity_form = propagate::VelocityForm::reciprocal;
};

struct Scenario {
    std::string name;
    OutputFormat outputs = OutputFormat::csv;
    MaterialSpec material;
    std::optional<StateSpec> state;
    SweepSpec sweep;
    SolverSpec solver;
};

// Parse INI-style text ([scenario], [material], [state], [sweep], [solver]).
// Throws ConfigError carrying every issue found. `origin` labels messages.
Scenario parse_config(const std::string& text,
                      const std::string& origin = "<config>");
// Throws FileError when the path cannot be read.
Scenario load_config_file(const std::string& path);

// Canonical serialization: stable section and key order, full-precision
// numbers. parse_config(serialize(s)) reproduces s; the config hash in JSON
// meta is the FNV-1a fingerprint of this text.
std::string serialize(const Scenario& s);

// Full semantic validation (also run by parse_config); empty means valid.
std::vector<std::string> validate(const Scenario& s);

// Resolve the material block to a concrete material (preset, file or
// inline entries). Throws ConfigError / FileError.
media::Material resolve_material(const MaterialSpec& spec);

struct RunOptions {
    std::string out_dir = ".";
    std::optional<OutputFormat> format;  // overrides Scenario.outputs
    int precision = io::default_precision;
};

struct RunResult {
    std::vector<std::string> files;     // paths written, in write order
    std::vector<std::string> warnings;  // non-fatal modelling warnings
};

// Execute a command against a scenario, writing output files into
// opt.out_dir. Throws ConfigError for semantic problems (wrong state type
// for the command, missing material), NumericalError for solver aborts.
RunResult run_scenario(const Scenario& s, Command cmd, const RunOptions& opt = {});

}  // namespace fluctoptics::scenario
