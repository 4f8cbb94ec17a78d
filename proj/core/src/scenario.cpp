#include "fluctoptics/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <mutex>
#include <set>
#include <thread>
#include <utility>

#include "fluctoptics/ambient.hpp"
#include "fluctoptics/errors.hpp"

namespace fluctoptics::scenario {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
    size_t pos = line.find_first_of("#;");
    return pos == std::string::npos ? line : line.substr(0, pos);
}

bool parse_double(const std::string& text, double& out) {
    const char* b = text.data();
    const char* e = b + text.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

bool parse_int(const std::string& text, int& out) {
    const char* b = text.data();
    const char* e = b + text.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> parts;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        size_t b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > b) parts.push_back(s.substr(b, i - b));
    }
    return parts;
}

struct Entry {
    std::string key;
    std::string value;
    int line = 0;
};

struct RawSection {
    std::string name;
    int line = 0;
    std::vector<Entry> entries;
};

class IssueList {
public:
    explicit IssueList(std::string origin) : origin_(std::move(origin)) {}

    void at(int line, const std::string& msg) {
        issues_.push_back(origin_ + ":" + std::to_string(line) + ": " + msg);
    }
    void add(const std::string& msg) { issues_.push_back(msg); }
    bool empty() const { return issues_.empty(); }
    std::vector<std::string> take() { return std::move(issues_); }

private:
    std::string origin_;
    std::vector<std::string> issues_;
};

// Sections are [material], [state], [sweep] and [solver]; the scenario
// name and output format are top-level keys before any section header
// (an explicit [scenario] section is accepted as an alias for those).
std::vector<RawSection> tokenize(const std::string& text, IssueList& issues) {
    std::vector<RawSection> sections{{"scenario", 0, {}}};
    std::set<std::string> seen_sections;
    const std::set<std::string> known = {"scenario", "material", "state",
                                         "sweep", "solver"};
    size_t current = 0;
    int lineno = 0;
    size_t pos = 0;
    bool skipping_unknown = false;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string raw = text.substr(
            pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++lineno;

        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') {
                issues.at(lineno, "unterminated section header '" + line + "'");
                continue;
            }
            std::string name = trim(line.substr(1, line.size() - 2));
            if (!known.count(name)) {
                issues.at(lineno, "unknown section [" + name + "]");
                skipping_unknown = true;
                continue;
            }
            if (!seen_sections.insert(name).second) {
                issues.at(lineno, "duplicate section [" + name + "]");
                skipping_unknown = true;
                continue;
            }
            skipping_unknown = false;
            if (name == "scenario") {
                current = 0;
            } else {
                sections.push_back({name, lineno, {}});
                current = sections.size() - 1;
            }
            continue;
        }

        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            issues.at(lineno, "expected 'key = value', got '" + line + "'");
            continue;
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            issues.at(lineno, "missing key before '='");
            continue;
        }
        if (value.empty()) {
            issues.at(lineno, "empty value for '" + key + "'");
            continue;
        }
        if (skipping_unknown) continue;
        sections[current].entries.push_back({key, value, lineno});
    }
    return sections;
}

// Reject duplicate keys inside a section; `repeatable` names the one key
// that may occur more than once (mode lines in [state]).
void check_duplicates(const RawSection& sec, IssueList& issues,
                      const std::string& repeatable = {}) {
    std::set<std::string> seen;
    for (const Entry& e : sec.entries) {
        if (e.key == repeatable) continue;
        if (!seen.insert(e.key).second)
            issues.at(e.line, "duplicate key '" + e.key + "' in [" + sec.name + "]");
    }
}

double take_double(const Entry& e, IssueList& issues, bool& ok) {
    double v = 0.0;
    if (!parse_double(e.value, v)) {
        issues.at(e.line, "'" + e.key + "' expects a number, got '" + e.value + "'");
        ok = false;
    }
    return v;
}

int take_int(const Entry& e, IssueList& issues, bool& ok) {
    int v = 0;
    if (!parse_int(e.value, v)) {
        issues.at(e.line, "'" + e.key + "' expects an integer, got '" + e.value + "'");
        ok = false;
    }
    return v;
}

void apply_scenario_section(const RawSection& sec, Scenario& s, IssueList& issues) {
    check_duplicates(sec, issues);
    for (const Entry& e : sec.entries) {
        if (e.key == "name") {
            s.name = e.value;
        } else if (e.key == "outputs") {
            if (e.value == "csv") s.outputs = OutputFormat::csv;
            else if (e.value == "json") s.outputs = OutputFormat::json;
            else if (e.value == "both") s.outputs = OutputFormat::both;
            else issues.at(e.line, "outputs must be csv, json or both");
        } else {
            issues.at(e.line, "unknown top-level key '" + e.key +
                                  "' (expected name or outputs)");
        }
    }
}

void apply_material_section(const RawSection& sec, Scenario& s, IssueList& issues) {
    check_duplicates(sec, issues);
    bool ok = true;
    for (const Entry& e : sec.entries) {
        if (e.key == "preset") {
            s.material.preset = e.value;
        } else if (e.key == "file") {
            s.material.file = e.value;
        } else if (e.key == "quantum_coefficient") {
            if (e.value == "computed")
                s.material.coefficient_mode = CoefficientMode::computed;
            else if (e.value == "reference")
                s.material.coefficient_mode = CoefficientMode::reference;
            else
                issues.at(e.line, "quantum_coefficient must be computed or reference");
        } else if (e.key == "reference_coefficient_um4") {
            double v = take_double(e, issues, ok);
            if (ok) s.material.reference_coefficient_um4 = v;
        } else {
            // Anything else is an inline material entry (n0, chi3.x.x.x.x, ...)
            // validated by the material parser when the block is resolved.
            s.material.inline_entries.emplace_back(e.key, e.value);
        }
    }
}

void apply_state_section(const RawSection& sec, Scenario& s, IssueList& issues) {
    check_duplicates(sec, issues, "mode");
    StateSpec st;

    const Entry* type_entry = nullptr;
    for (const Entry& e : sec.entries)
        if (e.key == "type") type_entry = &e;
    if (!type_entry) {
        issues.at(sec.line, "[state] needs a 'type' key");
        return;
    }
    const std::string& tname = type_entry->value;
    if (tname == "squeezed_beam") st.type = StateType::squeezed_beam;
    else if (tname == "mode_set") st.type = StateType::mode_set;
    else if (tname == "coherent") st.type = StateType::coherent;
    else if (tname == "single_squeezed") st.type = StateType::single_squeezed;
    else if (tname == "thermal") st.type = StateType::thermal;
    else if (tname == "casimir") st.type = StateType::casimir;
    else {
        issues.at(type_entry->line,
                  "unknown state type '" + tname +
                      "' (squeezed_beam, mode_set, coherent, single_squeezed, "
                      "thermal, casimir)");
        return;
    }

    bool ok = true;
    for (const Entry& e : sec.entries) {
        if (e.key == "type") continue;
        bool known = true;
        switch (st.type) {
        case StateType::squeezed_beam:
            if (e.key == "lambda_um") st.lambda_um = take_double(e, issues, ok);
            else if (e.key == "medium_index") st.medium_index = take_double(e, issues, ok);
            else if (e.key == "q") st.q = take_double(e, issues, ok);
            else if (e.key == "eta") st.eta = take_double(e, issues, ok);
            else if (e.key == "delta_k_over_k") st.delta_k_over_k = take_double(e, issues, ok);
            else if (e.key == "delta_theta") st.delta_theta = take_double(e, issues, ok);
            else known = false;
            break;
        case StateType::coherent:
            if (e.key == "amplitude") st.amplitude = take_double(e, issues, ok);
            else if (e.key == "e0") st.e0 = take_double(e, issues, ok);
            else if (e.key == "omega") st.omega = take_double(e, issues, ok);
            else if (e.key == "k") st.k = take_double(e, issues, ok);
            else known = false;
            break;
        case StateType::single_squeezed:
            if (e.key == "q") st.q = take_double(e, issues, ok);
            else if (e.key == "eta") st.eta = take_double(e, issues, ok);
            else if (e.key == "e0") st.e0 = take_double(e, issues, ok);
            else if (e.key == "omega") st.omega = take_double(e, issues, ok);
            else if (e.key == "k") st.k = take_double(e, issues, ok);
            else known = false;
            break;
        case StateType::mode_set:
            if (e.key == "volume") {
                st.volume = take_double(e, issues, ok);
            } else if (e.key == "position") {
                auto parts = split_ws(e.value);
                if (parts.size() != 3) {
                    issues.at(e.line, "position expects three numbers: x y z");
                } else {
                    for (int i = 0; i < 3; ++i)
                        if (!parse_double(parts[i], st.position[i]))
                            issues.at(e.line, "position component '" + parts[i] +
                                                  "' is not a number");
                }
            } else if (e.key == "mode") {
                auto parts = split_ws(e.value);
                if (parts.size() != 6) {
                    issues.at(e.line,
                              "mode expects six numbers: kx ky kz omega q eta");
                } else {
                    qstates::Mode m;
                    double vals[6];
                    bool mode_ok = true;
                    for (int i = 0; i < 6; ++i) {
                        if (!parse_double(parts[i], vals[i])) {
                            issues.at(e.line, "mode component '" + parts[i] +
                                                  "' is not a number");
                            mode_ok = false;
                        }
                    }
                    if (mode_ok) {
                        m.k = {vals[0], vals[1], vals[2]};
                        m.omega = vals[3];
                        m.q = vals[4];
                        m.eta = vals[5];
                        st.modes.push_back(m);
                    }
                }
            } else {
                known = false;
            }
            break;
        case StateType::thermal:
            known = false;
            break;
        case StateType::casimir:
            if (e.key == "lambda_p_um") {
                double v = take_double(e, issues, ok);
                if (ok) st.lambda_p_um = v;
            } else {
                known = false;
            }
            break;
        }
        if (!known)
            issues.at(e.line, "key '" + e.key + "' is not valid for state type '" +
                                  tname + "'");
    }
    s.state = st;
}

void apply_sweep_section(const RawSection& sec, Scenario& s, IssueList& issues) {
    check_duplicates(sec, issues);
    bool ok = true;
    for (const Entry& e : sec.entries) {
        if (e.key == "axis") {
            if (e.value == "t") s.sweep.axis = SweepAxis::time;
            else if (e.value == "T") s.sweep.axis = SweepAxis::temperature;
            else if (e.value == "z") s.sweep.axis = SweepAxis::distance;
            else issues.at(e.line, "axis must be t, T or z");
        } else if (e.key == "from") {
            s.sweep.from = take_double(e, issues, ok);
        } else if (e.key == "to") {
            s.sweep.to = take_double(e, issues, ok);
        } else if (e.key == "points") {
            s.sweep.points = take_int(e, issues, ok);
        } else if (e.key == "spacing") {
            if (e.value == "linear") s.sweep.spacing = Spacing::linear;
            else if (e.value == "log") s.sweep.spacing = Spacing::log;
            else issues.at(e.line, "spacing must be linear or log");
        } else if (e.key == "y") {
            s.sweep.y = take_double(e, issues, ok);
        } else {
            issues.at(e.line, "unknown key '" + e.key + "' in [sweep]");
        }
    }
}

void apply_solver_section(const RawSection& sec, Scenario& s, IssueList& issues) {
    check_duplicates(sec, issues);
    bool ok = true;
    for (const Entry& e : sec.entries) {
        if (e.key == "points") s.solver.points = take_int(e, issues, ok);
        else if (e.key == "length") s.solver.length = take_double(e, issues, ok);
        else if (e.key == "cfl") s.solver.cfl = take_double(e, issues, ok);
        else if (e.key == "dt") {
            double v = take_double(e, issues, ok);
            if (ok) s.solver.dt = v;
        } else if (e.key == "v0") s.solver.v0 = take_double(e, issues, ok);
        else if (e.key == "amplitude") s.solver.amplitude = take_double(e, issues, ok);
        else if (e.key == "k_mod") s.solver.k_mod = take_double(e, issues, ok);
        else if (e.key == "omega_mod") s.solver.omega_mod = take_double(e, issues, ok);
        else if (e.key == "t_end") s.solver.t_end = take_double(e, issues, ok);
        else if (e.key == "snapshots") s.solver.snapshots = take_int(e, issues, ok);
        else if (e.key == "carrier") s.solver.carrier = take_double(e, issues, ok);
        else if (e.key == "velocity_form") {
            if (e.value == "reciprocal")
                s.solver.velocity_form = propagate::VelocityForm::reciprocal;
            else if (e.value == "inverse_sqrt")
                s.solver.velocity_form = propagate::VelocityForm::inverse_sqrt;
            else
                issues.at(e.line, "velocity_form must be reciprocal or inverse_sqrt");
        } else {
            issues.at(e.line, "unknown key '" + e.key + "' in [solver]");
        }
    }
}

const char* state_type_name(StateType t) {
    switch (t) {
    case StateType::squeezed_beam: return "squeezed_beam";
    case StateType::mode_set: return "mode_set";
    case StateType::coherent: return "coherent";
    case StateType::single_squeezed: return "single_squeezed";
    case StateType::thermal: return "thermal";
    case StateType::casimir: return "casimir";
    }
    return "?";
}

bool is_quantum_state(StateType t) {
    return t == StateType::squeezed_beam || t == StateType::mode_set ||
           t == StateType::coherent || t == StateType::single_squeezed;
}

// Deterministic parallel map: disjoint index chunks into a preallocated
// buffer, so the result never depends on scheduling. Serial below the
// threshold where threads pay for themselves.
template <typename F>
void map_values(const std::vector<double>& xs, std::vector<double>& out, F&& f) {
    const size_t n = xs.size();
    out.resize(n);
    unsigned hw = std::thread::hardware_concurrency();
    unsigned workers = std::min(hw == 0 ? 1u : hw, 8u);
    if (n < 1024 || workers < 2) {
        for (size_t i = 0; i < n; ++i) out[i] = f(xs[i]);
        return;
    }
    std::atomic<size_t> cursor{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto drain = [&] {
        try {
            for (;;) {
                size_t base = cursor.fetch_add(64);
                if (base >= n) return;
                size_t end = std::min(n, base + 64);
                for (size_t i = base; i < end; ++i) out[i] = f(xs[i]);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::string join_path(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
    if (name == "e2") return Command::e2;
    if (name == "birefringence") return Command::birefringence;
    if (name == "propagate") return Command::propagate;
    if (name == "ambient") return Command::ambient;
    if (name == "presets") return Command::presets;
    if (name == "validate") return Command::validate;
    return std::nullopt;
}

std::string to_string(Command c) {
    switch (c) {
    case Command::e2: return "e2";
    case Command::birefringence: return "birefringence";
    case Command::propagate: return "propagate";
    case Command::ambient: return "ambient";
    case Command::presets: return "presets";
    case Command::validate: return "validate";
    }
    return "?";
}

std::vector<double> SweepSpec::values() const {
    if (points < 1) throw DomainError("sweep points must be >= 1");
    std::vector<double> xs(static_cast<size_t>(points));
    if (points == 1) {
        xs[0] = from;
        return xs;
    }
    const int last = points - 1;
    for (int i = 0; i <= last; ++i) {
        if (i == 0) xs[i] = from;
        else if (i == last) xs[i] = to;  // endpoints exact by construction
        else if (spacing == Spacing::linear)
            xs[i] = from + (to - from) * static_cast<double>(i) / last;
        else
            xs[i] = from * std::pow(to / from, static_cast<double>(i) / last);
    }
    return xs;
}

Scenario parse_config(const std::string& text, const std::string& origin) {
    IssueList issues(origin);
    std::vector<RawSection> sections = tokenize(text, issues);

    // A config with no content at all gets one pointed message instead of
    // a cascade of missing-field errors.
    bool any_entries = false;
    for (const RawSection& sec : sections)
        if (!sec.entries.empty()) any_entries = true;
    if (sections.size() == 1 && !any_entries && issues.empty())
        throw ConfigError({origin + ": empty config: needs at least a name, "
                                    "a [state] section and a [sweep] section"});

    Scenario s;
    for (const RawSection& sec : sections) {
        if (sec.name == "scenario") {
            apply_scenario_section(sec, s, issues);
        } else if (sec.name == "material") {
            apply_material_section(sec, s, issues);
        } else if (sec.name == "state") {
            apply_state_section(sec, s, issues);
        } else if (sec.name == "sweep") {
            apply_sweep_section(sec, s, issues);
        } else if (sec.name == "solver") {
            apply_solver_section(sec, s, issues);
        }
    }

    // Only run semantic validation on a syntactically clean config; half
    // parsed values would produce misleading follow-on errors.
    if (!issues.empty()) throw ConfigError(issues.take());

    std::vector<std::string> semantic = validate(s);
    if (!semantic.empty()) throw ConfigError(std::move(semantic));
    return s;
}

Scenario load_config_file(const std::string& path) {
    return parse_config(io::read_file(path), path);
}

std::string serialize(const Scenario& s) {
    std::string out;
    auto put = [&out](const char* key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += "\n";
    };
    auto num = [](double v) { return io::format_sci(v, 17); };

    put("name", s.name);
    switch (s.outputs) {
    case OutputFormat::csv: put("outputs", "csv"); break;
    case OutputFormat::json: put("outputs", "json"); break;
    case OutputFormat::both: put("outputs", "both"); break;
    }

    const MaterialSpec& m = s.material;
    if (!m.empty() || m.reference_coefficient_um4 ||
        m.coefficient_mode == CoefficientMode::reference) {
        out += "\n[material]\n";
        if (m.preset) put("preset", *m.preset);
        if (m.file) put("file", *m.file);
        for (const auto& [key, value] : m.inline_entries) put(key.c_str(), value);
        put("quantum_coefficient",
            m.coefficient_mode == CoefficientMode::computed ? "computed"
                                                            : "reference");
        if (m.reference_coefficient_um4)
            put("reference_coefficient_um4", num(*m.reference_coefficient_um4));
    }

    if (s.state) {
        const StateSpec& st = *s.state;
        out += "\n[state]\n";
        put("type", state_type_name(st.type));
        switch (st.type) {
        case StateType::squeezed_beam:
            put("lambda_um", num(st.lambda_um));
            put("medium_index", num(st.medium_index));
            put("q", num(st.q));
            put("eta", num(st.eta));
            put("delta_k_over_k", num(st.delta_k_over_k));
            put("delta_theta", num(st.delta_theta));
            break;
        case StateType::coherent:
            put("amplitude", num(st.amplitude));
            put("e0", num(st.e0));
            put("omega", num(st.omega));
            put("k", num(st.k));
            break;
        case StateType::single_squeezed:
            put("q", num(st.q));
            put("eta", num(st.eta));
            put("e0", num(st.e0));
            put("omega", num(st.omega));
            put("k", num(st.k));
            break;
        case StateType::mode_set:
            put("volume", num(st.volume));
            put("position", num(st.position[0]) + " " + num(st.position[1]) +
                                " " + num(st.position[2]));
            for (const qstates::Mode& mode : st.modes)
                put("mode", num(mode.k[0]) + " " + num(mode.k[1]) + " " +
                                num(mode.k[2]) + " " + num(mode.omega) + " " +
                                num(mode.q) + " " + num(mode.eta));
            break;
        case StateType::thermal:
            break;
        case StateType::casimir:
            if (st.lambda_p_um) put("lambda_p_um", num(*st.lambda_p_um));
            break;
        }
    }

    out += "\n[sweep]\n";
    switch (s.sweep.axis) {
    case SweepAxis::time: put("axis", "t"); break;
    case SweepAxis::temperature: put("axis", "T"); break;
    case SweepAxis::distance: put("axis", "z"); break;
    }
    put("from", num(s.sweep.from));
    put("to", num(s.sweep.to));
    put("points", std::to_string(s.sweep.points));
    put("spacing", s.sweep.spacing == Spacing::linear ? "linear" : "log");
    put("y", num(s.sweep.y));

    out += "\n[solver]\n";
    put("points", std::to_string(s.solver.points));
    put("length", num(s.solver.length));
    put("cfl", num(s.solver.cfl));
    if (s.solver.dt) put("dt", num(*s.solver.dt));
    put("v0", num(s.solver.v0));
    put("amplitude", num(s.solver.amplitude));
    put("k_mod", num(s.solver.k_mod));
    put("omega_mod", num(s.solver.omega_mod));
    put("t_end", num(s.solver.t_end));
    put("snapshots", std::to_string(s.solver.snapshots));
    put("carrier", num(s.solver.carrier));
    put("velocity_form",
        s.solver.velocity_form == propagate::VelocityForm::reciprocal
            ? "reciprocal"
            : "inverse_sqrt");
    return out;
}

media::Material resolve_material(const MaterialSpec& spec) {
    int sources = (spec.preset ? 1 : 0) + (spec.file ? 1 : 0) +
                  (spec.inline_entries.empty() ? 0 : 1);
    if (sources == 0)
        throw ConfigError({"[material] no material given (preset, file or "
                           "inline entries)"});
    if (sources > 1)
        throw ConfigError({"[material] choose exactly one of preset, file or "
                           "inline entries"});
    if (spec.preset) {
        if (*spec.preset == "cdgeas2") return media::cdgeas2();
        throw ConfigError({"[material] unknown material preset '" + *spec.preset +
                           "' (available: cdgeas2)"});
    }
    if (spec.file) return media::load_material_file(*spec.file);
    std::string text;
    for (const auto& [key, value] : spec.inline_entries)
        text += key + " = " + value + "\n";
    return media::parse_material_text(text, "[material]");
}

std::vector<std::string> validate(const Scenario& s) {
    std::vector<std::string> issues;
    auto add = [&issues](const std::string& m) { issues.push_back(m); };

    if (s.name.empty()) {
        add("a top-level 'name = <scenario name>' entry is required");
    } else if (s.name.find_first_not_of(
                   "abcdefghijklmnopqrstuvwxyz"
                   "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789._-") !=
               std::string::npos) {
        add("name may only use letters, digits, '.', '_' and '-' (it names "
            "the output files)");
    }

    const MaterialSpec& m = s.material;
    bool material_present = !m.empty() || m.reference_coefficient_um4 ||
                            m.coefficient_mode == CoefficientMode::reference;
    if (material_present) {
        if (m.coefficient_mode == CoefficientMode::reference &&
            !m.reference_coefficient_um4)
            add("[material] quantum_coefficient = reference needs "
                "reference_coefficient_um4");
        if (m.coefficient_mode == CoefficientMode::computed &&
            m.reference_coefficient_um4)
            add("[material] reference_coefficient_um4 is set but "
                "quantum_coefficient is computed; pick one");
        if (!m.empty()) {
            try {
                media::Material mat = resolve_material(m);
                for (const std::string& w : mat.validate())
                    add("[material] " + w);
            } catch (const ConfigError& e) {
                for (const std::string& issue : e.issues()) add(issue);
            }
            // FileError propagates: a missing material file is an
            // environment problem, not a config semantics problem.
        } else if (m.coefficient_mode == CoefficientMode::computed) {
            add("[material] quantum_coefficient = computed needs a material "
                "(preset, file or inline entries)");
        }
    }

    if (s.state) {
        const StateSpec& st = *s.state;
        switch (st.type) {
        case StateType::squeezed_beam:
            try {
                qstates::SqueezedBeam::in_medium(st.lambda_um, st.medium_index,
                                                 st.q, st.eta, st.delta_k_over_k,
                                                 st.delta_theta)
                    .check();
            } catch (const Error& e) {
                add(std::string("[state] ") + e.what());
            }
            break;
        case StateType::coherent:
            if (st.omega <= 0) add("[state] coherent omega must be positive");
            if (st.k <= 0) add("[state] coherent k must be positive");
            if (st.e0 < 0) add("[state] coherent e0 must be >= 0");
            break;
        case StateType::single_squeezed:
            if (st.omega <= 0) add("[state] single_squeezed omega must be positive");
            if (st.k <= 0) add("[state] single_squeezed k must be positive");
            if (st.e0 < 0) add("[state] single_squeezed e0 must be >= 0");
            if (st.q < 0) add("[state] single_squeezed q must be >= 0");
            break;
        case StateType::mode_set:
            if (st.volume <= 0) add("[state] mode_set volume must be positive");
            if (st.modes.empty()) add("[state] mode_set needs at least one mode");
            for (size_t i = 0; i < st.modes.size(); ++i) {
                if (st.modes[i].omega <= 0)
                    add("[state] mode " + std::to_string(i + 1) +
                        ": omega must be positive");
                if (st.modes[i].q < 0)
                    add("[state] mode " + std::to_string(i + 1) +
                        ": q must be >= 0");
            }
            break;
        case StateType::thermal:
            break;
        case StateType::casimir:
            if (st.lambda_p_um && *st.lambda_p_um <= 0)
                add("[state] lambda_p_um must be positive");
            break;
        }

        SweepAxis want = SweepAxis::time;
        if (st.type == StateType::thermal) want = SweepAxis::temperature;
        if (st.type == StateType::casimir) want = SweepAxis::distance;
        if (s.sweep.axis != want) {
            const char* axis_name = want == SweepAxis::time          ? "t"
                                    : want == SweepAxis::temperature ? "T"
                                                                     : "z";
            add(std::string("[sweep] state type '") + state_type_name(st.type) +
                "' sweeps axis " + axis_name);
        }
    }

    if (s.sweep.points < 1) add("[sweep] points must be >= 1");
    if (s.sweep.points > 1 && !(s.sweep.to > s.sweep.from))
        add("[sweep] to must exceed from");
    if (s.sweep.spacing == Spacing::log && s.sweep.from <= 0)
        add("[sweep] log spacing needs from > 0");
    if (s.sweep.axis == SweepAxis::temperature && s.sweep.from < 0)
        add("[sweep] temperatures must be >= 0");
    if (s.sweep.axis == SweepAxis::distance && s.sweep.from <= 0)
        add("[sweep] distances must be positive");

    const SolverSpec& sol = s.solver;
    try {
        propagate::ProbeGrid{sol.length, sol.points, sol.cfl, sol.dt}.check();
    } catch (const Error& e) {
        add(std::string("[solver] ") + e.what());
    }
    try {
        propagate::ModulationModel{sol.amplitude, sol.k_mod, sol.omega_mod}.check();
    } catch (const Error& e) {
        add(std::string("[solver] ") + e.what());
    }
    if (sol.v0 <= 0) add("[solver] v0 must be positive");
    if (sol.t_end <= 0) add("[solver] t_end must be positive");
    if (sol.snapshots < 2) add("[solver] snapshots must be >= 2");
    if (!(sol.carrier >= 1.0) ||
        std::abs(sol.carrier - std::round(sol.carrier)) > 1e-9)
        add("[solver] carrier must be a whole number of wavelengths >= 1 "
            "(the domain is periodic)");
    if (sol.amplitude != 0.0) {
        double cycles = sol.k_mod * sol.length / two_pi;
        if (std::abs(cycles - std::round(cycles)) > 1e-9)
            add("[solver] k_mod must fit a whole number of modulation "
                "wavelengths into length (the domain is periodic)");
    }

    return issues;
}

namespace {

void write_series(const io::JsonMeta& meta, const io::Table& table,
                  const Scenario& s, const RunOptions& opt, OutputFormat fmt,
                  RunResult& result) {
    if (fmt == OutputFormat::csv || fmt == OutputFormat::both) {
        std::string path = join_path(opt.out_dir, s.name + ".csv");
        io::write_file(path, io::to_csv(table, opt.precision));
        result.files.push_back(path);
    }
    if (fmt == OutputFormat::json || fmt == OutputFormat::both) {
        std::string path = join_path(opt.out_dir, s.name + ".json");
        io::write_file(path, io::to_json(meta, table, opt.precision));
        result.files.push_back(path);
    }
}

io::Table run_e2_series(const Scenario& s, RunResult& result) {
    const StateSpec& st = *s.state;
    std::vector<double> ts = s.sweep.values();
    std::vector<double> e2(ts.size());
    const units::Unit um4 = units::Unit::microns(-4);
    double y = s.sweep.y;

    switch (st.type) {
    case StateType::squeezed_beam: {
        qstates::SqueezedBeam b = qstates::SqueezedBeam::in_medium(
            st.lambda_um, st.medium_index, st.q, st.eta, st.delta_k_over_k,
            st.delta_theta);
        for (const std::string& w : b.warnings()) result.warnings.push_back(w);
        map_values(ts, e2, [&, y](double t) {
            return qstates::e2_squeezed_beam(b, t, y).value_in(um4);
        });
        break;
    }
    case StateType::mode_set: {
        qstates::ModeSet set{st.volume, st.modes};
        y = st.position[1];
        map_values(ts, e2, [&](double t) {
            return qstates::e2_mode_sum(set, t, st.position).value_in(um4);
        });
        break;
    }
    case StateType::coherent: {
        qstates::CoherentMode c{st.amplitude, st.e0, st.omega, st.k};
        map_values(ts, e2, [&, y](double t) {
            return qstates::e2_coherent(c, t, y).value_in(um4);
        });
        break;
    }
    case StateType::single_squeezed: {
        map_values(ts, e2, [&, y](double t) {
            return qstates::e2_single_mode_squeezed(st.q, st.eta, st.e0, t, y,
                                                    st.omega, st.k)
                .value_in(um4);
        });
        break;
    }
    default:
        throw ConfigError({"state type '" + std::string(state_type_name(st.type)) +
                           "' is served by the ambient command"});
    }

    io::Table table;
    table.columns = {"t", "y", "e2"};
    table.data.resize(3);
    table.data[0] = std::move(ts);
    table.data[1].assign(e2.size(), y);
    table.data[2] = std::move(e2);
    return table;
}

io::Table run_ambient_series(const Scenario& s) {
    const StateSpec& st = *s.state;
    std::vector<double> xs = s.sweep.values();
    std::vector<double> e2(xs.size());
    const units::Unit um4 = units::Unit::microns(-4);

    io::Table table;
    if (st.type == StateType::thermal) {
        map_values(xs, e2, [&](double t_kelvin) {
            return ambient::e2_thermal({t_kelvin, units::Unit::kelvin()})
                .value_in(um4);
        });
        table.columns = {"T", "e2"};
    } else if (st.type == StateType::casimir) {
        map_values(xs, e2, [&](double z) {
            return ambient::e2_casimir(z, st.lambda_p_um).e2_total.value_in(um4);
        });
        table.columns = {"z", "e2"};
    } else {
        throw ConfigError({"state type '" + std::string(state_type_name(st.type)) +
                           "' is served by the e2 command"});
    }
    table.data.resize(2);
    table.data[0] = std::move(xs);
    table.data[1] = std::move(e2);
    return table;
}

}  // namespace

RunResult run_scenario(const Scenario& s, Command cmd, const RunOptions& opt) {
    {
        std::vector<std::string> issues = validate(s);
        if (!issues.empty()) throw ConfigError(std::move(issues));
    }
    if (cmd == Command::presets || cmd == Command::validate)
        throw ConfigError({"command '" + to_string(cmd) +
                           "' does not produce scenario output"});

    try {
        std::filesystem::create_directories(opt.out_dir);
    } catch (const std::filesystem::filesystem_error& e) {
        throw FileError("cannot create output directory '" + opt.out_dir +
                        "': " + e.what());
    }

    RunResult result;
    OutputFormat fmt = opt.format.value_or(s.outputs);
    io::JsonMeta meta{library_version, io::fnv1a64_hex(serialize(s)), s.name,
                      to_string(cmd)};

    switch (cmd) {
    case Command::e2: {
        if (!s.state) throw ConfigError({"the e2 command needs a [state] section"});
        io::Table table = run_e2_series(s, result);
        write_series(meta, table, s, opt, fmt, result);
        break;
    }
    case Command::birefringence: {
        if (!s.state)
            throw ConfigError({"the birefringence command needs a [state] section"});
        if (s.material.empty() &&
            s.material.coefficient_mode == CoefficientMode::computed)
            throw ConfigError({"the birefringence command needs a [material] block"});
        double coeff;
        if (s.material.coefficient_mode == CoefficientMode::reference) {
            coeff = *s.material.reference_coefficient_um4;
        } else {
            media::Material mat = resolve_material(s.material);
            coeff = media::quantum_coefficient(mat).value_in(units::Unit::microns(4));
        }

        io::Table table;
        if (is_quantum_state(s.state->type)) {
            table = run_e2_series(s, result);
            table.columns[2] = "delta_n";
        } else {
            table = run_ambient_series(s);
            table.columns[1] = "delta_n";
        }
        for (double& v : table.data.back()) v *= coeff;
        write_series(meta, table, s, opt, fmt, result);
        break;
    }
    case Command::ambient: {
        if (!s.state)
            throw ConfigError({"the ambient command needs a [state] section"});
        io::Table table = run_ambient_series(s);
        write_series(meta, table, s, opt, fmt, result);
        break;
    }
    case Command::propagate: {
        const SolverSpec& sol = s.solver;
        propagate::ProbeGrid grid{sol.length, sol.points, sol.cfl, sol.dt};
        propagate::ModulationModel mod{sol.amplitude, sol.k_mod, sol.omega_mod};
        double wavenumber = two_pi * sol.carrier / sol.length;
        auto init = propagate::InitialCondition::travelling_cosine(wavenumber, sol.v0);
        std::vector<propagate::Snapshot> snaps = propagate::run(
            grid, mod, sol.v0, sol.velocity_form, init, sol.t_end, sol.snapshots);

        io::Table tsnap;
        tsnap.columns = {"t", "z", "E", "f"};
        tsnap.data.resize(4);
        size_t total = snaps.size() * static_cast<size_t>(sol.points);
        for (auto& col : tsnap.data) col.reserve(total);
        for (const propagate::Snapshot& snap : snaps) {
            for (size_t i = 0; i < snap.z.size(); ++i) {
                tsnap.data[0].push_back(snap.time);
                tsnap.data[1].push_back(snap.z[i]);
                tsnap.data[2].push_back(snap.field[i]);
                tsnap.data[3].push_back(snap.modulation[i]);
            }
        }

        propagate::Spectrum spec = propagate::spectrum(snaps.back());
        io::Table tspec;
        tspec.columns = {"mode_index", "magnitude"};
        tspec.data.resize(2);
        for (size_t i = 0; i < spec.magnitude.size(); ++i) {
            tspec.data[0].push_back(static_cast<double>(i));
            tspec.data[1].push_back(spec.magnitude[i]);
        }

        if (fmt == OutputFormat::csv || fmt == OutputFormat::both) {
            std::string p1 = join_path(opt.out_dir, s.name + "_snapshots.csv");
            io::write_file(p1, io::to_csv(tsnap, opt.precision));
            result.files.push_back(p1);
            std::string p2 = join_path(opt.out_dir, s.name + "_spectrum.csv");
            io::write_file(p2, io::to_csv(tspec, opt.precision));
            result.files.push_back(p2);
        }
        if (fmt == OutputFormat::json || fmt == OutputFormat::both) {
            std::string p3 = join_path(opt.out_dir, s.name + ".json");
            io::write_file(p3, io::to_json(meta, tsnap, opt.precision));
            result.files.push_back(p3);
        }
        break;
    }
    case Command::presets:
    case Command::validate:
        break;  // unreachable, rejected above
    }
    return result;
}

}  // namespace fluctoptics::scenario
