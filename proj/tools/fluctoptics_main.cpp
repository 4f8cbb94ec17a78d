#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fluctoptics/errors.hpp"
#include "fluctoptics/io.hpp"
#include "fluctoptics/presets.hpp"
#include "fluctoptics/scenario.hpp"

// Exit codes: 0 success, 1 numerical abort, 2 config problem, 66 missing
// input file.

namespace fo = fluctoptics;
using fo::scenario::Command;

namespace {

struct CommonOpts {
    std::string config;
    std::string preset;
    std::string out = ".";
    std::string format;
};

void add_scenario_options(CLI::App* sub, CommonOpts& o, bool with_output) {
    sub->add_option("--config", o.config, "scenario config file (INI)");
    sub->add_option("--preset", o.preset, "built-in scenario name");
    if (with_output) {
        sub->add_option("--out", o.out, "output directory")->capture_default_str();
        sub->add_option("--format", o.format, "csv, json or both")
            ->check(CLI::IsMember({"csv", "json", "both"}));
    }
}

fo::scenario::Scenario load_scenario(const CommonOpts& o) {
    if (!o.config.empty() && !o.preset.empty())
        throw fo::ConfigError({"--config and --preset are mutually exclusive"});
    if (o.config.empty() && o.preset.empty())
        throw fo::ConfigError({"one of --config or --preset is required"});
    if (!o.preset.empty()) {
        std::optional<fo::scenario::Scenario> s = fo::scenario::find_preset(o.preset);
        if (!s) {
            std::vector<std::string> issues;
            issues.push_back("unknown preset '" + o.preset + "'");
            for (const fo::scenario::Preset& p : fo::scenario::presets())
                issues.push_back("available preset: " + p.name);
            throw fo::ConfigError(std::move(issues));
        }
        return *s;
    }
    return fo::scenario::load_config_file(o.config);
}

int env_precision() {
    const char* env = std::getenv("FLUCTOPTICS_PRECISION");
    if (!env || !*env) return fo::io::default_precision;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 17)
        throw fo::ConfigError({"FLUCTOPTICS_PRECISION must be an integer in "
                               "[1, 17], got '" +
                               std::string(env) + "'"});
    return static_cast<int>(v);
}

std::optional<fo::scenario::OutputFormat> parse_format(const std::string& f) {
    if (f.empty()) return std::nullopt;
    if (f == "csv") return fo::scenario::OutputFormat::csv;
    if (f == "json") return fo::scenario::OutputFormat::json;
    return fo::scenario::OutputFormat::both;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mean squared vacuum fields, Kerr birefringence and "
                 "modulated 1D propagation"};
    app.set_version_flag("--version", std::string(fo::scenario::library_version));
    app.require_subcommand(1);

    CommonOpts o;
    bool dump = false;

    CLI::App* cmd_e2 =
        app.add_subcommand("e2", "mean squared field series for a state");
    CLI::App* cmd_bir = app.add_subcommand(
        "birefringence", "delta n series for a material and state");
    CLI::App* cmd_prop = app.add_subcommand(
        "propagate", "1D modulated wave run: snapshots and spectrum");
    CLI::App* cmd_amb = app.add_subcommand(
        "ambient", "thermal or mirror-induced mean squared field");
    CLI::App* cmd_presets =
        app.add_subcommand("presets", "list built-in scenarios");
    CLI::App* cmd_validate = app.add_subcommand(
        "validate", "check a config and print its fingerprint");

    add_scenario_options(cmd_e2, o, true);
    add_scenario_options(cmd_bir, o, true);
    add_scenario_options(cmd_prop, o, true);
    add_scenario_options(cmd_amb, o, true);
    add_scenario_options(cmd_validate, o, false);
    cmd_validate->add_flag("--dump", dump,
                           "print the canonical config instead of the summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        int precision = env_precision();

        if (cmd_presets->parsed()) {
            for (const fo::scenario::Preset& p : fo::scenario::presets())
                std::cout << p.name << "\n    " << p.description << "\n";
            return 0;
        }

        if (cmd_validate->parsed()) {
            fo::scenario::Scenario s = load_scenario(o);
            std::vector<std::string> issues = fo::scenario::validate(s);
            if (!issues.empty()) throw fo::ConfigError(std::move(issues));
            std::string canonical = fo::scenario::serialize(s);
            if (dump) {
                std::cout << canonical;
            } else {
                std::cout << "ok: " << s.name << " config_hash "
                          << fo::io::fnv1a64_hex(canonical) << "\n";
            }
            return 0;
        }

        Command cmd = cmd_e2->parsed()     ? Command::e2
                      : cmd_bir->parsed()  ? Command::birefringence
                      : cmd_prop->parsed() ? Command::propagate
                                           : Command::ambient;
        fo::scenario::RunOptions opt;
        opt.out_dir = o.out;
        opt.format = parse_format(o.format);
        opt.precision = precision;

        fo::scenario::Scenario s = load_scenario(o);
        fo::scenario::RunResult res = fo::scenario::run_scenario(s, cmd, opt);
        for (const std::string& w : res.warnings)
            std::cerr << "warning: " << w << "\n";
        for (const std::string& f : res.files) std::cout << "wrote " << f << "\n";
        return 0;
    } catch (const fo::ConfigError& e) {
        for (const std::string& issue : e.issues())
            std::cerr << "config error: " << issue << "\n";
        return 2;
    } catch (const fo::FileError& e) {
        std::cerr << "file error: " << e.what() << "\n";
        return 66;
    } catch (const fo::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 1;
    } catch (const fo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
