// kickrot: kicked dipolar rotor pairs from the command line.
//
//   kickrot quantum --gamma 30 --arrangement A
//   kickrot preset fig2a
//   kickrot squeeze --config run.cfg --set n_pulses=3
//
// Output goes below `out` (default: $KICKROT_OUT_DIR, else ./out).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "kickrot/experiment.hpp"

namespace {

struct CommonOptions {
    std::string config_file;
    std::vector<std::string> sets;
    std::map<std::string, std::string> flags;
    bool print_config = false;
};

void add_common(CLI::App* app, CommonOptions& opts) {
    app->add_option("-c,--config", opts.config_file, "key = value file");
    app->add_option("-s,--set", opts.sets, "override one key, e.g. --set gamma=3")->take_all();
    app->add_flag("--print-config", opts.print_config, "print the resolved configuration and exit");
    static const char* keys[] = {"arrangement", "gamma",         "kick_strength", "n_pulses",
                                 "levels",      "fourier_truncation", "grid_size", "bessel_cutoff",
                                 "t_max",       "dt",            "ensemble_size", "step",
                                 "density_size", "out"};
    for (const char* key : keys) {
        std::string flag = std::string("--") + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        app->add_option(flag, opts.flags[key], std::string("same as --set ") + key + "=...");
    }
    app->add_flag_callback("--svg", [&opts] { opts.flags["svg"] = "true"; }, "also write SVG heatmaps");
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw kickrot::IoError("cannot read config file " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

kickrot::ExperimentSpec resolve(const CommonOptions& opts, const std::string& mode, const std::string& preset) {
    std::string text;
    if (const char* env = std::getenv("KICKROT_OUT_DIR"); env && *env) text += "out = " + std::string(env) + "\n";
    if (!opts.config_file.empty()) text += read_text(opts.config_file);

    std::vector<kickrot::Setting> overrides = {{"mode", mode}};
    if (!preset.empty()) overrides.emplace_back("preset", preset);
    for (const auto& [key, value] : opts.flags)
        if (!value.empty()) overrides.emplace_back(key, value);
    for (const auto& s : opts.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw kickrot::ConfigError("--set: expected key=value, got '" + s + "'");
        overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    return kickrot::parse_config(text, overrides);
}

int execute(const kickrot::ExperimentSpec& spec, bool print_config) {
    if (print_config) {
        std::cout << kickrot::echo_config(spec);
        return kickrot::exit_ok;
    }
    for (const auto& report : kickrot::run(spec)) {
        std::cout << report.name << ": " << report.summary << '\n';
        for (const auto& f : report.files) std::cout << "  wrote " << f.string() << '\n';
    }
    return kickrot::exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kicked dipole-coupled planar rotor pairs: quantum and classical orientation, densities, squeezing"};
    app.footer("Configuration keys (default):\n" + kickrot::describe_keys() +
               "\nExit codes: 0 ok, 1 configuration error, 2 invariant violation, 3 I/O error.");
    app.require_subcommand(1);

    CommonOptions opts;
    std::string mode, preset;
    const std::pair<const char*, const char*> modes[] = {
        {"quantum", "orientation factor O(t) after one pulse"},
        {"classical", "classical ensemble orientation factor"},
        {"density", "(theta1, theta2) densities at t = 0 and at the focal time"},
        {"squeeze", "accumulative squeezing by a pulse train"},
        {"validate", "run the built-in self checks"}};
    for (const auto& [name, help] : modes) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub, opts);
        sub->callback([&mode, n = std::string(name)] { mode = n; });
    }
    auto* preset_cmd = app.add_subcommand("preset", "run a named parameter sweep");
    preset_cmd->add_option("name", preset, "fig2a | fig2b | fig3 | fig4 | fig5")
        ->required()
        ->check(CLI::IsMember({"fig2a", "fig2b", "fig3", "fig4", "fig5"}));
    add_common(preset_cmd, opts);
    preset_cmd->callback([&mode] { mode = "quantum"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kickrot::exit_ok : kickrot::exit_config;
    }

    try {
        return execute(resolve(opts, mode, preset), opts.print_config);
    } catch (const kickrot::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kickrot::exit_config;
    } catch (const kickrot::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kickrot::exit_io;
    } catch (const kickrot::InvariantViolation& e) {
        std::cerr << "invariant violated: " << e.what() << '\n';
        return kickrot::exit_invariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kickrot::exit_invariant;
    }
}
