#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"

#include "quadwg/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <thread>

int main(int argc, char** argv)
{
    using namespace quadwg;

    CLI::App app{"quadwg: two-photon waveguide emitter simulations"};
    app.require_subcommand(0, 1);
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    bool print_defaults = false;
    app.add_option("-c,--config", config_path, "INI configuration file");
    app.add_option("-o,--out", out_dir, "output directory (default $QUADWG_OUT_DIR or out/<command>)");
    app.add_option("-j,--threads", threads, "worker threads for sweeps")->check(CLI::Range(1u, 1024u));
    app.add_option("-s,--set", overrides, "override section.key=value (repeatable)");
    app.add_flag("--print-defaults", print_defaults, "print an annotated configuration template");
    for (const auto& name : app::command_names()) {
        app.add_subcommand(name)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (print_defaults) {
        std::cout << app::defaults_text();
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << "no command given; choose one of emit, scatter, sweep-reflection, entangle, gate, verify\n";
        return 1;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        app::Config cfg;
        if (!config_path.empty()) {
            cfg.load_file(config_path);
        }
        for (const auto& s : overrides) {
            cfg.set(s);
        }
        if (out_dir.empty()) {
            const char* env = std::getenv("QUADWG_OUT_DIR");
            out_dir = env && *env ? std::string(env) : std::string("out");
            out_dir += "/" + command;
        }
        app::OutputDir out(out_dir);
        const auto result = app::run_command(command, cfg, out, threads);
        std::cout << result.summary << "\n";
        return result.passed ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.is_numerical() ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
