#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "ckg/config.hpp"
#include "ckg/errors.hpp"
#include "ckg/runner.hpp"

namespace {

constexpr int EXIT_CONFIG = 1;
constexpr int EXIT_RUNTIME = 2;

std::string output_root() {
    const char* env = std::getenv("CKG_OUTPUT_ROOT");
    return env && *env ? env : "out";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral solver for N coupled nonlinear Klein-Gordon fields "
                 "with a transported coupling field"};
    app.require_subcommand(1);

    std::string config_path, run_out;
    CLI::App* cmd_run = app.add_subcommand("run", "execute one run from a config document");
    cmd_run->add_option("--config", config_path, "path to the run document")->required();
    cmd_run->add_option("--output-dir", run_out,
                        "where artifacts go (overrides output.dir in the document)");

    std::string preset_name, preset_out;
    CLI::App* cmd_preset = app.add_subcommand("preset", "execute a built-in experiment");
    cmd_preset->add_option("name", preset_name, "preset name (see list-presets)")->required();
    cmd_preset->add_option("--output-dir", preset_out, "where artifacts go");

    CLI::App* cmd_list = app.add_subcommand("list-presets", "list the built-in experiments");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help/error text itself
        return code == 0 ? 0 : EXIT_CONFIG;
    }

    try {
        if (cmd_list->parsed()) {
            for (const ckg::PresetInfo& p : ckg::preset_list())
                std::printf("%-15s %s\n", p.name.c_str(), p.summary.c_str());
            return 0;
        }
        if (cmd_run->parsed()) {
            ckg::RunConfig cfg = ckg::load_config(config_path);
            if (!run_out.empty())
                cfg.output_dir = run_out;
            if (cfg.output_dir.empty())
                cfg.output_dir = output_root() + "/run";
            const ckg::RunOutcome out = ckg::run(cfg);
            std::printf("status: %s (final step %ld, t = %g)\n", out.status.c_str(),
                        out.final_step, out.final_time);
            std::printf("artifacts: %s\n", cfg.output_dir.c_str());
            return out.completed() ? 0 : EXIT_RUNTIME;
        }
        const std::string root =
            !preset_out.empty() ? preset_out : output_root() + "/" + preset_name;
        const bool ok = ckg::run_preset(preset_name, root); // validates the name
        std::printf("preset %s: %s\n", preset_name.c_str(), ok ? "completed" : "failed");
        std::printf("artifacts: %s\n", root.c_str());
        return ok ? 0 : EXIT_RUNTIME;
    } catch (const ckg::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return EXIT_CONFIG;
    } catch (const ckg::ParamError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return EXIT_CONFIG;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return EXIT_RUNTIME;
    }
}
