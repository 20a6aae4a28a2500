// Command line front end: build | verify | rpk | report, driven by a JSON
// config. Everything is deterministic; --seedless is accepted for scripting
// symmetry but there is no RNG to disable.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "skewlab/skewlab.hpp"

namespace {

int run(const std::string& command, const std::string& config_path, const std::string& out_dir) {
    skewlab::ExperimentConfig cfg = skewlab::load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (command == "build") return skewlab::cmd_build(cfg, std::cout);
    if (command == "verify") return skewlab::cmd_verify(cfg, std::cout);
    if (command == "rpk") return skewlab::cmd_rpk(cfg, std::cout);
    if (command == "report") return skewlab::cmd_report(cfg, std::cout);
    throw skewlab::ConfigError("unknown command: " + command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skewlab: coboundary chains and skew products on the torus"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    bool seedless = true;

    const std::pair<const char*, const char*> commands[] = {
        {"build", "select the subsequence and write the coefficient chain and system spec"},
        {"verify", "run the configured identity, decay, and divergence checks"},
        {"rpk", "search for proximality certificates on torus pairs and finite systems"},
        {"report", "restate the verification report as CSV"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "experiment config JSON")->required();
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_flag("--seedless", seedless, "deterministic mode (always on; no RNG exists)");
    }

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, config_path, out_dir);
    } catch (const skewlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return skewlab::kExitConfig;
    } catch (const skewlab::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return skewlab::kExitConfig;
    } catch (const skewlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return skewlab::kExitCheckFailed;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return skewlab::kExitInternal;
    }
}
