// Command-line front end.  One subcommand per experiment kind plus `run`,
// which takes the kind from the config file.

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lle/cli/config.hpp"
#include "lle/cli/experiments.hpp"

namespace {

int config_failure(const std::string& msg) {
    std::cerr << nlohmann::json{{"error", "config"}, {"message", msg}}.dump() << "\n";
    return lle::cli::kExitConfig;
}

void print_schema() {
    for (const auto& e : lle::cli::schema()) {
        std::cout << e.key << " (" << lle::cli::to_string(e.type) << ")";
        if (!e.default_value.empty()) std::cout << " = " << e.default_value;
        std::cout << "  " << e.help << "  [env " << lle::cli::env_name(e.key) << "]\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuation toolkit for periodic traveling waves of the dual-pumped Lugiato-Lefever equation"};
    app.require_subcommand(1);

    std::string config_path, out_dir, target;
    std::optional<unsigned> threads;
    std::optional<std::size_t> grid;
    bool verbose = false;
    std::vector<std::string> sets;

    auto add_common = [&](CLI::App* sc) {
        sc->add_option("--config", config_path, "config file")->check(CLI::ExistingFile);
        sc->add_option("--out", out_dir, "output directory (output.dir)");
        sc->add_option("--threads", threads, "worker threads (run.threads)");
        sc->add_option("--n", grid, "grid size (grid.n)");
        sc->add_flag("--verbose", verbose, "progress messages on stderr");
        sc->add_option("--set", sets, "override section.key=value; repeatable");
    };

    std::vector<CLI::App*> kinds;
    for (const auto& k : lle::cli::experiment_kinds()) {
        auto* sc = app.add_subcommand(k, "run a " + k + " experiment");
        add_common(sc);
        if (k == "reproduce-fig") sc->add_option("--target", target, "fig1 .. fig6");
        kinds.push_back(sc);
    }
    auto* run_sc = app.add_subcommand("run", "run the experiment named by experiment.kind");
    add_common(run_sc);
    auto* schema_sc = app.add_subcommand("schema", "list configuration keys");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return lle::cli::kExitConfig;
    }

    if (*schema_sc) {
        print_schema();
        return 0;
    }

    try {
        lle::cli::Config cfg = config_path.empty() ? lle::cli::Config{} : lle::cli::Config::load(config_path);
        cfg.apply_env(lle::cli::process_env(), {"LLE_FORCE_SCALAR"});
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw lle::cli::ConfigError("--set expects section.key=value, got '" + s + "'");
            cfg.set(s.substr(0, eq), s.substr(eq + 1));
        }
        if (!out_dir.empty()) cfg.set("output.dir", out_dir);
        if (threads) cfg.set("run.threads", std::to_string(*threads));
        if (grid) cfg.set("grid.n", std::to_string(*grid));
        if (verbose) cfg.set("run.verbose", "true");
        for (auto* sc : kinds)
            if (*sc) cfg.set("experiment.kind", sc->get_name());
        if (!target.empty()) cfg.set("experiment.target", target);

        const auto res = lle::cli::run(cfg, [](const std::string& msg) { std::cerr << msg << "\n"; });
        for (const auto& err : res.errors) std::cerr << "error: " << err << "\n";
        std::cout << nlohmann::json{{"status", res.status},
                                    {"exit_code", res.exit_code},
                                    {"out", cfg.get_string("output.dir")},
                                    {"hash", res.manifest["hash"]},
                                    {"summary", res.summary}}
                         .dump()
                  << "\n";
        return res.exit_code;
    } catch (const lle::cli::ConfigError& e) {
        return config_failure(e.what());
    }
}
