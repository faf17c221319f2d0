#include "incite/error.hpp"
#include "incite/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

int main(int argc, char** argv) {
    CLI::App app{"Quantify dangerous speech amplification in retweet networks"};
    app.set_version_flag("--version", std::string(incite::kVersion));
    app.require_subcommand(1, 1);

    std::string config_path;
    std::vector<std::string> events;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    app.add_option("--config", config_path, "configuration file (default: $INCITE_CONFIG)");
    app.add_option("--event", events, "restrict to this event; repeatable");
    app.add_option("--out", out_dir, "output directory, overrides [paths] output");
    app.add_option("--seed", seed, "bootstrap seed, overrides [stats] seed");
    app.add_option("--threads", threads, "OpenMP threads")->check(CLI::NonNegativeNumber);

    std::vector<std::string> names = incite::stage_names();
    names.emplace_back("all");
    for (const auto& name : names) {
        app.add_subcommand(name, name == "all" ? "run every stage in order" : "run the " + name + " stage")
            ->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (config_path.empty()) {
            if (const char* env = std::getenv("INCITE_CONFIG"); env && *env) {
                config_path = env;
            } else {
                throw incite::ConfigError("no configuration: pass --config or set INCITE_CONFIG");
            }
        }
        auto config = incite::load_config(config_path);
        if (!events.empty()) {
            config.events.clear();
            for (const auto& e : events) {
                config.events.push_back(incite::EventLabel::parse(e));
            }
        }
        if (!out_dir.empty()) {
            config.output = out_dir;
        }
        if (seed) {
            config.seed = *seed;
        }
        incite::set_thread_count(threads);
        incite::run(app.get_subcommands().front()->get_name(), config, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return incite::exit_code_for(e);
    }
    return 0;
}
