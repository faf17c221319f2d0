#pragma once

#include "incite/corpus.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace incite {

inline constexpr std::string_view kVersion = "0.1.0";

struct PipelineConfig {
    // Inputs. Relative paths in a config file resolve against its directory.
    std::filesystem::path tweets;
    std::filesystem::path users;
    std::filesystem::path annotations;
    std::filesystem::path stances;
    std::filesystem::path following;
    std::filesystem::path lexica;
    std::filesystem::path embeddings;
    std::filesystem::path output;

    std::vector<EventLabel> events;  // empty: every event in the lexica file

    double tau = 0.7;
    int expand_max_iter = 10;
    int t = 2;
    int k = 3;
    double polarity_alpha = 0.005;
    std::uint64_t total_bjp = 14094;
    std::uint64_t total_inc = 12341;
    double stats_alpha = 0.05;
    int bootstrap = 2000;
    std::uint64_t seed = 20240101;
    std::vector<std::pair<std::string, std::string>> term_pairs;
    std::vector<std::string> description_terms;
};

/// Parses the INI document. Unknown sections or keys are a ConfigError.
PipelineConfig parse_config(std::istream& in, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& file);

/// Throws ConfigError when a parameter is out of range or an input is unreadable.
void validate(const PipelineConfig& config);

/// Order in which `all` runs the stages.
const std::vector<std::string>& stage_names();

/// Runs one subcommand (a stage name or "all"), writing artifacts and the
/// manifest under config.output. Progress goes to `log`, warnings to `warn`.
void run(std::string_view subcommand, const PipelineConfig& config, std::ostream& log, std::ostream& warn);

/// Exit status for an exception escaping run(): 2 config, 3 data, 4 numeric.
int exit_code_for(const std::exception& e);

void set_thread_count(int threads);

} // namespace incite
