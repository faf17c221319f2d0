#pragma once

// Helpers for running the pipeline against the bundled fixture.

#include "incite/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>

namespace fixture {

namespace fs = std::filesystem;

inline fs::path dir() { return fs::path(INCITE_FIXTURE_DIR); }

inline fs::path config_path() { return dir() / "config.ini"; }

inline fs::path golden_dir() { return dir() / "golden"; }

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("incite-test-" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

inline std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Manifest with the completion timestamps removed.
inline nlohmann::json stable_manifest(const fs::path& p) {
    auto m = nlohmann::json::parse(read(p));
    for (auto& [name, stage] : m["stages"].items()) {
        stage.erase("completed_at");
    }
    return m;
}

/// File name -> contents, manifest excluded.
inline std::map<std::string, std::string> artifacts(const fs::path& d) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::directory_iterator(d)) {
        const auto name = entry.path().filename().string();
        if (name != "manifest.json") {
            out.emplace(name, read(entry.path()));
        }
    }
    return out;
}

inline incite::PipelineConfig config_into(const fs::path& out) {
    auto c = incite::load_config(config_path());
    c.output = out;
    return c;
}

} // namespace fixture
