// include/lle/cli/manifest.hpp
//
// Output bookkeeping: every file an experiment writes goes through
// OutputSet, and the manifest lists them with their SHA-256 digests.  The
// manifest hash covers the canonical config text (without run-environment
// keys such as the output directory) followed by the sorted (path, digest)
// list, so it is independent of wall time and of where the files went.

#pragma once

#include "json.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lle::cli {

std::string sha256_hex(std::string_view data);

struct OutputRecord {
    std::string path;  // relative to the output directory
    std::string sha256;
    std::size_t bytes = 0;
    std::string description;
};

class OutputSet {
public:
    // Creates the directory; throws ConfigError when it is not writable.
    explicit OutputSet(std::filesystem::path dir);

    const std::filesystem::path& dir() const { return dir_; }

    void write_text(const std::string& rel, const std::string& content, const std::string& description);
    void write_json(const std::string& rel, const nlohmann::json& j, const std::string& description);

    const std::vector<OutputRecord>& records() const { return records_; }

private:
    std::filesystem::path dir_;
    std::vector<OutputRecord> records_;
};

nlohmann::json versions();

struct ManifestInput {
    std::string kind;
    std::string config_canonical;  // echoed verbatim
    std::string config_hashed;     // hashed; defaults to config_canonical
    double wall_time_s = 0.0;
    int exit_code = 0;
    std::string status;
    std::vector<std::string> errors;
    nlohmann::json summary;
};

std::string manifest_hash(const std::string& config_canonical, const std::vector<OutputRecord>& outputs);

// Writes manifest.json into out.dir() and returns its contents.
nlohmann::json write_manifest(const OutputSet& out, const ManifestInput& in);

}  // namespace lle::cli
