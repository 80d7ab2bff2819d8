#include "lle/cli/manifest.hpp"

#include <openssl/evp.h>
#include <openssl/opensslv.h>

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <fstream>

#include "lle/cli/config.hpp"
#include "lle/kernels/kernels.hpp"
#include "lle/spectral.hpp"

#ifndef LLE_VERSION
#define LLE_VERSION "0.0.0"
#endif

namespace lle::cli {

std::string sha256_hex(std::string_view data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

OutputSet::OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_))
        throw ConfigError("output directory '" + dir_.string() + "' cannot be created");
    const auto probe = dir_ / ".write_probe";
    {
        std::ofstream f(probe);
        if (!f) throw ConfigError("output directory '" + dir_.string() + "' is not writable");
    }
    std::filesystem::remove(probe, ec);
}

void OutputSet::write_text(const std::string& rel, const std::string& content, const std::string& description) {
    const auto path = dir_ / rel;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f) throw std::runtime_error("failed writing '" + path.string() + "'");
    auto it = std::find_if(records_.begin(), records_.end(), [&](const OutputRecord& r) { return r.path == rel; });
    OutputRecord rec{rel, sha256_hex(content), content.size(), description};
    if (it != records_.end())
        *it = rec;
    else
        records_.push_back(std::move(rec));
}

void OutputSet::write_json(const std::string& rel, const nlohmann::json& j, const std::string& description) {
    write_text(rel, j.dump(2) + "\n", description);
}

nlohmann::json versions() {
    return {
        {"lle", LLE_VERSION},
        {"compiler", __VERSION__},
        {"cxx_standard", __cplusplus},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                      std::to_string(EIGEN_MINOR_VERSION)},
        {"fftw", spectral::backend_version()},
        {"openssl", OPENSSL_VERSION_TEXT},
        {"kernels", kernels::active().name},
    };
}

std::string manifest_hash(const std::string& config_canonical, const std::vector<OutputRecord>& outputs) {
    std::vector<const OutputRecord*> sorted;
    for (const auto& r : outputs) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->path < b->path; });
    std::string text = config_canonical;
    text += "--\n";
    for (auto* r : sorted) text += r->path + " " + r->sha256 + "\n";
    return sha256_hex(text);
}

nlohmann::json write_manifest(const OutputSet& out, const ManifestInput& in) {
    nlohmann::json outputs = nlohmann::json::array();
    for (const auto& r : out.records())
        outputs.push_back({{"path", r.path}, {"sha256", r.sha256}, {"bytes", r.bytes}, {"description", r.description}});
    nlohmann::json m = {
        {"kind", in.kind},
        {"status", in.status},
        {"exit_code", in.exit_code},
        {"config", in.config_canonical},
        {"versions", versions()},
        {"wall_time_s", in.wall_time_s},
        {"outputs", outputs},
        {"errors", in.errors},
        {"summary", in.summary},
        {"hash", manifest_hash(in.config_hashed.empty() ? in.config_canonical : in.config_hashed, out.records())},
    };
    std::ofstream f(out.dir() / "manifest.json", std::ios::binary);
    f << m.dump(2) << "\n";
    if (!f) throw std::runtime_error("failed writing manifest");
    return m;
}

}  // namespace lle::cli
