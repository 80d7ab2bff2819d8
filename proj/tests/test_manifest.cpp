#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "lle/cli/config.hpp"
#include "lle/cli/manifest.hpp"

using namespace lle::cli;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const char* name) {
    auto p = fs::temp_directory_path() / ("lle_test_" + std::string(name));
    fs::remove_all(p);
    return p;
}
}  // namespace

TEST_SUITE("manifest") {

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("outputs are recorded with their hashes") {
    const auto dir = scratch("records");
    OutputSet out(dir);
    out.write_text("a.csv", "x,y\n1,2\n", "table");
    out.write_json("sub/b.json", {{"k", 1}}, "object");
    REQUIRE(out.records().size() == 2);
    CHECK(out.records()[0].sha256 == sha256_hex("x,y\n1,2\n"));
    CHECK(out.records()[0].bytes == 8);
    CHECK(fs::exists(dir / "sub" / "b.json"));
    fs::remove_all(dir);
}

TEST_CASE("hash is independent of output order and sensitive to content") {
    OutputRecord a{"a.csv", sha256_hex("1"), 1, ""}, b{"b.csv", sha256_hex("2"), 1, ""};
    CHECK(manifest_hash("cfg", {a, b}) == manifest_hash("cfg", {b, a}));
    CHECK(manifest_hash("cfg", {a, b}) != manifest_hash("cfg2", {a, b}));
    OutputRecord b2 = b;
    b2.sha256 = sha256_hex("3");
    CHECK(manifest_hash("cfg", {a, b}) != manifest_hash("cfg", {a, b2}));
}

TEST_CASE("manifest contents") {
    const auto dir = scratch("manifest");
    OutputSet out(dir);
    out.write_text("a.txt", "hello", "greeting");
    ManifestInput in;
    in.kind = "trivial-branch";
    in.config_canonical = "[model]\nzeta=1\n";
    in.wall_time_s = 0.5;
    in.status = "ok";
    const auto m = write_manifest(out, in);
    CHECK(m["kind"] == "trivial-branch");
    CHECK(m["hash"] == manifest_hash(in.config_canonical, out.records()));
    CHECK(m["outputs"].size() == 1);
    CHECK(m["versions"].contains("eigen"));
    CHECK(m["versions"].contains("fftw"));
    CHECK(fs::exists(dir / "manifest.json"));
    fs::remove_all(dir);
}

TEST_CASE("unwritable output directory is a config error") {
    const auto dir = scratch("blocker");
    { std::ofstream(dir) << "file"; }
    CHECK_THROWS_AS(OutputSet(dir / "x"), ConfigError);
    fs::remove_all(dir);
}

}
