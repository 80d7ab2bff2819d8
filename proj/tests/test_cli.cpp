#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"
#include "lle/cli/experiments.hpp"

using namespace lle::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("lle_cli_" + name);
    fs::remove_all(p);
    return p;
}

Config small(const std::string& text, const fs::path& out) {
    auto c = Config::parse(text);
    c.set("output.dir", out.string());
    return c;
}

json read_json(const fs::path& p) {
    std::ifstream is(p);
    return json::parse(is);
}

int run_binary(const std::string& args) {
    const std::string cmd = std::string(LLE_BINARY) + " " + args + " >/dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("trivial-branch end to end") {
    const auto out = scratch("trivial");
    const auto res = run(small("[experiment]\nkind=trivial-branch\n[trivial]\nf0_list=1,2\nt_count=101\n", out));
    CHECK(res.exit_code == kExitOk);
    CHECK(fs::exists(out / "trivial_curve.csv"));
    const auto m = read_json(out / "manifest.json");
    CHECK(m["status"] == "ok");
    CHECK(m["outputs"].size() == 2);
    CHECK(m["hash"].get<std::string>().size() == 64);
    const auto tp = read_json(out / "turning_points.json");
    CHECK(tp.dump().find("fstar") != std::string::npos);
    fs::remove_all(out);
}

TEST_CASE("hash is reproducible and independent of the output directory") {
    const std::string cfg = "[experiment]\nkind=sign-map\n[sign_map]\nt_count=201\n";
    const auto a = scratch("hash_a"), b = scratch("hash_b");
    const auto ra = run(small(cfg, a));
    auto cb = small(cfg, b);
    cb.set("run.threads", "3");
    const auto rb = run(cb);
    CHECK(ra.manifest["hash"] == rb.manifest["hash"]);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("continue at small n") {
    const auto out = scratch("continue");
    const auto res = run(small("[experiment]\nkind=continue\n[model]\nzeta=3\n[grid]\nn=32\n"
                               "[continuation]\nrecord_min_sv=false\n",
                               out));
    CHECK(res.exit_code == kExitOk);
    CHECK(fs::exists(out / "branches.csv"));
    fs::remove_all(out);
}

TEST_CASE("truncated branch gives partial results") {
    const auto out = scratch("partial");
    const auto res = run(small("[experiment]\nkind=continue\n[model]\nzeta=3\n[grid]\nn=16\n"
                               "[continuation]\nmax_steps=3\nrecord_min_sv=false\n",
                               out));
    CHECK(res.exit_code == kExitPartial);
    CHECK(res.status == "partial");
    CHECK_FALSE(res.errors.empty());
    CHECK(read_json(out / "manifest.json")["exit_code"] == kExitPartial);
    fs::remove_all(out);
}

TEST_CASE("numerical failure") {
    const auto out = scratch("failed");
    const auto res = run(small("[experiment]\nkind=locate-threshold\n[grid]\nn=32\n"
                               "[threshold]\nlo=2.9\nhi=3.0\nwidth=0.05\n"
                               "[continuation]\nrecord_min_sv=false\n",
                               out));
    CHECK(res.exit_code == kExitNumerical);
    CHECK(read_json(out / "manifest.json")["status"] == "failed");
    fs::remove_all(out);
}

TEST_CASE("configuration errors") {
    const auto out = scratch("config");
    CHECK_THROWS_AS(run(small("[experiment]\nkind=continue\n", out)), ConfigError);  // no zeta
    CHECK_THROWS_AS(run(small("[experiment]\nkind=nonsense\n", out)), ConfigError);
    CHECK_THROWS_AS(run(small("[experiment]\nkind=reproduce-fig\ntarget=fig99\n", out)), ConfigError);
    CHECK_THROWS_AS(run(small("[experiment]\nkind=bifurcation-scan\n[model]\nzeta=3.9\n[grid]\nn=31\n", out)),
                    ConfigError);
    fs::remove_all(out);
}

TEST_CASE("presets resolve to concrete kinds") {
    for (const auto& t : figure_targets()) {
        auto c = Config::parse("[experiment]\nkind=reproduce-fig\ntarget=" + t + "\n");
        const auto e = build_experiment(resolve_presets(c));
        CHECK(e.kind != "reproduce-fig");
        CHECK(e.target == t);
    }
}

TEST_CASE("binary exit codes") {
    const auto dir = scratch("bin");
    fs::create_directories(dir);
    const auto cfg = dir / "c.ini";
    std::ofstream(cfg) << "[experiment]\nkind=trivial-branch\n[trivial]\nt_count=51\n";
    const std::string out = " --out " + (dir / "o").string();
    CHECK(run_binary("run --config " + cfg.string() + out) == 0);
    CHECK(run_binary("trivial-branch" + out) == 0);
    CHECK(run_binary("run --config " + (dir / "missing.ini").string() + out) == 1);
    CHECK(run_binary("continue --n 32" + out) == 1);                       // zeta missing
    CHECK(run_binary("continue --set model.zeta=abc" + out) == 1);
    CHECK(run_binary("continue --set model.zeta=3 --n 16 --set continuation.max_steps=3 "
                     "--set continuation.record_min_sv=false" + out) == 3);
    CHECK(run_binary("locate-threshold --n 32 --set threshold.lo=2.9 --set threshold.hi=3.0 "
                     "--set threshold.width=0.05 --set continuation.record_min_sv=false" + out) == 2);
    CHECK(run_binary("schema") == 0);
    CHECK(run_binary("--bogus-flag") == 1);
    const std::string env = "LLE_GRID_N=notanumber ";
    CHECK(std::system((env + LLE_BINARY + " trivial-branch" + out + " >/dev/null 2>&1").c_str()) != 0);
    fs::remove_all(dir);
}

}
