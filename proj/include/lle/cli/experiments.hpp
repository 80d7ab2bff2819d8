// include/lle/cli/experiments.hpp
//
// Declarative experiment runner.  A Config is turned into an
// ExperimentConfig (validated), the named experiment writes its data files
// through an OutputSet, and a manifest.json closes the run.

#pragma once

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lle/cli/config.hpp"
#include "lle/continuation.hpp"
#include "lle/model.hpp"

namespace lle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitPartial = 3;

const std::vector<std::string>& experiment_kinds();
const std::vector<std::string>& figure_targets();

struct ExperimentConfig {
    std::string kind;
    std::string target;  // reproduce-fig only
    std::uint64_t seed = 1;

    Params params;
    std::optional<double> zeta;
    std::vector<double> zeta_list;
    std::size_t n = 256;
    ContinuationSettings continuation;
    std::vector<int> trivial_index;  // empty = all

    std::vector<double> trivial_f0_list;
    int trivial_t_count = 1999;
    double trivial_t_max = 0.999;

    double sign_t_min = -0.999, sign_t_max = 0.999;
    int sign_t_count = 3997;
    std::vector<double> sign_check_zeta;
    double sign_fd_step = 1e-3;
    std::size_t sign_check_n = 512;

    int bounds_multistart = 0;
    double bounds_inflation = 1.0;

    std::optional<double> threshold_lo, threshold_hi;
    double threshold_width = 0.01;

    double rank_tol = 1e-6;

    std::filesystem::path out_dir = "out";
    bool write_fields = false;
    unsigned threads = 1;
    bool verbose = false;
};

// Preset values for a reproduce-fig target.  Throws ConfigError for an
// unknown target.
Config figure_preset(const std::string& target);

// Overlays `user` on the preset of its experiment.target when the kind is
// reproduce-fig; otherwise returns user unchanged.
Config resolve_presets(const Config& user);

// Validates and converts.  Throws ConfigError.
ExperimentConfig build_experiment(const Config& cfg);

using Logger = std::function<void(const std::string&)>;

struct RunOutcome {
    int exit_code = kExitOk;
    std::string status;  // "ok", "partial", "failed"
    std::vector<std::string> errors;
    nlohmann::json summary;
    nlohmann::json manifest;
};

// Runs the experiment described by cfg (after resolve_presets and
// build_experiment) and writes manifest.json.  Config problems throw
// ConfigError before any file is written; numerical failures are reported
// through the outcome.
// Newton from smooth random starts (Fourier modes |m| <= 2) scaled to a
// sup norm drawn uniformly from [0.05, 1] * linf_radius.
struct MultistartRun {
    bool converged = false;
    int iterations = 0;
    double linf_start = 0.0;
    PeriodicField u;
};
std::vector<MultistartRun> multistart(const Params& p, std::size_t n, int runs, std::uint64_t seed,
                                      double linf_radius, const NewtonSettings& newton);

RunOutcome run(const Config& cfg, const Logger& log = {});

}  // namespace lle::cli
