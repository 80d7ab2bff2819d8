// include/lle/continuation.hpp
//
// Newton corrector and pseudo-arclength continuation of solution branches
// in f1 (or zeta).  The state is X = (x, p) with x the packed field and p
// the continued parameter; distances use the weighted norm
//     ||X||_W^2 = (1/n) x^T x + p^2,
// i.e. the mean square of u plus the parameter squared, which keeps step
// sizes independent of the grid size.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lle/discretize.hpp"
#include "lle/model.hpp"
#include "lle/trivial.hpp"

namespace lle {

struct NewtonSettings {
    double tol_residual = 1e-10;  // packed 2-norm target is tol_residual * sqrt(n)
    int max_iter = 25;
    double backtrack = 0.5;
    double min_step = 1.0 / 1024.0;
};

enum class NewtonStatus { Converged, NonConvergence, SingularJacobian };

struct NewtonResult {
    NewtonStatus status = NewtonStatus::NonConvergence;
    PeriodicField u;
    int iterations = 0;
    double residual_norm = 0.0;
    bool converged() const { return status == NewtonStatus::Converged; }
};

// Damped Newton with backtracking on the packed residual norm.
NewtonResult newton_solve(const Params& p, const PeriodicField& u_init, const NewtonSettings& settings = {});

enum class ContinuationParameter { F1, Zeta };

struct ContinuationSettings {
    ContinuationParameter param = ContinuationParameter::F1;
    double ds0 = 0.01;
    double ds_min = 1e-5;
    double ds_max = 0.1;
    int max_steps = 4000;  // per direction
    double loop_tol = 1e-6;
    double param_min = -2.0;
    double param_max = 2.0;
    double growth = 1.3;
    int fast_iterations = 3;        // grow the step after convergence in at most this many
    int max_corrector_iter = 8;
    double max_tangent_turn = 0.35;  // radians between consecutive tangents
    bool two_sided = true;
    bool record_min_sv = true;
    NewtonSettings newton;

    // Throws DomainError when the step bounds are inconsistent.
    void validate() const;
};

enum BranchEvent : std::uint32_t {
    kNoEvent = 0,
    kFoldDetected = 1u << 0,
    kF1ZeroCrossing = 1u << 1,
    kLoopClosed = 1u << 2,
};

struct BranchPoint {
    double param_value = 0.0;
    PeriodicField u;
    double norm_sq_over_2pi = 0.0;
    double arclength = 0.0;
    double min_sv = 0.0;
    std::uint32_t events = kNoEvent;

    bool has(BranchEvent e) const { return (events & e) != 0; }
};

struct Branch {
    std::vector<BranchPoint> points;
    bool closed = false;
    std::string provenance;
    std::size_t start_index = 0;
    bool truncated = false;                // stopped by a failure rather than closure or bounds
    std::vector<std::string> diagnostics;
};

// Builds a start point from a converged field at the given parameter value.
BranchPoint make_branch_point(const Params& p, ContinuationParameter param, const PeriodicField& u,
                              bool with_min_sv = true);

// Pseudo-arclength continuation from `start`.  p supplies every model
// constant except the continued parameter, which is taken from start.
Branch trace_branch(const Params& p, const BranchPoint& start, const ContinuationSettings& settings);

// Parameters with the continued parameter set to value.
Params with_param(const Params& p, ContinuationParameter param, double value);

struct SweepEntry {
    double zeta = 0.0;
    std::vector<TrivialPoint> trivial_points;
    std::vector<Branch> branches;
    std::vector<std::string> errors;
};

// For each zeta: enumerate constant solutions, trace a branch from each one
// not already lying on an earlier branch.  Jobs run on `threads` workers;
// results are sorted by zeta.
std::vector<SweepEntry> sweep_zeta(const Params& p_template, const std::vector<double>& zeta_list,
                                   std::size_t n, const ContinuationSettings& settings,
                                   unsigned threads = 1);

// Maps every point through (f1, u) -> (-f1, u(. + pi/k1)).
Branch mirror_branch(const Branch& b, const Params& p);

// f1 = 0 points of a branch (start and refined crossings), in branch order.
std::vector<std::size_t> f1_zero_indices(const Branch& b, double tol = 1e-9);

// Weighted distance between two states.
double state_distance(const PeriodicField& u, double p, const PeriodicField& v, double q);

}  // namespace lle
