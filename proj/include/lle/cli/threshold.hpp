// include/lle/cli/threshold.hpp
//
// Connectivity of the f1-loop through the middle constant solution when
// three constant solutions coexist: the loop returns to f1 = 0 either at
// the lower or at the upper constant solution.  locate_threshold bisects
// a zeta bracket on this predicate.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lle/continuation.hpp"
#include "lle/model.hpp"

namespace lle::cli {

enum class Connectivity { LowerPair, UpperPair };

const char* to_string(Connectivity c);

struct ConnectivityProbe {
    double zeta = 0.0;
    std::optional<Connectivity> verdict;  // empty: predicate ill-defined, see diagnostic
    std::string diagnostic;
    bool closed = false;
    std::size_t points = 0;
    std::vector<double> rho;               // constant solutions, ascending
    std::vector<double> zero_norms;        // ||u||^2/(2 pi) at the loop's f1 = 0 points
    Branch branch;                         // the traced loop (empty when not traced)
};

// Traces the branch through the middle constant solution at `zeta` and
// matches its other f1 = 0 point against the lower / upper solution within
// match_tol in rho.
ConnectivityProbe probe_connectivity(const Params& p, double zeta, std::size_t n, const ContinuationSettings& cs,
                                     double match_tol = 1e-4);

struct ThresholdResult {
    double lo = 0.0;
    double hi = 0.0;
    std::optional<Connectivity> at_lo, at_hi;
    std::vector<ConnectivityProbe> probes;  // in evaluation order
};

// Bisection until hi - lo <= width.  lo == hi returns the bracket without
// probing.  Throws NumericalFailure when the predicate is ill-defined at a
// probe or agrees at both ends; DomainError when lo > hi or width <= 0.
ThresholdResult locate_threshold(const Params& p, double lo, double hi, double width, std::size_t n,
                                 const ContinuationSettings& cs, double match_tol = 1e-4);

}  // namespace lle::cli
