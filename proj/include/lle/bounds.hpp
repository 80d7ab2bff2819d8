// include/lle/bounds.hpp
//
// A-priori bounds for all solutions, uniqueness thresholds and the global
// continuation conditions for constant solutions.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lle/model.hpp"

namespace lle {

struct ForcingNorms {
    double deriv_sup = 0.0;  // ||f'||_inf
    double second_l2 = 0.0;  // ||f''||_2
};

// Closed forms for f = f0 + f1 exp(i k1 s).
ForcingNorms second_harmonic_norms(const Params& p);

struct BoundsReport {
    double F = 0.0;
    double B = 0.0;
    double C = 0.0;
    double Dtilde = 0.0;
    std::optional<double> D;  // empty when the positive-part denominator vanishes
    double zeta_star_low = 0.0;
    double zeta_star_high = 0.0;
    double l2_bound = 0.0;
    double linf_bound = 0.0;
    std::optional<double> improved_linf;  // (F^{3/4}/sqrt(2pi) + sqrt(2pi) B) D^{1/4}
};

BoundsReport compute_bounds(const Params& p, const ForcingNorms& norms);
BoundsReport compute_bounds(const Params& p);  // second-harmonic norms

enum class UniquenessCase { None, I, II, III };

struct UniquenessVerdict {
    bool unique = false;
    UniquenessCase which = UniquenessCase::None;
};

UniquenessVerdict uniqueness_classify(const Params& p, const ForcingNorms& norms);
UniquenessVerdict uniqueness_classify(const Params& p);

// |f0| (1 + 2 pi^2 f0^2 / |d|)
double constant_forcing_C(double d, double f0);

struct GlobalContinuationVerdict {
    bool global = false;
    UniquenessCase which = UniquenessCase::None;
};

GlobalContinuationVerdict corollary_case(const Params& p);

// min(1, 1/(sign(d)(zeta - omega^2/(4d)))) when that quantity is positive,
// else 1.
double operator_norm_bound(const Params& p);

struct BoundCheck {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool pass = true;
    double margin() const { return bound - value; }
};

struct BoundsVerification {
    bool refused = false;  // u not converged: no verdict
    bool pass = false;
    std::vector<BoundCheck> checks;
};

// Checks the discrete norms of a converged u against report, allowing a
// relative slack `inflation` on each bound.  Refuses when the packed
// residual exceeds residual_tol * sqrt(n).
BoundsVerification verify_bounds(const Params& p, const PeriodicField& u, const BoundsReport& report,
                                 double inflation = 1.0, double residual_tol = 1e-8);

const char* to_string(UniquenessCase c);

}  // namespace lle
