// src/bounds.cpp

#include "lle/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lle/discretize.hpp"

namespace lle {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }
double neg_indicator(double d) { return d < 0.0 ? 1.0 : 0.0; }

}  // namespace

ForcingNorms second_harmonic_norms(const Params& p) {
    const double k = static_cast<double>(p.k1);
    return {std::abs(p.f1) * k, std::sqrt(kTwoPi) * std::abs(p.f1) * k * k};
}

BoundsReport compute_bounds(const Params& p, const ForcingNorms& fn) {
    p.validate();
    BoundsReport r;
    const double ad = std::abs(p.d);
    r.F = std::sqrt(kTwoPi * (p.f0 * p.f0 + p.f1 * p.f1));
    const double F = r.F;
    r.B = std::pow(F, 2.75) / (2.0 * ad) + 2.0 * fn.deriv_sup * std::pow(F, 0.25) +
          std::sqrt(fn.second_l2 * std::sqrt(F) + 2.0 * fn.deriv_sup * (std::sqrt(F / kTwoPi) + 1.0));
    r.C = F / std::sqrt(kTwoPi) + std::sqrt(kTwoPi) * r.B * std::pow(F, 0.25);
    r.Dtilde = std::pow(F, 1.5) + std::abs(p.omega) * r.B * std::pow(F, 0.75) + ad * r.B * r.B;

    const double c2_ind = r.C * r.C * neg_indicator(p.d);
    const double denom = -p.zeta * sgn(p.d) - c2_ind;
    if (denom > 0.0) r.D = std::pow(r.Dtilde / denom, 2.0 / 3.0);

    r.zeta_star_low = -c2_ind - 27.0 * std::pow(std::pow(F, 0.75) + kTwoPi * r.B, 6) * r.Dtilde / (8.0 * kPi * kPi * kPi);
    r.zeta_star_high = 3.0 * r.C * r.C + p.omega * p.omega / (4.0 * ad);

    r.l2_bound = F;
    r.linf_bound = r.C;
    if (r.D) {
        r.improved_linf = (std::pow(F, 0.75) / std::sqrt(kTwoPi) + std::sqrt(kTwoPi) * r.B) * std::pow(*r.D, 0.25);
        r.l2_bound = std::min(r.l2_bound, *r.D);
        r.linf_bound = std::min(r.linf_bound, *r.improved_linf);
    }
    return r;
}

BoundsReport compute_bounds(const Params& p) { return compute_bounds(p, second_harmonic_norms(p)); }

UniquenessVerdict uniqueness_classify(const Params& p, const ForcingNorms& fn) {
    const BoundsReport r = compute_bounds(p, fn);
    const double sz = sgn(p.d) * p.zeta;
    if (sz < r.zeta_star_low) return {true, UniquenessCase::I};
    if (sz > r.zeta_star_high) return {true, UniquenessCase::II};
    if (std::sqrt(3.0) * r.C < 1.0) return {true, UniquenessCase::III};
    return {false, UniquenessCase::None};
}

UniquenessVerdict uniqueness_classify(const Params& p) { return uniqueness_classify(p, second_harmonic_norms(p)); }

double constant_forcing_C(double d, double f0) {
    return std::abs(f0) * (1.0 + 2.0 * kPi * kPi * f0 * f0 / std::abs(d));
}

GlobalContinuationVerdict corollary_case(const Params& p) {
    p.validate();
    const double ad = std::abs(p.d);
    const double C = constant_forcing_C(p.d, p.f0);
    const double f02 = p.f0 * p.f0;
    const double sz = sgn(p.d) * p.zeta;
    const double low = -C * C * neg_indicator(p.d) -
                       27.0 * (1.0 + kPi * f02 * std::abs(p.omega) / ad + kPi * kPi * f02 * f02 / ad) * std::pow(C, 6);
    if (sz < low) return {true, UniquenessCase::I};
    if (sz > 3.0 * C * C + p.omega * p.omega / (4.0 * ad)) return {true, UniquenessCase::II};
    if (std::sqrt(3.0) * C < 1.0) return {true, UniquenessCase::III};
    return {false, UniquenessCase::None};
}

double operator_norm_bound(const Params& p) {
    p.validate();
    const double q = sgn(p.d) * (p.zeta - p.omega * p.omega / (4.0 * p.d));
    if (q > 0.0) return std::min(1.0, 1.0 / q);
    return 1.0;
}

BoundsVerification verify_bounds(const Params& p, const PeriodicField& u, const BoundsReport& report,
                                 double inflation, double residual_tol) {
    BoundsVerification v;
    const double res = residual_norm(p, u);
    if (!(res <= residual_tol * std::sqrt(static_cast<double>(u.size())))) {
        v.refused = true;
        return v;
    }
    const FieldNorms nm = norms(u);
    auto add = [&](const char* name, double value, double bound) {
        // 1e-12 relative slack absorbs quadrature rounding in equality cases
        const double b = bound * inflation;
        BoundCheck c{name, value, b, value <= b * (1.0 + 1e-12)};
        v.checks.push_back(c);
    };
    add("l2<=F", nm.l2, report.F);
    add("l2_deriv<=B*l2^(1/4)", nm.l2_deriv, report.B * std::pow(nm.l2, 0.25));
    add("linf<=C", nm.linf, report.C);
    if (report.D) add("l2<=D", nm.l2, *report.D);
    if (report.improved_linf) add("linf<=improved", nm.linf, *report.improved_linf);
    v.pass = std::all_of(v.checks.begin(), v.checks.end(), [](const BoundCheck& c) { return c.pass; });
    return v;
}

const char* to_string(UniquenessCase c) {
    switch (c) {
        case UniquenessCase::I: return "i";
        case UniquenessCase::II: return "ii";
        case UniquenessCase::III: return "iii";
        case UniquenessCase::None: break;
    }
    return "none";
}

}  // namespace lle
