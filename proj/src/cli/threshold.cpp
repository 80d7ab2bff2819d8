#include "lle/cli/threshold.hpp"

#include <cmath>
#include <future>
#include <sstream>

#include "lle/error.hpp"
#include "lle/trivial.hpp"

namespace lle::cli {

const char* to_string(Connectivity c) { return c == Connectivity::LowerPair ? "lower pair" : "upper pair"; }

ConnectivityProbe probe_connectivity(const Params& p, double zeta, std::size_t n, const ContinuationSettings& cs,
                                     double match_tol) {
    ConnectivityProbe pr;
    pr.zeta = zeta;
    const auto tps = solve_constants(zeta, p.f0);
    for (const auto& tp : tps) pr.rho.push_back(tp.rho);
    if (tps.size() != 3) {
        pr.diagnostic = std::to_string(tps.size()) + " constant solution(s); need 3";
        return pr;
    }

    Params q = p.with_zeta(zeta).with_f1(0.0);
    ContinuationSettings s = cs;
    s.param = ContinuationParameter::F1;
    const auto start = make_branch_point(q, s.param, PeriodicField(n, tps[1].u0), false);
    pr.branch = trace_branch(q, start, s);
    const Branch& b = pr.branch;
    pr.closed = b.closed;
    pr.points = b.points.size();

    bool lower = false, upper = false;
    for (auto k : f1_zero_indices(b)) {
        if (k == b.start_index || b.points[k].has(kLoopClosed)) continue;
        const double v = b.points[k].norm_sq_over_2pi;
        pr.zero_norms.push_back(v);
        lower = lower || std::abs(v - tps[0].rho) <= match_tol;
        upper = upper || std::abs(v - tps[2].rho) <= match_tol;
    }
    if (!b.closed) {
        pr.diagnostic = "branch through the middle solution did not close";
    } else if (lower == upper) {
        pr.diagnostic = lower ? "loop meets both outer solutions" : "loop meets neither outer solution";
    } else {
        pr.verdict = lower ? Connectivity::LowerPair : Connectivity::UpperPair;
    }
    return pr;
}

namespace {

Connectivity require(const ConnectivityProbe& pr) {
    if (!pr.verdict) {
        std::ostringstream os;
        os << "connectivity undefined at zeta=" << pr.zeta << ": " << pr.diagnostic;
        throw NumericalFailure(os.str());
    }
    return *pr.verdict;
}

}  // namespace

ThresholdResult locate_threshold(const Params& p, double lo, double hi, double width, std::size_t n,
                                 const ContinuationSettings& cs, double match_tol) {
    if (!(lo <= hi)) throw DomainError("locate_threshold: lo > hi");
    if (!(width > 0.0)) throw DomainError("locate_threshold: width must be positive");
    ThresholdResult r;
    r.lo = lo;
    r.hi = hi;
    if (lo == hi) return r;

    auto f_lo = std::async(std::launch::async, [&] { return probe_connectivity(p, lo, n, cs, match_tol); });
    auto pr_hi = probe_connectivity(p, hi, n, cs, match_tol);
    auto pr_lo = f_lo.get();
    r.probes.push_back(pr_lo);
    r.probes.push_back(pr_hi);
    const Connectivity c_lo = require(pr_lo);
    const Connectivity c_hi = require(pr_hi);
    r.at_lo = c_lo;
    r.at_hi = c_hi;
    if (c_lo == c_hi)
        throw NumericalFailure(std::string("no connectivity switch in bracket: ") + to_string(c_lo) + " at both ends");

    while (r.hi - r.lo > width) {
        const double mid = 0.5 * (r.lo + r.hi);
        auto pr = probe_connectivity(p, mid, n, cs, match_tol);
        r.probes.push_back(pr);
        if (require(pr) == c_lo)
            r.lo = mid;
        else
            r.hi = mid;
    }
    return r;
}

}  // namespace lle::cli
