#include "doctest.h"

#include <cmath>
#include <numbers>

#include "lle/bifurcation.hpp"
#include "lle/continuation.hpp"
#include "lle/discretize.hpp"
#include "lle/spectral.hpp"
#include "lle/trivial.hpp"
#include "support.hpp"

using namespace lle;
using std::numbers::pi;

namespace {

// Nonconstant f1 = 0 crossing of the zero-speed figure-eight, computed once.
struct Crossing {
    Params p;
    PeriodicField u;
    std::vector<PeriodicField> all;
};

const Crossing& crossing() {
    static const Crossing c = [] {
        Crossing r;
        r.p = test::dual_pump(3.9, 0.0);
        const std::size_t n = 128;
        ContinuationSettings cs;
        cs.record_min_sv = false;
        const auto tps = solve_constants(3.9, 2.0);
        const auto start = make_branch_point(r.p, cs.param, PeriodicField(n, tps[2].u0), false);
        const Branch b = trace_branch(r.p, start, cs);
        for (auto k : f1_zero_indices(b)) {
            const auto& u = b.points[k].u;
            if (b.points[k].has(kLoopClosed) || norms(derivative(u)).l2 < 1e-6 * norms(u).l2) continue;
            r.all.push_back(u);
        }
        REQUIRE(!r.all.empty());
        r.u = r.all.front();
        return r;
    }();
    return c;
}

}  // namespace

TEST_SUITE("bifurcation") {

TEST_CASE("constant solutions have a trivial kernel") {
    const Params p = test::dual_pump(3.0);
    const auto rep = analyze_bifurcation(p, PeriodicField(32, solve_constants(3.0, 2.0)[1].u0));
    CHECK(rep.status == "TrivialKernel");
    CHECK(rep.linearization.kernel_dim_estimate == 0);
}

TEST_CASE("figure-eight crossing: two crossings related by a half-period shift") {
    const auto& c = crossing();
    REQUIRE(c.all.size() == 2);
    const auto fit = spectral::best_shift(c.all[0], c.all[1]);
    const double h = 2 * pi / 128;
    CHECK(spectral::circular_distance(fit.tau, pi) <= 2 * h);
    CHECK(spectral::period_divisor(c.u, 1e-6) == 1);
}

TEST_CASE("kernel is spanned by the derivative") {
    const auto& c = crossing();
    const auto lin = analyze_linearization(c.p, c.u);
    CHECK(lin.kernel_dim_estimate == 1);
    CHECK(lin.simple);
    CHECK(lin.derivative_alignment >= 0.999);
    CHECK(lin.min_svs[0] < 1e-6 * lin.largest_sv);
    CHECK(lin.min_svs[1] > 1e-4 * lin.largest_sv);
    CHECK(norms(lin.kernel_vec).l2 == doctest::Approx(1.0));
}

TEST_CASE("shift candidates, transversality and the further condition") {
    const auto& c = crossing();
    const auto rep = analyze_bifurcation(c.p, c.u);
    CHECK(rep.status == "ok");
    const auto& cands = rep.sigma0.candidates;
    REQUIRE(cands.size() == 2);
    const double h = 2 * pi / 128;
    // one candidate at the crossing itself, the other half a period away
    CHECK(std::min(spectral::circular_distance(cands[0], 0.0), spectral::circular_distance(cands[1], 0.0)) <= 2 * h);
    CHECK(spectral::circular_distance(cands[0], cands[1]) == doctest::Approx(pi).epsilon(1e-9));
    for (std::size_t k = 0; k < cands.size(); ++k) {
        CHECK(std::abs(sigma0_condition(rep.linearization.adjoint_kernel_vec, 1, cands[k])) < 1e-8);
        CHECK(rep.transversal[k].ok);
        CHECK(std::abs(rep.xi_lambda[k]) < 1e-8);
        CHECK(rep.further[k].ok);
    }
    CHECK(rep.transversal[0].value == doctest::Approx(-rep.transversal[1].value));
}

TEST_CASE("parity and periodicity inheritance") {
    const auto& c = crossing();
    const auto rep = analyze_bifurcation(c.p, c.u);
    CHECK(rep.parity.u_period_divisor == 1);
    CHECK(rep.parity.u_even);
    CHECK(rep.parity.u_reflection_residual < 1e-8);
    CHECK(rep.parity.phi_even_part < 1e-6);
    CHECK(rep.parity.pass);
}

TEST_CASE("candidates under a gauge change of the adjoint vector") {
    const auto& c = crossing();
    const auto lin = analyze_linearization(c.p, c.u);
    const auto base = sigma0_candidates(c.u, lin.adjoint_kernel_vec, 1);
    // real sign: same set
    const auto neg = sigma0_candidates(c.u, cplx(-1.0) * lin.adjoint_kernel_vec, 1);
    REQUIRE(neg.candidates.size() == base.candidates.size());
    for (std::size_t k = 0; k < base.candidates.size(); ++k)
        CHECK(neg.candidates[k] == doctest::Approx(base.candidates[k]).epsilon(1e-12));
    // complex phase e^{i theta}: the set moves by theta / k1 (mod pi / k1)
    const double theta = 0.4;
    const auto rot = sigma0_candidates(c.u, std::polar(1.0, theta) * lin.adjoint_kernel_vec, 1);
    REQUIRE(rot.candidates.size() == base.candidates.size());
    double best = 1e9;
    for (double r : rot.candidates) best = std::min(best, spectral::circular_distance(r, base.candidates[0] + theta, pi));
    CHECK(best < 1e-9);
    // transversality magnitude is gauge independent
    const double t0 = std::abs(transversality(lin.adjoint_kernel_vec, base.candidates[0], 1).value);
    const double t1 = std::abs(transversality(std::polar(1.0, theta) * lin.adjoint_kernel_vec, rot.candidates[0], 1).value);
    CHECK(t1 == doctest::Approx(t0).epsilon(1e-9));
}

TEST_CASE("bordered solve for the first-order correction") {
    const auto& c = crossing();
    const auto rep = analyze_bifurcation(c.p, c.u);
    const auto xi = solve_xi(c.p, c.u, rep.sigma0.candidates[0]);
    CHECK(xi.residual < 1e-8);
    CHECK(xi.orthogonality < 1e-8);
}

}
