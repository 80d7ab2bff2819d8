// Acceptance runner: one PASS/FAIL line per criterion.
//
//   lle_acceptance [--only 1,2,...] [--known-fail 6,...] [--n 256]
//
// Exit status is 0 when every criterion not listed under --known-fail passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lle/bifurcation.hpp"
#include "lle/bounds.hpp"
#include "lle/cli/experiments.hpp"
#include "lle/cli/threshold.hpp"
#include "lle/continuation.hpp"
#include "lle/discretize.hpp"
#include "lle/kernels/kernels.hpp"
#include "lle/response.hpp"
#include "lle/spectral.hpp"
#include "lle/trivial.hpp"

using namespace lle;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Line {
    int id = 0;
    std::string title;
    bool pass = false;
    double seconds = 0.0;
    double limit = 0.0;  // 0: no runtime bound
    std::string detail;
};

std::string fmt(double v, int prec = 4) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

Params dual_pump(double zeta, double omega = 1.0) {
    Params p;
    p.d = -0.1;
    p.f0 = 2.0;
    p.k1 = 1;
    p.omega = omega;
    p.zeta = zeta;
    return p;
}

ContinuationSettings continuation_defaults() {
    ContinuationSettings cs;
    cs.record_min_sv = false;
    return cs;
}

// A traced branch with the parameters it belongs to, kept for the bounds check.
struct Traced {
    Params p;
    Branch b;
    std::string label;
};

struct Shared {
    std::size_t n = 256;
    std::vector<Traced> topology;     // criterion 7
    std::vector<Traced> figure_eight; // criterion 9
    std::vector<Traced> probes;       // criterion 8
    std::vector<PeriodicField> crossings;  // nonconstant f1 = 0 solutions on the figure-eight
    Params crossing_params;
};

// ---- 1 --------------------------------------------------------------------
Outcome parametrization_identity() {
    double worst = 0.0;
    for (double f0 : {1.0, fstar(), 2.0})
        for (int i = 0; i < 500; ++i) {
            const double t = -0.999 + 1.998 * (i + 0.5) / 500.0;
            const auto tp = param_point(t, f0);
            worst = std::max(worst, std::abs(trivial_residual(tp)) / std::max(1.0, std::abs(tp.zeta)));
        }
    return {worst < 1e-12, "max residual " + fmt(worst)};
}

// ---- 2 --------------------------------------------------------------------
Outcome turning_counts() {
    const int want[3] = {0, 1, 2};
    const double f0s[3] = {1.0, fstar(), 2.0};
    bool ok = true;
    double worst = 0.0;
    std::string counts;
    for (int k = 0; k < 3; ++k) {
        const auto r = turning_points(f0s[k]);
        ok = ok && r.count == want[k] && static_cast<int>(r.points.size()) == want[k];
        counts += (k ? "/" : "") + std::to_string(r.count);
        for (const auto& tp : r.points) worst = std::max(worst, std::abs(turning_quadratic(tp.zeta, tp.rho)));
    }
    return {ok && worst < 1e-10, "counts " + counts + ", max quadratic residual " + fmt(worst)};
}

// ---- 3 --------------------------------------------------------------------
Outcome cubic_consistency() {
    int bad_residual = 0, bad_count = 0, total = 0;
    for (int i = 0; i < 100; ++i) {
        const double f0 = 0.5 + 2.0 * i / 99.0;
        const auto tps = turning_points(f0);
        double zlo = 0.0, zhi = 0.0;
        if (tps.count == 2) {
            zlo = std::min(tps.points[0].zeta, tps.points[1].zeta);
            zhi = std::max(tps.points[0].zeta, tps.points[1].zeta);
        }
        for (int j = 0; j < 100; ++j) {
            const double zeta = -1.0 + 6.0 * j / 99.0;
            const auto roots = solve_constants(zeta, f0);
            const std::size_t expect = (tps.count == 2 && zeta > zlo && zeta < zhi) ? 3 : 1;
            bad_count += roots.size() != expect;
            for (const auto& r : roots) {
                ++total;
                bad_residual += !(std::abs(trivial_residual(r)) < 1e-12 * std::max(1.0, std::abs(zeta)));
            }
        }
    }
    return {bad_residual == 0 && bad_count == 0,
            std::to_string(total) + " roots, " + std::to_string(bad_residual) + " residual failures, " +
                std::to_string(bad_count) + " count mismatches"};
}

// ---- 4 --------------------------------------------------------------------
struct Manufactured {
    static constexpr double d = 1.0, zeta = -2.0, omega = 0.7;
    static cplx u(double s) { return 1.0 + 0.5 * std::polar(1.0, s) + cplx(0.0, 0.2) * std::polar(1.0, -2.0 * s); }
    static cplx du(double s) {
        return 0.5 * cplx(0, 1) * std::polar(1.0, s) + cplx(0.0, 0.2) * cplx(0, -2) * std::polar(1.0, -2.0 * s);
    }
    static cplx d2u(double s) { return -0.5 * std::polar(1.0, s) - 4.0 * cplx(0.0, 0.2) * std::polar(1.0, -2.0 * s); }
    static Params params(std::size_t n) {
        Params p;
        p.d = d;
        p.zeta = zeta;
        p.omega = omega;
        p.f0 = 0.0;
        p.f1 = 1.0;
        std::vector<cplx> e(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double s = PeriodicField::node(j, n);
            const cplx v = u(s);
            e[j] = cplx(0, 1) * (-d * d2u(s) + cplx(0, omega) * du(s) + cplx(zeta, -1.0) * v - std::norm(v) * v);
        }
        p.forcing = ForcingProfile::sampled(e);
        return p;
    }
};

Outcome discretization_order() {
    std::vector<double> err;
    for (std::size_t n : {64u, 128u, 256u, 512u}) {
        const auto exact = PeriodicField::sample(n, Manufactured::u);
        const auto nr = newton_solve(Manufactured::params(n), exact);
        if (!nr.converged()) return {false, "Newton failed at n=" + std::to_string(n)};
        err.push_back(norms(nr.u - exact).linf);
    }
    bool ok = true;
    std::string orders;
    for (std::size_t k = 0; k + 1 < err.size(); ++k) {
        const double o = std::log2(err[k] / err[k + 1]);
        ok = ok && o >= 1.9 && o <= 2.1;
        orders += (k ? "," : "") + fmt(o);
    }

    // directional derivatives of the residual against the Jacobian
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const std::size_t n = 64;
    Params p = dual_pump(3.0);
    p.f1 = 0.3;
    auto random_field = [&] {
        std::vector<cplx> c(7);
        for (auto& z : c) z = {unif(rng), unif(rng)};
        return PeriodicField::sample(n, [&](double s) {
            cplx v{};
            for (int m = -3; m <= 3; ++m) v += c[std::size_t(m + 3)] * std::polar(1.0, m * s);
            return v;
        });
    };
    int jac_fail = 0;
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const auto u = random_field();
        const auto v = random_field();
        const double eps = 1e-6;
        const Vector fd = (residual_vec(p, u + cplx(eps) * v) - residual_vec(p, u - cplx(eps) * v)) / (2 * eps);
        const Vector jv = jacobian(p, u).apply(RealSystem::pack(v));
        const double rel = (fd - jv).norm() / std::max(1.0, jv.norm());
        worst = std::max(worst, rel);
        jac_fail += !(rel < 1e-6);
    }
    return {ok && jac_fail == 0, "orders " + orders + "; Jacobian max rel err " + fmt(worst)};
}

// ---- 6 --------------------------------------------------------------------
Outcome uniqueness(std::size_t n) {
    Params p;
    p.d = 1.0;
    p.omega = 0.0;
    p.f0 = 0.1;
    p.f1 = 0.05;
    p.zeta = 0.0;
    const auto verdict = uniqueness_classify(p);
    const auto rep = compute_bounds(p);
    const auto runs = cli::multistart(p, n, 20, 1, rep.linf_bound, NewtonSettings{1e-10, 200, 0.5, 1.0 / 1024.0});
    int converged = 0;
    double spread = 0.0;
    const PeriodicField* first = nullptr;
    for (const auto& r : runs) {
        if (!r.converged) continue;
        ++converged;
        if (!first) first = &r.u;
        spread = std::max(spread, norms(r.u - *first).linf);
    }
    const bool formula = verdict.unique && verdict.which == UniquenessCase::III;
    const bool numeric = converged == 20 && spread <= 1e-8;
    return {formula && numeric, std::string("formula case ") + to_string(verdict.which) + " (C=" + fmt(rep.C) +
                                    "), " + std::to_string(converged) + "/20 converged, spread " + fmt(spread)};
}

// ---- 7 --------------------------------------------------------------------
Branch trace_from(const Params& p, std::size_t idx, std::size_t n) {
    const auto tps = solve_constants(p.zeta, p.f0);
    const auto cs = continuation_defaults();
    const auto start = make_branch_point(p, cs.param, PeriodicField(n, tps.at(idx).u0), false);
    return trace_branch(p, start, cs);
}

// rho values met by the branch at f1 = 0, other than its start
std::vector<double> zero_rhos(const Branch& b) {
    std::vector<double> out;
    for (auto k : f1_zero_indices(b))
        if (!b.points[k].has(kLoopClosed)) out.push_back(b.points[k].norm_sq_over_2pi);
    return out;
}

bool meets(const std::vector<double>& rhos, double rho) {
    return std::any_of(rhos.begin(), rhos.end(), [&](double v) { return std::abs(v - rho) <= 1e-4; });
}

Outcome topology(Shared& sh) {
    const std::size_t n = sh.n;
    auto f24 = std::async(std::launch::async, [&] { return trace_from(dual_pump(2.4), 0, n); });
    auto f30 = std::async(std::launch::async, [&] { return trace_from(dual_pump(3.0), 0, n); });
    auto f40 = std::async(std::launch::async, [&] { return trace_from(dual_pump(4.0), 1, n); });
    const Branch b24 = f24.get(), b30 = f30.get(), b40 = f40.get();

    const auto& pts24 = b24.points;
    double lo = 1e300, hi = -1e300;
    for (const auto& pt : pts24) lo = std::min(lo, pt.param_value), hi = std::max(hi, pt.param_value);
    const bool spans = !b24.closed && !b24.truncated && lo <= -2.0 + 1e-8 && hi >= 2.0 - 1e-8;

    const auto t3 = solve_constants(3.0, 2.0);
    const auto z3 = zero_rhos(b30);
    const bool lower = b30.closed && meets(z3, t3[0].rho) && meets(z3, t3[1].rho) && !meets(z3, t3[2].rho);

    const auto t4 = solve_constants(4.0, 2.0);
    const auto z4 = zero_rhos(b40);
    const bool upper = b40.closed && meets(z4, t4[1].rho) && meets(z4, t4[2].rho) && !meets(z4, t4[0].rho);

    sh.topology = {{dual_pump(2.4), b24, "zeta=2.4"}, {dual_pump(3.0), b30, "zeta=3"}, {dual_pump(4.0), b40, "zeta=4"}};
    return {spans && lower && upper, std::string("2.4 spans ") + (spans ? "yes" : "no") + " [" + fmt(lo) + "," +
                                         fmt(hi) + "]; 3.0 lower loop " + (lower ? "yes" : "no") +
                                         "; 4.0 upper loop " + (upper ? "yes" : "no")};
}

// ---- 8 --------------------------------------------------------------------
Outcome threshold(Shared& sh) {
    const auto r = cli::locate_threshold(dual_pump(3.0), 3.0, 3.3, 0.02, sh.n, continuation_defaults());
    for (const auto& pr : r.probes)
        if (!pr.branch.points.empty())
            sh.probes.push_back({dual_pump(pr.zeta), pr.branch, "probe zeta=" + fmt(pr.zeta, 8)});
    const bool hits = r.lo < 3.1359 && r.hi > 3.1344 && r.hi - r.lo <= 0.02 + 1e-12;
    return {hits, "interval [" + fmt(r.lo, 8) + ", " + fmt(r.hi, 8) + "], " + std::to_string(r.probes.size()) +
                      " probes"};
}

// ---- 9 --------------------------------------------------------------------
Outcome figure_eight(Shared& sh) {
    const std::size_t n = sh.n;
    const Params p = dual_pump(3.9, 0.0);
    auto f1 = std::async(std::launch::async, [&] { return trace_from(p, 1, n); });
    const Branch b2 = trace_from(p, 2, n);
    const Branch b1 = f1.get();
    sh.figure_eight = {{p, b1, "zeta=3.9 from middle"}, {p, b2, "zeta=3.9 from upper"}};
    sh.crossing_params = p;

    // nonconstant f1 = 0 solutions on a closed branch
    const Branch* loop = nullptr;
    std::vector<PeriodicField> cross;
    for (const Branch* b : {&b2, &b1}) {
        if (!b->closed) continue;
        std::vector<PeriodicField> c;
        for (auto k : f1_zero_indices(*b)) {
            const auto& pt = b->points[k];
            if (pt.has(kLoopClosed)) continue;
            if (norms(derivative(pt.u)).l2 < 1e-6 * norms(pt.u).l2) continue;
            if (std::any_of(c.begin(), c.end(), [&](const PeriodicField& v) { return norms(v - pt.u).linf < 1e-6; }))
                continue;
            c.push_back(pt.u);
        }
        if (!c.empty()) {
            loop = b;
            cross = std::move(c);
            break;
        }
    }
    if (!loop) return {false, "no closed branch with a nonconstant f1=0 crossing"};
    sh.crossings = cross;

    const std::size_t divisor = spectral::period_divisor(cross[0], 1e-6);
    const double h = 2 * pi / static_cast<double>(n);
    std::string detail = std::to_string(cross.size()) + " crossings, period divisor " + std::to_string(divisor);
    bool ok = divisor == 1 && cross.size() == 2;
    if (cross.size() == 2) {
        const auto fit = spectral::best_shift(cross[0], cross[1]);
        const double off = spectral::circular_distance(fit.tau, pi);
        ok = ok && off <= 2 * h && fit.residual < 1e-4;
        detail += ", shift " + fmt(fit.tau, 8) + " (fit residual " + fmt(fit.residual) + ")";
    }
    return {ok, detail};
}

// ---- 10 -------------------------------------------------------------------
Outcome kernel_structure(const Shared& sh) {
    if (sh.crossings.empty()) return {false, "no crossing solution from criterion 9"};
    const auto& u0 = sh.crossings[0];
    const auto lin = analyze_linearization(sh.crossing_params, u0);
    const auto par = parity_periodicity_check(sh.crossing_params, u0, lin.adjoint_kernel_vec);
    const bool ok = lin.kernel_dim_estimate == 1 && lin.derivative_alignment >= 0.999 && par.pass &&
                    par.phi_even_part <= 1e-6;
    return {ok, "kernel dim " + std::to_string(lin.kernel_dim_estimate) + ", alignment " +
                    fmt(lin.derivative_alignment, 8) + ", phi* even part " + fmt(par.phi_even_part) +
                    ", parity " + (par.pass ? "pass" : "fail")};
}

// ---- 11 -------------------------------------------------------------------
Outcome sigma0_prediction(const Shared& sh) {
    if (sh.crossings.size() != 2) return {false, "criterion 9 did not produce two crossings"};
    const auto& u0 = sh.crossings[0];
    const auto rep = analyze_bifurcation(sh.crossing_params, u0);
    const std::vector<double> observed = {0.0, spectral::best_shift(u0, sh.crossings[1]).tau};
    const auto& cand = rep.sigma0.candidates;
    const double h = 2 * pi / static_cast<double>(sh.n);
    if (cand.size() != observed.size())
        return {false, std::to_string(cand.size()) + " candidates for 2 observed shifts"};
    // match each observed shift to its nearest candidate, one to one
    std::set<std::size_t> used;
    double worst = 0.0;
    for (double o : observed) {
        std::size_t best = cand.size();
        double dist = 1e300;
        for (std::size_t k = 0; k < cand.size(); ++k) {
            const double dk = spectral::circular_distance(o, cand[k]);
            if (!used.count(k) && dk < dist) dist = dk, best = k;
        }
        used.insert(best);
        worst = std::max(worst, dist);
    }
    bool trans = rep.transversal.size() == cand.size();
    for (const auto& t : rep.transversal) trans = trans && t.ok;
    return {worst <= 2 * h && trans, "candidates " + fmt(cand[0], 8) + ", " + fmt(cand[1], 8) +
                                         "; max mismatch " + fmt(worst) + " (2h=" + fmt(2 * h) + "); transversality " +
                                         (trans ? "ok" : "fail")};
}

// ---- 12 -------------------------------------------------------------------
Outcome second_derivative() {
    bool ok = true;
    std::string detail;
    for (double z : {2.4, 2.6, 4.2}) {
        const Params p = dual_pump(z);
        const auto chk = second_derivative_vs_numeric(p, solve_constants(z, 2.0)[0].u0, 1e-3, 512);
        const bool sym = std::abs(chk.n_plus - chk.n_minus) <= 1e-2 * std::abs(chk.n_plus - chk.n_zero);
        ok = ok && chk.ok && chk.rel_err < 5e-3 && sym;
        detail += "zeta=" + fmt(z) + " rel_err " + fmt(chk.rel_err) + (sym ? "" : " asym") + "; ";
    }
    std::vector<double> ts;
    for (int i = 0; i < 3997; ++i) ts.push_back(-0.999 + 1.998 * i / 3996.0);
    const auto ch = sign_changes(sign_map(2.0, -0.1, 1.0, 1, ts));
    auto bracketed = [&](double target) {
        for (const auto& c : ch)
            if (!c.through_pole && std::min(c.zeta_lo, c.zeta_hi) - 0.01 <= target &&
                target <= std::max(c.zeta_lo, c.zeta_hi) + 0.01)
                return true;
        return false;
    };
    bool control = true;
    for (const auto& c : ch) {
        if (c.through_pole) continue;
        const double lo = std::min(c.zeta_lo, c.zeta_hi), hi = std::max(c.zeta_lo, c.zeta_hi);
        control = control && (hi <= 3.1344 || lo >= 3.1359);
    }
    const bool b1 = bracketed(0.8533), b2 = bracketed(3.34);
    ok = ok && b1 && b2 && control;
    detail += std::string("changes at 0.8533 ") + (b1 ? "yes" : "no") + ", 3.34 " + (b2 ? "yes" : "no") +
              ", negative control " + (control ? "holds" : "violated");
    return {ok, detail};
}

// ---- 13 -------------------------------------------------------------------
Outcome symmetry(const Shared& sh) {
    if (sh.topology.empty()) return {false, "criterion 7 produced no branches"};
    const double tol = 2.0 * 1e-10 * std::sqrt(static_cast<double>(sh.n));
    std::size_t checked = 0, bad_res = 0, bad_norm = 0;
    double worst = 0.0;
    for (const auto& t : sh.topology) {
        const Branch m = mirror_branch(t.b, t.p);
        if (m.points.size() != t.b.points.size()) return {false, "mirror changed the point count"};
        for (std::size_t k = 0; k < m.points.size(); ++k) {
            const double r = residual_norm(t.p.with_f1(m.points[k].param_value), m.points[k].u);
            worst = std::max(worst, r);
            bad_res += !(r <= tol);
            bad_norm += m.points[k].norm_sq_over_2pi != t.b.points[k].norm_sq_over_2pi;
            ++checked;
        }
    }
    return {bad_res == 0 && bad_norm == 0, std::to_string(checked) + " mirrored points, max residual " + fmt(worst) +
                                               " (limit " + fmt(tol) + "), norm mismatches " + std::to_string(bad_norm)};
}

// ---- 5 --------------------------------------------------------------------
Outcome bounds(const Shared& sh) {
    std::size_t checked = 0, violations = 0, refused = 0;
    std::string first_bad;
    auto run = [&](const std::vector<Traced>& set) {
        for (const auto& t : set) {
            const double h = 2 * pi / static_cast<double>(t.b.points.empty() ? 1 : t.b.points[0].u.size());
            const double inflation = 1.0 + 10.0 * h * h;
            for (const auto& pt : t.b.points) {
                const Params q = t.p.with_f1(pt.param_value);
                const auto v = verify_bounds(q, pt.u, compute_bounds(q), inflation);
                ++checked;
                if (v.refused) {
                    ++refused;
                } else if (!v.pass) {
                    ++violations;
                    if (first_bad.empty())
                        for (const auto& c : v.checks)
                            if (!c.pass) first_bad = t.label + " f1=" + fmt(pt.param_value) + " " + c.name;
                }
            }
        }
    };
    run(sh.topology);
    run(sh.probes);
    run(sh.figure_eight);
    std::string detail = std::to_string(checked) + " points, " + std::to_string(violations) + " violations, " +
                         std::to_string(refused) + " refused";
    if (!first_bad.empty()) detail += " (first: " + first_bad + ")";
    const bool have_all = !sh.topology.empty() && !sh.probes.empty() && !sh.figure_eight.empty();
    if (!have_all) detail += "; inputs from criteria 7-9 incomplete";
    return {have_all && violations == 0 && refused == 0, detail};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::vector<int> only, known_fail;
    std::size_t n = 256;
    app.add_option("--only", only, "Criteria to run (default: all)")->delimiter(',');
    app.add_option("--known-fail", known_fail, "Criteria whose failure does not fail the run")->delimiter(',');
    app.add_option("--n", n, "Grid size for criteria 5-11 and 13");
    CLI11_PARSE(app, argc, argv);

    std::set<int> selected(only.begin(), only.end());
    if (selected.empty())
        for (int i = 1; i <= 13; ++i) selected.insert(i);
    // 10, 11 need 9; 13 needs 7; 5 needs 7-9
    if (selected.count(10) || selected.count(11)) selected.insert(9);
    if (selected.count(13)) selected.insert(7);
    if (selected.count(5)) selected.insert({7, 8, 9});
    const std::set<int> tolerated(known_fail.begin(), known_fail.end());

    std::cerr << "kernels: " << kernels::active().name << ", n=" << n << "\n";
    Shared sh;
    sh.n = n;
    struct Job {
        int id;
        const char* title;
        double limit;
        std::function<Outcome()> fn;
    };
    const std::vector<Job> jobs = {
        {1, "parametrization identity", 1.0, parametrization_identity},
        {2, "turning-point counts", 1.0, turning_counts},
        {3, "cubic consistency", 5.0, cubic_consistency},
        {4, "discretization order", 10.0, discretization_order},
        {6, "uniqueness", 30.0, [&] { return uniqueness(n); }},
        {7, "global-vs-loop topology", 600.0, [&] { return topology(sh); }},
        {8, "connectivity threshold", 1800.0, [&] { return threshold(sh); }},
        {9, "figure-eight at omega=0", 900.0, [&] { return figure_eight(sh); }},
        {10, "kernel structure", 60.0, [&] { return kernel_structure(sh); }},
        {11, "sigma0 prediction vs observation", 60.0, [&] { return sigma0_prediction(sh); }},
        {12, "second-derivative formula", 300.0, second_derivative},
        {13, "symmetry suite", 60.0, [&] { return symmetry(sh); }},
        {5, "a-priori bounds", 0.0, [&] { return bounds(sh); }},
    };

    std::map<int, Line> lines;
    for (const auto& job : jobs) {
        if (!selected.count(job.id)) continue;
        std::cerr << "running " << job.id << " (" << job.title << ")...\n";
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = job.fn();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        Line l;
        l.id = job.id;
        l.title = job.title;
        l.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        l.limit = job.limit;
        const bool in_time = job.limit <= 0.0 || l.seconds < job.limit;
        l.pass = o.pass && in_time;
        l.detail = o.detail + (in_time ? "" : "; over the time limit");
        lines[job.id] = l;
    }

    int unexpected = 0;
    for (const auto& [id, l] : lines) {
        const bool tolerated_fail = !l.pass && tolerated.count(id);
        std::printf("%s %2d %-34s %9.2f s  %s%s\n", l.pass ? "PASS" : "FAIL", id, l.title.c_str(), l.seconds,
                    l.detail.c_str(), tolerated_fail ? "  [known failure]" : "");
        unexpected += !l.pass && !tolerated_fail;
    }
    std::fflush(stdout);
    return unexpected == 0 ? 0 : 1;
}
