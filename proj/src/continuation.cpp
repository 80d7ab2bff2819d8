// src/continuation.cpp

#include "lle/continuation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "lle/error.hpp"
#include "lle/linalg.hpp"
#include "lle/spectral.hpp"

namespace lle {
namespace {

// Continuation state: packed field plus the continued parameter.
struct State {
    Vector x;
    double p = 0.0;
};

double w_inner(const State& a, const State& b) {
    const double n = static_cast<double>(a.x.size() / 2);
    return a.x.dot(b.x) / n + a.p * b.p;
}

double w_norm(const State& a) { return std::sqrt(w_inner(a, a)); }

State axpy(const State& a, double s, const State& t) { return {a.x + s * t.x, a.p + s * t.p}; }
State diff(const State& a, const State& b) { return {a.x - b.x, a.p - b.p}; }

double param_of(const Params& p, ContinuationParameter c) { return c == ContinuationParameter::F1 ? p.f1 : p.zeta; }

Vector param_derivative(const Params& p, ContinuationParameter c, const PeriodicField& u) {
    return c == ContinuationParameter::F1 ? dresidual_df1(p, u.size()) : dresidual_dzeta(u);
}

// [J G; row^T] with J, G at the given state.
Matrix bordered(const Params& p, ContinuationParameter c, const PeriodicField& u, const Vector& row_x,
                double row_p) {
    const auto dim = static_cast<Eigen::Index>(2 * u.size());
    Matrix a(dim + 1, dim + 1);
    BlockJacobian(p, u).assemble_into(a);
    a.col(dim).head(dim) = param_derivative(p, c, u);
    a.row(dim).head(dim) = row_x.transpose();
    a(dim, dim) = row_p;
    return a;
}

struct Tracer {
    const Params& base;
    ContinuationParameter param;
    const ContinuationSettings& cs;
    std::size_t n;
    double tol;

    Tracer(const Params& b, ContinuationParameter c, const ContinuationSettings& s, std::size_t grid)
        : base(b), param(c), cs(s), n(grid), tol(s.newton.tol_residual * std::sqrt(static_cast<double>(grid))) {}

    Params at(double v) const { return with_param(base, param, v); }

    // Tangent at X oriented by a previous tangent (or by +parameter).
    std::optional<State> tangent(const State& X, const State* prev) const {
        const PeriodicField u = RealSystem::unpack(X.x);
        const auto dim = static_cast<Eigen::Index>(X.x.size());
        Vector row_x = Vector::Zero(dim);
        double row_p = 1.0;
        if (prev) {
            row_x = prev->x / static_cast<double>(n);
            row_p = prev->p;
        }
        const Matrix a = bordered(at(X.p), param, u, row_x, row_p);
        GuardedLU lu(a);
        State t;
        if (!lu.singular()) {
            Vector rhs = Vector::Zero(dim + 1);
            rhs[dim] = 1.0;
            const Vector sol = lu.solve(rhs);
            t = {sol.head(dim), sol[dim]};
        } else if (!prev) {
            // null vector of [J G]
            const Matrix jg = a.topRows(dim);
            Eigen::BDCSVD<Matrix> svd(jg, Eigen::ComputeFullV);
            const Vector v = svd.matrixV().col(dim);
            t = {v.head(dim), v[dim]};
            Eigen::Index k = 0;
            if (std::abs(t.p) < 1e-8) {
                v.cwiseAbs().maxCoeff(&k);
                if (v[k] < 0) t = {-t.x, -t.p};
            } else if (t.p < 0) {
                t = {-t.x, -t.p};
            }
        } else {
            return std::nullopt;
        }
        const double nrm = w_norm(t);
        if (!(nrm > 0.0) || !std::isfinite(nrm)) return std::nullopt;
        t.x /= nrm;
        t.p /= nrm;
        if (prev && w_inner(t, *prev) < 0.0) t = {-t.x, -t.p};
        return t;
    }

    // Newton on R(x, p) = 0 with <T, X - X_base>_W = sigma.
    struct Correction {
        State X;
        int iterations = 0;
    };
    std::optional<Correction> correct(const State& Xb, const State& T, double sigma) const {
        State X = axpy(Xb, sigma, T);
        const auto dim = static_cast<Eigen::Index>(X.x.size());
        const Vector row_x = T.x / static_cast<double>(n);
        double first = -1.0;
        for (int it = 0; it <= cs.max_corrector_iter; ++it) {
            const PeriodicField u = RealSystem::unpack(X.x);
            const Params pp = at(X.p);
            const Vector r = residual_vec(pp, u);
            const double c = w_inner(T, diff(X, Xb)) - sigma;
            const double rn = r.norm();
            if (!std::isfinite(rn)) return std::nullopt;
            if (first < 0.0) first = rn;
            if (rn <= tol && std::abs(c) <= 1e-12 * std::max(1.0, sigma)) return Correction{X, it};
            if (it == cs.max_corrector_iter || rn > 1e3 * std::max(first, tol)) break;
            GuardedLU lu(bordered(pp, param, u, row_x, T.p));
            if (lu.singular()) return std::nullopt;
            Vector rhs(dim + 1);
            rhs.head(dim) = -r;
            rhs[dim] = -c;
            const Vector dx = lu.solve(rhs);
            X.x += dx.head(dim);
            X.p += dx[dim];
        }
        return std::nullopt;
    }

    BranchPoint point(const State& X, double s) const {
        BranchPoint bp = make_branch_point(at(X.p), param, RealSystem::unpack(X.x), cs.record_min_sv);
        bp.arclength = s;
        return bp;
    }

    // Arclength sigma in (0, ds] from X0 along T where the parameter hits target.
    std::optional<State> refine_param(const State& X0, const State& T, double ds, const State& X1,
                                      double target) const {
        double s_lo = 0.0, s_hi = ds;
        double g_lo = X0.p - target, g_hi = X1.p - target;
        State best = std::abs(g_lo) < std::abs(g_hi) ? X0 : X1;
        int side = 0;
        for (int it = 0; it < 80; ++it) {
            if (std::abs(best.p - target) < 1e-10) return best;
            double s = (s_lo * g_hi - s_hi * g_lo) / (g_hi - g_lo);
            if (!(s > s_lo && s < s_hi)) s = 0.5 * (s_lo + s_hi);
            auto c = correct(X0, T, s);
            if (!c) {
                s = 0.5 * (s_lo + s_hi);
                c = correct(X0, T, s);
                if (!c) return std::nullopt;
            }
            const double g = c->X.p - target;
            best = c->X;
            if ((g < 0) == (g_lo < 0)) {
                s_lo = s;
                g_lo = g;
                if (side == -1) g_hi *= 0.5;  // Illinois
                side = -1;
            } else {
                s_hi = s;
                g_hi = g;
                if (side == 1) g_lo *= 0.5;
                side = 1;
            }
            if (s_hi - s_lo < 1e-15) break;
        }
        if (std::abs(best.p - target) < 1e-10) return best;
        return std::nullopt;
    }

    // At a nonconstant f1 = 0 solution every shift solves the equation to
    // within the discretization's tiny translation breaking, so a corrector
    // aimed at f1 = 0 may land anywhere on the circle of shifts.  The crossing
    // is pinned by fitting the shift of nearby branch points against f1,
    // extrapolating to f1 = 0 and solving with a phase condition there.
    std::optional<State> refine_crossing(const State& X0, const State& T, double ds, const State& X1,
                                         const State& T1) const {
        auto r0 = refine_param(X0, T, ds, X1, 0.0);
        if (!r0) return r0;
        const PeriodicField circle_pt = RealSystem::unpack(r0->x);
        if (norms(derivative(circle_pt)).l2 <= 1e-6 * std::max(1.0, norms(circle_pt).l2)) return r0;

        std::vector<State> samples{X0, X1};
        if (auto a = refine_param(X0, T, ds, X1, 0.5 * X0.p)) samples.push_back(*a);
        if (auto b = refine_param(X1, State{-T1.x, -T1.p}, ds, X0, 0.5 * X1.p)) samples.push_back(*b);

        // shift of each sample relative to circle_pt, unwrapped around the first
        std::vector<double> fs, taus;
        for (const auto& smp : samples) {
            double tau = spectral::best_shift(circle_pt, RealSystem::unpack(smp.x)).tau;
            if (!taus.empty()) {
                while (tau - taus.front() > std::numbers::pi) tau -= 2.0 * std::numbers::pi;
                while (tau - taus.front() < -std::numbers::pi) tau += 2.0 * std::numbers::pi;
            }
            fs.push_back(smp.p);
            taus.push_back(tau);
        }
        const Eigen::Index m = static_cast<Eigen::Index>(fs.size());
        const Eigen::Index deg = m >= 3 ? 2 : 1;
        Matrix vand(m, deg + 1);
        Vector rhs_t(m);
        for (Eigen::Index k = 0; k < m; ++k) {
            for (Eigen::Index q = 0; q <= deg; ++q) vand(k, q) = std::pow(fs[k], static_cast<double>(q));
            rhs_t[k] = taus[k];
        }
        const double tau0 = vand.colPivHouseholderQr().solve(rhs_t)[0];

        const Vector xm = RealSystem::pack(spectral::shift(circle_pt, tau0));
        const Vector g = RealSystem::pack(derivative(RealSystem::unpack(xm)));
        const auto dim = static_cast<Eigen::Index>(xm.size());
        const Params p0 = at(0.0);
        Vector x = xm;
        double lambda = 0.0;
        for (int it = 0; it < cs.newton.max_iter; ++it) {
            const PeriodicField u = RealSystem::unpack(x);
            const Vector r = residual_vec(p0, u);
            const double c = g.dot(x - xm);
            if (r.norm() <= tol && std::abs(c) <= 1e-12 * g.norm() * std::max(1.0, xm.norm()))
                return State{x, 0.0};
            Matrix a(dim + 1, dim + 1);
            BlockJacobian(p0, u).assemble_into(a);
            a.col(dim).head(dim) = g;
            a.row(dim).head(dim) = g.transpose();
            a(dim, dim) = 0.0;
            GuardedLU lu(a);
            if (lu.singular()) break;
            Vector rhs(dim + 1);
            rhs.head(dim) = -(r + lambda * g);
            rhs[dim] = -c;
            const Vector d = lu.solve(rhs);
            x += d.head(dim);
            lambda += d[dim];
            if (!std::isfinite(x.norm())) break;
        }
        return r0;
    }

    struct Half {
        std::vector<BranchPoint> points;
        bool closed = false;
        bool truncated = false;
        std::vector<std::string> diagnostics;
    };

    Half run(const State& X0, const BranchPoint& start, const State& T0) const {
        Half h;
        h.points.push_back(start);
        State X = X0, T = T0;
        double ds = cs.ds0;
        double s = 0.0;
        int steps = 0;
        auto diag = [&](const std::string& msg, bool truncation = true) {
            h.truncated = h.truncated || truncation;
            std::ostringstream os;
            os << msg << " at step " << steps << ", param=" << X.p;
            h.diagnostics.push_back(os.str());
        };

        while (steps < cs.max_steps) {
            // closure: is the start just ahead?
            if (s > 10.0 * cs.ds0) {
                const State d0 = diff(X0, X);
                const double sig = w_inner(T, d0);
                if (sig > 0.0 && sig <= 1.05 * ds && w_norm(axpy(d0, -sig, T)) <= 0.5 * sig) {
                    if (auto c = correct(X, T, sig); c && w_norm(diff(c->X, X0)) <= cs.loop_tol) {
                        BranchPoint bp = start;
                        bp.arclength = s + sig;
                        bp.events |= kLoopClosed;
                        h.points.push_back(std::move(bp));
                        h.closed = true;
                        return h;
                    }
                }
            }

            auto c = correct(X, T, ds);
            std::optional<State> Tn;
            if (c) {
                Tn = tangent(c->X, &T);
                if (Tn && ds > cs.ds_min * 1.0001) {
                    const double cosang = std::clamp(w_inner(*Tn, T), -1.0, 1.0);
                    if (std::acos(cosang) > cs.max_tangent_turn) Tn.reset();
                }
            }
            if (!c || !Tn) {
                if (ds <= cs.ds_min * 1.0001) {
                    diag(c ? "tangent failure at minimum step" : "corrector failure at minimum step");
                    return h;
                }
                ds = std::max(cs.ds_min, 0.5 * ds);
                continue;
            }
            ++steps;
            const State Xn = c->X;

            // parameter window
            const double bound = Xn.p > cs.param_max ? cs.param_max : (Xn.p < cs.param_min ? cs.param_min : Xn.p);
            if (bound != Xn.p) {
                if (auto r = refine_param(X, T, ds, Xn, bound)) {
                    h.points.push_back(point(*r, s + w_norm(diff(*r, X))));
                }
                diag("parameter bound reached", false);
                return h;
            }

            // f1 = 0 crossing
            if (param == ContinuationParameter::F1 && X.p * Xn.p < 0.0) {
                if (auto r = refine_crossing(X, T, ds, Xn, *Tn)) {
                    BranchPoint bp = point(*r, s + w_norm(diff(*r, X)));
                    bp.events |= kF1ZeroCrossing;
                    if (s > 10.0 * cs.ds0 && w_norm(diff(*r, X0)) <= std::max(cs.loop_tol, 1e-6)) {
                        BranchPoint closing = start;
                        closing.arclength = bp.arclength;
                        closing.events |= kLoopClosed;
                        h.points.push_back(std::move(closing));
                        h.closed = true;
                        return h;
                    }
                    h.points.push_back(std::move(bp));
                } else {
                    diag("crossing refinement failed");
                }
            }

            s += ds;
            BranchPoint bp = point(Xn, s);
            if (T.p * Tn->p < 0.0) bp.events |= kFoldDetected;
            h.points.push_back(std::move(bp));
            X = Xn;
            T = *Tn;
            if (c->iterations <= cs.fast_iterations) ds = std::min(cs.ds_max, ds * cs.growth);
        }
        diag("max_steps reached");
        return h;
    }
};

}  // namespace

void ContinuationSettings::validate() const {
    if (!(ds_min > 0.0 && ds_min <= ds0 && ds0 <= ds_max))
        throw DomainError("continuation settings: need 0 < ds_min <= ds0 <= ds_max");
    if (max_steps < 1) throw DomainError("continuation settings: max_steps must be >= 1");
    if (!(loop_tol > 0.0)) throw DomainError("continuation settings: loop_tol must be > 0");
    if (!(param_min < param_max)) throw DomainError("continuation settings: param_min must be < param_max");
    if (!(newton.tol_residual > 0.0) || newton.max_iter < 1)
        throw DomainError("newton settings: tol_residual > 0 and max_iter >= 1 required");
    if (max_corrector_iter < 1) throw DomainError("continuation settings: max_corrector_iter must be >= 1");
}

NewtonResult newton_solve(const Params& p, const PeriodicField& u_init, const NewtonSettings& s) {
    const std::size_t n = u_init.size();
    const double tol = s.tol_residual * std::sqrt(static_cast<double>(n));
    NewtonResult res;
    res.u = u_init;
    Vector r = residual_vec(p, res.u);
    res.residual_norm = r.norm();
    for (int it = 0; it < s.max_iter; ++it) {
        if (res.residual_norm <= tol) {
            res.status = NewtonStatus::Converged;
            return res;
        }
        GuardedLU lu(BlockJacobian(p, res.u).dense());
        if (lu.singular()) {
            res.status = NewtonStatus::SingularJacobian;
            return res;
        }
        const Vector dx = lu.solve(-r);
        const Vector x = RealSystem::pack(res.u);
        double lambda = 1.0;
        bool accepted = false;
        while (lambda >= s.min_step) {
            PeriodicField trial = RealSystem::unpack(x + lambda * dx);
            Vector rt = residual_vec(p, trial);
            const double nt = rt.norm();
            if (std::isfinite(nt) && nt < res.residual_norm) {
                res.u = std::move(trial);
                r = std::move(rt);
                res.residual_norm = nt;
                accepted = true;
                break;
            }
            lambda *= s.backtrack;
        }
        res.iterations = it + 1;
        if (!accepted) break;
    }
    res.status = res.residual_norm <= tol ? NewtonStatus::Converged : NewtonStatus::NonConvergence;
    return res;
}

Params with_param(const Params& p, ContinuationParameter param, double value) {
    return param == ContinuationParameter::F1 ? p.with_f1(value) : p.with_zeta(value);
}

BranchPoint make_branch_point(const Params& p, ContinuationParameter param, const PeriodicField& u,
                              bool with_min_sv) {
    BranchPoint bp;
    bp.param_value = param_of(p, param);
    bp.u = u;
    bp.norm_sq_over_2pi = mean_square(u);
    if (with_min_sv) bp.min_sv = smallest_singular_value(BlockJacobian(p, u).dense());
    return bp;
}

Branch trace_branch(const Params& p, const BranchPoint& start, const ContinuationSettings& cs) {
    cs.validate();
    p.validate();
    Tracer tr(p, cs.param, cs, start.u.size());
    const State X0{RealSystem::pack(start.u), start.param_value};

    Branch b;
    const auto T0 = tr.tangent(X0, nullptr);
    if (!T0) {
        b.points.push_back(start);
        b.diagnostics.push_back("singular bordered system at start");
        b.truncated = true;
        return b;
    }

    BranchPoint first = start;
    first.arclength = 0.0;
    auto plus = tr.run(X0, first, *T0);
    b.diagnostics = plus.diagnostics;
    b.truncated = plus.truncated;
    if (plus.closed || !cs.two_sided) {
        b.points = std::move(plus.points);
        b.closed = plus.closed;
        b.start_index = 0;
        return b;
    }
    const State Tm{-T0->x, -T0->p};
    auto minus = tr.run(X0, first, Tm);
    for (auto& d : minus.diagnostics) b.diagnostics.push_back("reverse: " + d);
    b.truncated = b.truncated || minus.truncated;

    const double total_minus = minus.points.back().arclength;
    for (std::size_t k = minus.points.size(); k-- > 1;) {
        BranchPoint bp = std::move(minus.points[k]);
        bp.arclength = total_minus - bp.arclength;
        b.points.push_back(std::move(bp));
    }
    b.start_index = b.points.size();
    for (auto& bp : plus.points) {
        bp.arclength += total_minus;
        b.points.push_back(std::move(bp));
    }
    b.closed = minus.closed;
    return b;
}

double state_distance(const PeriodicField& u, double p, const PeriodicField& v, double q) {
    if (u.size() != v.size()) throw ContractViolation("state_distance: size mismatch");
    return std::sqrt(mean_square(u - v) + (p - q) * (p - q));
}

std::vector<std::size_t> f1_zero_indices(const Branch& b, double tol) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < b.points.size(); ++k)
        if (std::abs(b.points[k].param_value) <= tol) out.push_back(k);
    return out;
}

Branch mirror_branch(const Branch& b, const Params& p) {
    Branch m;
    m.closed = b.closed;
    m.start_index = b.start_index;
    m.provenance = b.provenance.empty() ? "mirror" : "mirror of " + b.provenance;
    m.diagnostics = b.diagnostics;
    m.truncated = b.truncated;
    m.points.reserve(b.points.size());
    for (const auto& bp : b.points) {
        auto [f1, u] = apply_R(p, bp.param_value, bp.u);
        BranchPoint q = bp;
        q.param_value = f1;
        q.u = std::move(u);
        m.points.push_back(std::move(q));
    }
    return m;
}

std::vector<SweepEntry> sweep_zeta(const Params& tmpl, const std::vector<double>& zeta_list, std::size_t n,
                                   const ContinuationSettings& cs, unsigned threads) {
    check_grid(n);
    cs.validate();
    std::vector<SweepEntry> out(zeta_list.size());
    std::atomic<std::size_t> next{0};

    auto job = [&](std::size_t k) {
        SweepEntry& e = out[k];
        e.zeta = zeta_list[k];
        Params p = tmpl.with_zeta(e.zeta).with_f1(0.0);
        e.trivial_points = solve_constants(e.zeta, p.f0);
        for (std::size_t i = 0; i < e.trivial_points.size(); ++i) {
            const TrivialPoint& tp = e.trivial_points[i];
            const PeriodicField u0(n, tp.u0);
            bool covered = false;
            for (const auto& b : e.branches)
                for (std::size_t idx : f1_zero_indices(b))
                    if (state_distance(b.points[idx].u, 0.0, u0, 0.0) <= 1e-5) covered = true;
            if (covered) continue;
            try {
                const auto nr = newton_solve(p, u0, cs.newton);
                if (!nr.converged()) {
                    e.errors.push_back("trivial point " + std::to_string(i) + ": Newton polish failed");
                    continue;
                }
                ContinuationSettings local = cs;
                local.param = ContinuationParameter::F1;
                Branch b = trace_branch(p, make_branch_point(p, ContinuationParameter::F1, nr.u, cs.record_min_sv),
                                        local);
                std::ostringstream os;
                os << "zeta=" << e.zeta << " trivial#" << i << " rho=" << tp.rho;
                b.provenance = os.str();
                e.branches.push_back(std::move(b));
            } catch (const std::exception& ex) {
                e.errors.push_back("trivial point " + std::to_string(i) + ": " + ex.what());
            }
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(zeta_list.size())));
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < zeta_list.size();) job(k);
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::stable_sort(out.begin(), out.end(), [](const SweepEntry& a, const SweepEntry& b) { return a.zeta < b.zeta; });
    return out;
}

}  // namespace lle
