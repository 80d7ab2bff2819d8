#include "lle/cli/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "lle/bifurcation.hpp"
#include "lle/bounds.hpp"
#include "lle/cli/manifest.hpp"
#include "lle/cli/threshold.hpp"
#include "lle/discretize.hpp"
#include "lle/error.hpp"
#include "lle/io.hpp"
#include "lle/response.hpp"
#include "lle/spectral.hpp"
#include "lle/trivial.hpp"

namespace lle::cli {

using nlohmann::json;

const std::vector<std::string>& experiment_kinds() {
    static const std::vector<std::string> k = {"trivial-branch", "continue",      "sweep",
                                               "bifurcation-scan", "sign-map",    "bounds-report",
                                               "reproduce-fig",    "locate-threshold"};
    return k;
}

const std::vector<std::string>& figure_targets() {
    static const std::vector<std::string> t = {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"};
    return t;
}

Config figure_preset(const std::string& target) {
    Config c;
    c.set("model.d", "-0.1");
    c.set("model.f0", "2");
    c.set("model.k1", "1");
    c.set("model.omega", "1");
    c.set("grid.n", "1000");
    if (target == "fig1") {
        c.set("experiment.kind", "trivial-branch");
        c.set("trivial.f0_list", "1, " + io::format_double(fstar()) + ", 2");
    } else if (target == "fig2") {
        c.set("experiment.kind", "sweep");
        c.set("model.zeta_list", "linspace(2.4, 4.2, 10)");
    } else if (target == "fig3") {
        c.set("experiment.kind", "sweep");
        c.set("model.zeta_list", "3.1344, 3.1359");
    } else if (target == "fig4") {
        c.set("experiment.kind", "sweep");
        c.set("model.zeta_list", "linspace(2.4, 4.2, 37)");
    } else if (target == "fig5") {
        c.set("experiment.kind", "sign-map");
        c.set("sign_map.check_zeta", "2.4, 2.6, 4.2");
    } else if (target == "fig6") {
        c.set("experiment.kind", "bifurcation-scan");
        c.set("model.omega", "0");
        c.set("model.zeta", "3.9");
        c.set("grid.n", "256");
        c.set("start.trivial_index", "1, 2");
    } else {
        throw ConfigError("unknown reproduce-fig target '" + target + "'");
    }
    c.set("experiment.target", target);
    return c;
}

Config resolve_presets(const Config& user) {
    if (!user.has("experiment.kind") || user.get_string("experiment.kind") != "reproduce-fig") return user;
    if (!user.has("experiment.target")) throw ConfigError("reproduce-fig requires experiment.target");
    Config c = figure_preset(user.get_string("experiment.target"));
    const std::string kind = c.get_string("experiment.kind");
    for (const auto& [k, v] : user.values()) c.set(k, v);
    c.set("experiment.kind", kind);
    return c;
}

namespace {

template <class T>
T checked(bool ok, T value, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
    return value;
}

}  // namespace

ExperimentConfig build_experiment(const Config& cfg) {
    ExperimentConfig e;
    e.kind = cfg.get_string("experiment.kind");
    if (std::find(experiment_kinds().begin(), experiment_kinds().end(), e.kind) == experiment_kinds().end())
        throw ConfigError("unknown experiment.kind '" + e.kind + "'");
    if (e.kind == "reproduce-fig") throw ConfigError("reproduce-fig must be resolved to a concrete kind first");
    if (cfg.has("experiment.target")) e.target = cfg.get_string("experiment.target");
    e.seed = static_cast<std::uint64_t>(cfg.get_int("experiment.seed"));

    e.params.d = cfg.get_double("model.d");
    e.params.f0 = cfg.get_double("model.f0");
    e.params.f1 = cfg.get_double("model.f1");
    e.params.omega = cfg.get_double("model.omega");
    const auto k1 = cfg.get_int("model.k1");
    e.params.k1 = checked(k1 >= 1 && k1 <= 1 << 20, static_cast<int>(k1), "model.k1 must be >= 1");
    if (cfg.has("model.zeta")) {
        e.zeta = cfg.get_double("model.zeta");
        e.params.zeta = *e.zeta;
    }
    e.zeta_list = cfg.get_double_list("model.zeta_list");
    try {
        e.params.validate();
    } catch (const DomainError& ex) {
        throw ConfigError(std::string("model: ") + ex.what());
    }

    const auto n = cfg.get_int("grid.n");
    if (n < 8 || n % 2 != 0 || n > (1 << 16)) throw ConfigError("grid.n must be even and in [8, 65536]");
    e.n = static_cast<std::size_t>(n);

    auto& cs = e.continuation;
    const std::string param = cfg.get_string("continuation.param");
    if (param == "f1")
        cs.param = ContinuationParameter::F1;
    else if (param == "zeta")
        cs.param = ContinuationParameter::Zeta;
    else
        throw ConfigError("continuation.param must be f1 or zeta");
    cs.ds0 = cfg.get_double("continuation.ds0");
    cs.ds_min = cfg.get_double("continuation.ds_min");
    cs.ds_max = cfg.get_double("continuation.ds_max");
    cs.max_steps = static_cast<int>(cfg.get_int("continuation.max_steps"));
    cs.loop_tol = cfg.get_double("continuation.loop_tol");
    cs.param_min = cfg.get_double("continuation.param_min");
    cs.param_max = cfg.get_double("continuation.param_max");
    cs.max_tangent_turn = cfg.get_double("continuation.max_tangent_turn");
    cs.two_sided = cfg.get_bool("continuation.two_sided");
    cs.record_min_sv = cfg.get_bool("continuation.record_min_sv");
    cs.newton.tol_residual = cfg.get_double("newton.tol_residual");
    cs.newton.max_iter = static_cast<int>(cfg.get_int("newton.max_iter"));
    if (!(cs.newton.tol_residual > 0.0) || cs.newton.max_iter < 1)
        throw ConfigError("newton: tol_residual must be > 0 and max_iter >= 1");
    if (cs.max_steps < 1) throw ConfigError("continuation.max_steps must be >= 1");
    if (!(cs.param_min < cs.param_max)) throw ConfigError("continuation.param_min must be below param_max");
    try {
        cs.validate();
    } catch (const DomainError& ex) {
        throw ConfigError(std::string("continuation: ") + ex.what());
    }

    for (auto i : cfg.get_int_list("start.trivial_index")) {
        if (i < 0 || i > 2) throw ConfigError("start.trivial_index entries must be 0, 1 or 2");
        e.trivial_index.push_back(static_cast<int>(i));
    }

    e.trivial_f0_list = cfg.get_double_list("trivial.f0_list");
    e.trivial_t_count = static_cast<int>(cfg.get_int("trivial.t_count"));
    e.trivial_t_max = cfg.get_double("trivial.t_max");
    if (e.trivial_t_count < 2 || !(e.trivial_t_max > 0.0 && e.trivial_t_max < 1.0))
        throw ConfigError("trivial: t_count >= 2 and 0 < t_max < 1 required");

    e.sign_t_min = cfg.get_double("sign_map.t_min");
    e.sign_t_max = cfg.get_double("sign_map.t_max");
    e.sign_t_count = static_cast<int>(cfg.get_int("sign_map.t_count"));
    if (!(-1.0 < e.sign_t_min && e.sign_t_min < e.sign_t_max && e.sign_t_max < 1.0) || e.sign_t_count < 2)
        throw ConfigError("sign_map: need -1 < t_min < t_max < 1 and t_count >= 2");
    e.sign_check_zeta = cfg.get_double_list("sign_map.check_zeta");
    e.sign_fd_step = cfg.get_double("sign_map.fd_step");
    const auto cn = cfg.get_int("sign_map.check_n");
    if (!(e.sign_fd_step > 0.0) || cn < 8 || cn % 2 != 0)
        throw ConfigError("sign_map: fd_step > 0 and even check_n >= 8 required");
    e.sign_check_n = static_cast<std::size_t>(cn);

    e.bounds_multistart = static_cast<int>(cfg.get_int("bounds.multistart"));
    e.bounds_inflation = cfg.get_double("bounds.inflation");
    if (e.bounds_multistart < 0 || !(e.bounds_inflation >= 1.0))
        throw ConfigError("bounds: multistart >= 0 and inflation >= 1 required");

    if (cfg.has("threshold.lo")) e.threshold_lo = cfg.get_double("threshold.lo");
    if (cfg.has("threshold.hi")) e.threshold_hi = cfg.get_double("threshold.hi");
    e.threshold_width = cfg.get_double("threshold.width");
    e.rank_tol = cfg.get_double("bifurcation.rank_tol");

    e.out_dir = cfg.get_string("output.dir");
    if (e.out_dir.empty()) throw ConfigError("output.dir must not be empty");
    e.write_fields = cfg.get_bool("output.write_fields");
    const auto threads = cfg.get_int("run.threads");
    if (threads < 0 || threads > 1024) throw ConfigError("run.threads must be in [0, 1024]");
    e.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : static_cast<unsigned>(threads);
    e.verbose = cfg.get_bool("run.verbose");

    // kind-specific requirements
    if ((e.kind == "continue" || e.kind == "bifurcation-scan") && !e.zeta)
        throw ConfigError(e.kind + " requires model.zeta");
    if (e.kind == "sweep" && e.zeta_list.empty()) {
        if (!e.zeta) throw ConfigError("sweep requires model.zeta_list or model.zeta");
        e.zeta_list = {*e.zeta};
    }
    if (e.kind == "bounds-report" && !e.zeta) throw ConfigError("bounds-report requires model.zeta");
    if (e.kind == "locate-threshold") {
        if (!e.threshold_lo || !e.threshold_hi) throw ConfigError("locate-threshold requires threshold.lo and threshold.hi");
        if (*e.threshold_lo > *e.threshold_hi) throw ConfigError("threshold.lo must not exceed threshold.hi");
        if (!(e.threshold_width > 0.0)) throw ConfigError("threshold.width must be positive");
    }
    if (e.kind == "bifurcation-scan" && e.n % (2 * static_cast<std::size_t>(e.params.k1)) != 0)
        throw ConfigError("bifurcation-scan requires grid.n divisible by 2*k1");
    return e;
}

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

bool is_constant(const PeriodicField& u) {
    return norms(derivative(u)).l2 <= 1e-6 * std::max(1.0, norms(u).l2);
}

struct Context {
    const ExperimentConfig& e;
    OutputSet& out;
    const Logger& log;
    std::vector<std::string> errors;
    json summary = json::object();

    void info(const std::string& msg) const {
        if (e.verbose && log) log(msg);
    }
};

std::string csv_line(std::initializer_list<std::string> cells) {
    std::string s;
    bool first = true;
    for (const auto& c : cells) {
        if (!first) s += ',';
        s += c;
        first = false;
    }
    return s + "\n";
}

using io::format_double;

// ----- trivial-branch ---------------------------------------------------

void run_trivial_branch(Context& ctx) {
    const auto& e = ctx.e;
    std::vector<double> f0s = e.trivial_f0_list.empty() ? std::vector<double>{e.params.f0} : e.trivial_f0_list;
    std::string csv = "f0,t,zeta,rho,re_u0,im_u0,zeta_prime,turning_quadratic,residual\n";
    json tp_json = json::array();
    for (double f0 : f0s) {
        for (int i = 0; i < e.trivial_t_count; ++i) {
            const double t = -e.trivial_t_max + 2.0 * e.trivial_t_max * i / (e.trivial_t_count - 1);
            const TrivialPoint tp = param_point(t, f0);
            csv += csv_line({format_double(f0), format_double(t), format_double(tp.zeta), format_double(tp.rho),
                             format_double(tp.u0.real()), format_double(tp.u0.imag()),
                             format_double(zeta_prime(t, f0)), format_double(turning_quadratic(tp.zeta, tp.rho)),
                             format_double(std::abs(trivial_residual(tp)))});
        }
        const auto rep = turning_points(f0);
        json pts = json::array();
        for (const auto& p : rep.points)
            pts.push_back({{"t", p.t}, {"zeta", p.zeta}, {"rho", p.rho}, {"turning_quadratic", turning_quadratic(p.zeta, p.rho)}});
        tp_json.push_back({{"f0", f0}, {"count", rep.count}, {"fstar", rep.fstar}, {"points", pts}});
    }
    ctx.out.write_text("trivial_curve.csv", csv, "constant solutions along the curve parameter t");
    ctx.out.write_json("turning_points.json", tp_json, "turning points per f0");
    ctx.summary["turning_point_counts"] = json::array();
    for (const auto& j : tp_json) ctx.summary["turning_point_counts"].push_back({{"f0", j["f0"]}, {"count", j["count"]}});
}

// ----- branch tracing shared by continue / bifurcation-scan -------------

struct Traced {
    double zeta = 0.0;
    std::vector<TrivialPoint> trivial;
    std::vector<Branch> branches;
    std::vector<int> start_index;  // trivial index each branch started from
};

Traced trace_from_constants(Context& ctx, double zeta, const std::vector<int>& wanted) {
    const auto& e = ctx.e;
    Traced tr;
    tr.zeta = zeta;
    tr.trivial = solve_constants(zeta, e.params.f0);
    Params p = e.params.with_zeta(zeta);
    std::vector<int> idx = wanted;
    if (idx.empty())
        for (int i = 0; i < static_cast<int>(tr.trivial.size()); ++i) idx.push_back(i);

    const double p_start = e.continuation.param == ContinuationParameter::F1 ? 0.0 : zeta;
    if (e.continuation.param == ContinuationParameter::Zeta) p = p.with_f1(e.params.f1);
    for (int i : idx) {
        if (i >= static_cast<int>(tr.trivial.size())) {
            ctx.errors.push_back("zeta=" + format_double(zeta) + ": trivial index " + std::to_string(i) +
                                 " not available (" + std::to_string(tr.trivial.size()) + " constant solutions)");
            continue;
        }
        const PeriodicField u_c(e.n, tr.trivial[static_cast<std::size_t>(i)].u0);
        bool seen = false;
        for (const auto& b : tr.branches)
            for (auto k : f1_zero_indices(b))
                if (state_distance(u_c, 0.0, b.points[k].u, b.points[k].param_value) <= 1e-5) seen = true;
        if (seen && e.continuation.param == ContinuationParameter::F1) {
            ctx.info("zeta=" + format_double(zeta) + ": trivial point " + std::to_string(i) + " lies on an earlier branch");
            continue;
        }
        auto nr = newton_solve(with_param(p, e.continuation.param, p_start), u_c, e.continuation.newton);
        if (!nr.converged()) {
            ctx.errors.push_back("zeta=" + format_double(zeta) + ": Newton failed at trivial point " + std::to_string(i));
            continue;
        }
        ctx.info("tracing from trivial point " + std::to_string(i) + " at zeta=" + format_double(zeta));
        const auto start = make_branch_point(p, e.continuation.param, nr.u, e.continuation.record_min_sv);
        Branch b = trace_branch(p, start, e.continuation);
        std::ostringstream prov;
        prov << "zeta=" << format_double(zeta) << " trivial#" << i << " rho=" << format_double(tr.trivial[static_cast<std::size_t>(i)].rho);
        b.provenance = prov.str();
        tr.branches.push_back(std::move(b));
        tr.start_index.push_back(i);
    }
    return tr;
}

double f1_extent(const Branch& b, bool want_max) {
    double v = want_max ? -INFINITY : INFINITY;
    for (const auto& bp : b.points) v = want_max ? std::max(v, bp.param_value) : std::min(v, bp.param_value);
    return v;
}

json branch_summary(const Branch& b, int id, double zeta, const std::vector<TrivialPoint>& trivial,
                    const ContinuationSettings& cs) {
    json zeros = json::array();
    std::vector<int> connects;
    for (auto k : f1_zero_indices(b)) {
        const auto& bp = b.points[k];
        if (bp.has(kLoopClosed)) continue;
        json z = {{"index", k}, {"norm_sq_over_2pi", bp.norm_sq_over_2pi}, {"constant", is_constant(bp.u)}};
        if (is_constant(bp.u)) {
            for (std::size_t i = 0; i < trivial.size(); ++i)
                if (std::abs(bp.norm_sq_over_2pi - trivial[i].rho) <= 1e-4) {
                    z["trivial_index"] = i;
                    if (std::find(connects.begin(), connects.end(), int(i)) == connects.end()) connects.push_back(int(i));
                }
        }
        zeros.push_back(z);
    }
    std::sort(connects.begin(), connects.end());
    const double lo = f1_extent(b, false), hi = f1_extent(b, true);
    std::string shape = b.closed ? "loop" : (b.truncated ? "truncated" : "open");
    if (!b.closed && cs.param == ContinuationParameter::F1 && lo <= cs.param_min + 1e-8 && hi >= cs.param_max - 1e-8)
        shape = "spans-window";
    std::size_t folds = 0;
    for (const auto& bp : b.points) folds += bp.has(kFoldDetected);
    return {{"id", id},
            {"zeta", zeta},
            {"provenance", b.provenance},
            {"closed", b.closed},
            {"truncated", b.truncated},
            {"shape", shape},
            {"points", b.points.size()},
            {"param_min", lo},
            {"param_max", hi},
            {"arclength", b.points.empty() ? 0.0 : b.points.back().arclength},
            {"folds", folds},
            {"f1_zero_points", zeros},
            {"connects_trivial", connects},
            {"diagnostics", b.diagnostics}};
}

const char* param_name(ContinuationParameter p) { return p == ContinuationParameter::F1 ? "f1" : "zeta"; }

void write_fields(Context& ctx, const Branch& b, int id, const Params& p) {
    if (!ctx.e.write_fields) return;
    for (auto k : f1_zero_indices(b)) {
        if (b.points[k].has(kLoopClosed)) continue;
        ctx.out.write_json("fields/branch" + std::to_string(id) + "_point" + std::to_string(k) + ".json",
                           io::field_to_json(b.points[k].u, p.with_f1(b.points[k].param_value)),
                           "field snapshot at an f1 = 0 point");
    }
}

// ----- continue ----------------------------------------------------------

void run_continue(Context& ctx) {
    const auto& e = ctx.e;
    Traced tr = trace_from_constants(ctx, *e.zeta, e.trivial_index);
    std::vector<io::LabeledBranch> labeled;
    json js = json::array();
    for (std::size_t i = 0; i < tr.branches.size(); ++i) {
        labeled.push_back({int(i), tr.zeta, &tr.branches[i]});
        js.push_back(branch_summary(tr.branches[i], int(i), tr.zeta, tr.trivial, e.continuation));
        if (tr.branches[i].truncated) ctx.errors.push_back("branch " + std::to_string(i) + " truncated");
        write_fields(ctx, tr.branches[i], int(i), e.params.with_zeta(tr.zeta));
    }
    std::ostringstream csv;
    io::write_branch_csv(csv, labeled, param_name(e.continuation.param));
    ctx.out.write_text("branches.csv", csv.str(), "branch points");
    json trivial = json::array();
    for (const auto& tp : tr.trivial) trivial.push_back({{"rho", tp.rho}, {"re_u0", tp.u0.real()}, {"im_u0", tp.u0.imag()}});
    ctx.out.write_json("branches.json", {{"zeta", tr.zeta}, {"trivial", trivial}, {"branches", js}}, "branch summaries");
    ctx.summary["branches"] = json::array();
    for (const auto& b : js)
        ctx.summary["branches"].push_back({{"id", b["id"]}, {"shape", b["shape"]}, {"connects_trivial", b["connects_trivial"]}});
}

// ----- sweep -------------------------------------------------------------

void run_sweep(Context& ctx) {
    const auto& e = ctx.e;
    ctx.info("sweep over " + std::to_string(e.zeta_list.size()) + " zeta values on " + std::to_string(e.threads) + " threads");
    const auto entries = sweep_zeta(e.params, e.zeta_list, e.n, e.continuation, e.threads);
    std::vector<io::LabeledBranch> labeled;
    json js = json::array();
    int id = 0;
    for (const auto& en : entries) {
        json trivial = json::array();
        for (const auto& tp : en.trivial_points) trivial.push_back({{"rho", tp.rho}, {"re_u0", tp.u0.real()}, {"im_u0", tp.u0.imag()}});
        json bs = json::array();
        for (const auto& b : en.branches) {
            labeled.push_back({id, en.zeta, &b});
            bs.push_back(branch_summary(b, id, en.zeta, en.trivial_points, e.continuation));
            if (b.truncated) ctx.errors.push_back("zeta=" + format_double(en.zeta) + ": branch " + std::to_string(id) + " truncated");
            write_fields(ctx, b, id, e.params.with_zeta(en.zeta));
            ++id;
        }
        for (const auto& err : en.errors) ctx.errors.push_back("zeta=" + format_double(en.zeta) + ": " + err);
        js.push_back({{"zeta", en.zeta}, {"trivial", trivial}, {"branches", bs}, {"errors", en.errors}});
    }
    std::ostringstream csv;
    io::write_branch_csv(csv, labeled, param_name(e.continuation.param));
    ctx.out.write_text("branches.csv", csv.str(), "branch points for every zeta");
    ctx.out.write_json("sweep.json", js, "per-zeta constant solutions and branch summaries");
    json s = json::array();
    for (const auto& z : js) {
        json shapes = json::array();
        for (const auto& b : z["branches"]) shapes.push_back({{"shape", b["shape"]}, {"connects_trivial", b["connects_trivial"]}});
        s.push_back({{"zeta", z["zeta"]}, {"branches", shapes}});
    }
    ctx.summary["sweep"] = s;
}

// ----- bifurcation-scan --------------------------------------------------

void run_bifurcation_scan(Context& ctx) {
    const auto& e = ctx.e;
    Traced tr = trace_from_constants(ctx, *e.zeta, e.trivial_index);
    const Params p = e.params.with_zeta(*e.zeta).with_f1(0.0);
    const double h = 2.0 * std::numbers::pi / static_cast<double>(e.n);

    struct Crossing {
        int branch;
        std::size_t index;
        PeriodicField u;
    };
    std::vector<Crossing> crossings;
    for (std::size_t bi = 0; bi < tr.branches.size(); ++bi) {
        const auto& b = tr.branches[bi];
        for (auto k : f1_zero_indices(b)) {
            const auto& bp = b.points[k];
            if (bp.has(kLoopClosed) || is_constant(bp.u)) continue;
            bool dup = false;
            for (const auto& c : crossings) dup = dup || state_distance(c.u, 0.0, bp.u, 0.0) <= 1e-6;
            if (!dup) crossings.push_back({int(bi), k, bp.u});
        }
    }

    std::vector<io::LabeledBranch> labeled;
    json bjs = json::array();
    for (std::size_t i = 0; i < tr.branches.size(); ++i) {
        labeled.push_back({int(i), tr.zeta, &tr.branches[i]});
        bjs.push_back(branch_summary(tr.branches[i], int(i), tr.zeta, tr.trivial, e.continuation));
        if (tr.branches[i].truncated) ctx.errors.push_back("branch " + std::to_string(i) + " truncated");
        write_fields(ctx, tr.branches[i], int(i), p);
    }
    std::ostringstream csv;
    io::write_branch_csv(csv, labeled, param_name(e.continuation.param));
    ctx.out.write_text("branches.csv", csv.str(), "branch points");

    json cj = json::array();
    std::vector<double> observed;
    bool all_matched = true;
    for (std::size_t c = 0; c < crossings.size(); ++c) {
        const auto& cr = crossings[c];
        ctx.info("analyzing crossing " + std::to_string(c) + " on branch " + std::to_string(cr.branch));
        const auto sf = spectral::best_shift(crossings.front().u, cr.u);
        observed.push_back(c == 0 ? 0.0 : sf.tau);
        json item = {{"branch", cr.branch},
                     {"index", cr.index},
                     {"norm_sq_over_2pi", mean_square(cr.u)},
                     {"shift_from_first", c == 0 ? 0.0 : sf.tau},
                     {"shift_residual", c == 0 ? 0.0 : sf.residual},
                     {"period_divisor", spectral::period_divisor(cr.u, 1e-6)}};
        try {
            const auto rep = analyze_bifurcation(p, cr.u);
            item["report"] = io::to_json(rep);
            if (rep.status != "ok") ctx.errors.push_back("crossing " + std::to_string(c) + ": " + rep.status);
        } catch (const NumericalFailure& ex) {
            item["error"] = ex.what();
            ctx.errors.push_back("crossing " + std::to_string(c) + ": " + ex.what());
        }
        ctx.out.write_json("fields/crossing" + std::to_string(c) + ".json", io::field_to_json(cr.u, p),
                           "nonconstant f1 = 0 crossing solution");
        cj.push_back(item);
    }

    // observed shifts against the candidates predicted at the first crossing
    json match = json::array();
    if (!cj.empty() && cj[0].contains("report")) {
        const auto& cands = cj[0]["report"]["candidates"];
        for (double tau : observed) {
            double best = INFINITY;
            for (const auto& s : cands) best = std::min(best, spectral::circular_distance(tau, s["sigma0"].get<double>()));
            const bool ok = best <= 2.0 * h;
            all_matched = all_matched && ok;
            match.push_back({{"observed_shift", tau}, {"distance", num(best)}, {"grid_spacings", num(best / h)}, {"ok", ok}});
        }
    }
    ctx.out.write_json("bifurcation.json",
                       {{"zeta", tr.zeta}, {"n", e.n}, {"h", h}, {"branches", bjs}, {"crossings", cj}, {"shift_match", match}},
                       "crossing analysis");
    if (crossings.empty()) ctx.errors.push_back("no nonconstant f1 = 0 crossing found");
    ctx.summary["crossings"] = crossings.size();
    ctx.summary["observed_shifts"] = observed;
    ctx.summary["shifts_match_candidates"] = all_matched && !match.empty();
}

// ----- sign-map ----------------------------------------------------------

void run_sign_map(Context& ctx) {
    const auto& e = ctx.e;
    std::vector<double> ts(static_cast<std::size_t>(e.sign_t_count));
    for (int i = 0; i < e.sign_t_count; ++i)
        ts[std::size_t(i)] = e.sign_t_min + (e.sign_t_max - e.sign_t_min) * i / (e.sign_t_count - 1);
    const auto rows = sign_map(e.params.f0, e.params.d, e.params.omega, e.params.k1, ts);
    std::ostringstream csv;
    io::write_sign_map_csv(csv, rows);
    ctx.out.write_text("sign_map.csv", csv.str(), "sign of the second derivative along the constant-solution curve");
    json ch = json::array();
    for (const auto& c : sign_changes(rows))
        ch.push_back({{"t_lo", c.t_lo}, {"t_hi", c.t_hi}, {"zeta_lo", c.zeta_lo}, {"zeta_hi", c.zeta_hi},
                      {"sign_before", c.sign_before}, {"sign_after", c.sign_after}, {"through_pole", c.through_pole}});
    ctx.out.write_json("sign_changes.json", ch, "sign changes of the second derivative");
    ctx.summary["sign_changes"] = ch.size();

    if (e.sign_check_zeta.empty()) return;
    std::string dcsv = "zeta,trivial_index,rho,analytic,numeric,rel_err,asymmetry,ok\n";
    json checks = json::array();
    for (double z : e.sign_check_zeta) {
        const auto tps = solve_constants(z, e.params.f0);
        for (std::size_t i = 0; i < tps.size(); ++i) {
            const Params p = e.params.with_zeta(z).with_f1(0.0);
            if (!is_nondegenerate(tps[i], p.omega, p.d).nondegenerate) {
                ctx.errors.push_back("zeta=" + format_double(z) + ": degenerate constant solution skipped");
                continue;
            }
            const auto chk = second_derivative_vs_numeric(p, tps[i].u0, e.sign_fd_step, e.sign_check_n, e.continuation.newton);
            const double asym = std::abs(chk.n_plus - chk.n_minus) / std::max(std::abs(chk.n_plus - chk.n_zero), 1e-300);
            if (!chk.ok) ctx.errors.push_back("zeta=" + format_double(z) + ": Newton failed in the second-derivative check");
            dcsv += csv_line({format_double(z), std::to_string(i), format_double(tps[i].rho), format_double(chk.analytic),
                              format_double(chk.numeric), format_double(chk.rel_err), format_double(asym),
                              chk.ok ? "1" : "0"});
            checks.push_back({{"zeta", z}, {"rel_err", chk.rel_err}, {"asymmetry", asym}});
        }
    }
    ctx.out.write_text("second_derivative.csv", dcsv, "analytic vs finite-difference second derivative");
    ctx.summary["second_derivative_checks"] = checks;
}

// ----- bounds-report -----------------------------------------------------

void run_bounds_report(Context& ctx) {
    const auto& e = ctx.e;
    const Params& p = e.params;
    const auto rep = compute_bounds(p);
    const auto uq = uniqueness_classify(p);
    const auto gc = corollary_case(p);
    json j = {{"params", io::params_to_json(p)},
              {"bounds", io::to_json(rep)},
              {"uniqueness", {{"unique", uq.unique}, {"case", to_string(uq.which)}}},
              {"constant_forcing", {{"C", constant_forcing_C(p.d, p.f0)}, {"global", gc.global}, {"case", to_string(gc.which)}}},
              {"operator_norm_bound", operator_norm_bound(p)}};
    ctx.summary["uniqueness"] = j["uniqueness"];

    if (e.bounds_multistart > 0) {
        const auto runs = multistart(p, e.n, e.bounds_multistart, e.seed, rep.linf_bound,
                                     NewtonSettings{e.continuation.newton.tol_residual, 200, 0.5, 1.0 / 1024.0});
        std::string csv = "start,converged,iterations,linf_start,linf_diff_to_first,bounds_pass\n";
        const PeriodicField* first = nullptr;
        double spread = 0.0;
        int converged = 0;
        for (std::size_t s = 0; s < runs.size(); ++s) {
            const auto& r = runs[s];
            double diff = NAN;
            bool pass = false;
            if (r.converged) {
                ++converged;
                if (!first) first = &r.u;
                diff = norms(r.u - *first).linf;
                spread = std::max(spread, diff);
                pass = verify_bounds(p, r.u, rep, e.bounds_inflation).pass;
                if (!pass) ctx.errors.push_back("start " + std::to_string(s) + ": bound violated");
            } else {
                ctx.errors.push_back("start " + std::to_string(s) + ": Newton did not converge");
            }
            csv += csv_line({std::to_string(s), r.converged ? "1" : "0", std::to_string(r.iterations),
                             format_double(r.linf_start), format_double(diff), pass ? "1" : "0"});
        }
        ctx.out.write_text("multistart.csv", csv, "random-start Newton runs");
        j["multistart"] = {{"runs", e.bounds_multistart}, {"converged", converged}, {"max_linf_spread", spread}, {"seed", e.seed}};
        ctx.summary["multistart"] = j["multistart"];
    }
    ctx.out.write_json("bounds.json", j, "a-priori bounds and uniqueness verdicts");
}

// ----- locate-threshold ---------------------------------------------------

void run_locate_threshold(Context& ctx) {
    const auto& e = ctx.e;
    ContinuationSettings cs = e.continuation;
    cs.param = ContinuationParameter::F1;
    cs.record_min_sv = false;
    const auto r = locate_threshold(e.params, *e.threshold_lo, *e.threshold_hi, e.threshold_width, e.n, cs);
    json probes = json::array();
    for (const auto& pr : r.probes)
        probes.push_back({{"zeta", pr.zeta},
                          {"verdict", pr.verdict ? json(to_string(*pr.verdict)) : json(nullptr)},
                          {"diagnostic", pr.diagnostic},
                          {"closed", pr.closed},
                          {"points", pr.points},
                          {"rho", pr.rho},
                          {"zero_norms", pr.zero_norms}});
    json j = {{"lo", r.lo},
              {"hi", r.hi},
              {"at_lo", r.at_lo ? json(to_string(*r.at_lo)) : json(nullptr)},
              {"at_hi", r.at_hi ? json(to_string(*r.at_hi)) : json(nullptr)},
              {"probes", probes}};
    ctx.out.write_json("threshold.json", j, "connectivity threshold bracket");
    ctx.summary["interval"] = {r.lo, r.hi};
}

}  // namespace

std::vector<MultistartRun> multistart(const Params& p, std::size_t n, int runs, std::uint64_t seed,
                                      double linf_radius, const NewtonSettings& newton) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_real_distribution<double> radius(0.05, 1.0);
    std::vector<MultistartRun> out;
    for (int s = 0; s < runs; ++s) {
        std::vector<cplx> modes(5);
        for (auto& m : modes) m = {unif(rng), unif(rng)};
        PeriodicField u = PeriodicField::sample(n, [&](double x) {
            cplx v{};
            for (int m = -2; m <= 2; ++m) v += modes[std::size_t(m + 2)] * std::polar(1.0, m * x);
            return v;
        });
        u *= radius(rng) * linf_radius / std::max(norms(u).linf, 1e-300);
        MultistartRun r;
        r.linf_start = norms(u).linf;
        const auto nr = newton_solve(p, u, newton);
        r.converged = nr.converged();
        r.iterations = nr.iterations;
        r.u = nr.u;
        out.push_back(std::move(r));
    }
    return out;
}

RunOutcome run(const Config& user_cfg, const Logger& log) {
    const auto t0 = std::chrono::steady_clock::now();
    const Config cfg = resolve_presets(user_cfg);
    const ExperimentConfig e = build_experiment(cfg);
    OutputSet out(e.out_dir);

    Context ctx{e, out, log, {}, json::object()};
    RunOutcome res;
    try {
        if (e.kind == "trivial-branch")
            run_trivial_branch(ctx);
        else if (e.kind == "continue")
            run_continue(ctx);
        else if (e.kind == "sweep")
            run_sweep(ctx);
        else if (e.kind == "bifurcation-scan")
            run_bifurcation_scan(ctx);
        else if (e.kind == "sign-map")
            run_sign_map(ctx);
        else if (e.kind == "bounds-report")
            run_bounds_report(ctx);
        else if (e.kind == "locate-threshold")
            run_locate_threshold(ctx);
        res.exit_code = ctx.errors.empty() ? kExitOk : kExitPartial;
        res.status = ctx.errors.empty() ? "ok" : "partial";
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& ex) {
        // NumericalFailure, DomainError and anything else raised mid-run
        ctx.errors.push_back(ex.what());
        res.exit_code = kExitNumerical;
        res.status = "failed";
    }
    res.errors = ctx.errors;
    res.summary = ctx.summary;

    ManifestInput mi;
    mi.kind = e.kind;
    mi.config_canonical = cfg.canonical(true);
    mi.config_hashed = cfg.canonical(true, {"output.dir", "run.threads", "run.verbose"});
    mi.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    mi.exit_code = res.exit_code;
    mi.status = res.status;
    mi.errors = res.errors;
    mi.summary = res.summary;
    res.manifest = write_manifest(out, mi);
    return res;
}

}  // namespace lle::cli
