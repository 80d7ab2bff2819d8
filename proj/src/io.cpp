// src/io.cpp

#include "lle/io.hpp"

#include <charconv>
#include <cmath>

#include "lle/error.hpp"

namespace lle::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string events_to_string(std::uint32_t events) {
    std::string s;
    auto add = [&](std::uint32_t bit, const char* name) {
        if (!(events & bit)) return;
        if (!s.empty()) s += '|';
        s += name;
    };
    add(kFoldDetected, "FoldDetected");
    add(kF1ZeroCrossing, "F1ZeroCrossing");
    add(kLoopClosed, "LoopClosed");
    return s;
}

void write_branch_csv(std::ostream& os, const std::vector<LabeledBranch>& branches, const std::string& param_name) {
    os << "branch_id,step,param_name,param_value,zeta,norm_sq_over_2pi,arclength,min_sv,events\n";
    for (const auto& lb : branches) {
        if (!lb.branch) continue;
        for (std::size_t k = 0; k < lb.branch->points.size(); ++k) {
            const auto& bp = lb.branch->points[k];
            const double zeta = param_name == "zeta" ? bp.param_value : lb.zeta;
            os << lb.id << ',' << k << ',' << param_name << ',' << format_double(bp.param_value) << ','
               << format_double(zeta) << ',' << format_double(bp.norm_sq_over_2pi) << ','
               << format_double(bp.arclength) << ',' << format_double(bp.min_sv) << ','
               << events_to_string(bp.events) << '\n';
        }
    }
}

nlohmann::json params_to_json(const Params& p) {
    nlohmann::json j;
    j["d"] = p.d;
    j["zeta"] = p.zeta;
    j["omega"] = p.omega;
    j["f0"] = p.f0;
    j["f1"] = p.f1;
    j["k1"] = p.k1;
    j["forcing"] = p.forcing.is_sampled() ? "sampled" : "second_harmonic";
    return j;
}

nlohmann::json field_to_json(const PeriodicField& u, const Params& p) {
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& v : u.values()) vals.push_back({v.real(), v.imag()});
    return {{"n", u.size()}, {"params", params_to_json(p)}, {"values", std::move(vals)}};
}

PeriodicField field_from_json(const nlohmann::json& j) {
    const auto& vals = j.at("values");
    const std::size_t n = j.at("n").get<std::size_t>();
    if (vals.size() != n) throw ContractViolation("field json: n does not match value count");
    PeriodicField u(n);
    for (std::size_t k = 0; k < n; ++k) u[k] = cplx(vals[k].at(0).get<double>(), vals[k].at(1).get<double>());
    return u;
}

namespace {

nlohmann::json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

}  // namespace

nlohmann::json to_json(const BifurcationReport& r) {
    nlohmann::json j;
    const auto& lin = r.linearization;
    j["status"] = r.status;
    j["min_svs"] = lin.min_svs;
    j["largest_sv"] = lin.largest_sv;
    j["kernel_dim_estimate"] = lin.kernel_dim_estimate;
    j["simple"] = lin.simple;
    j["simplicity_pairing"] = lin.simplicity_pairing;
    j["derivative_alignment"] = lin.derivative_alignment;
    j["extra_ok"] = r.sigma0.extra_ok;
    j["periodicity_obstruction"] = r.sigma0.periodicity_obstruction;
    j["sigma0_base"] = r.sigma0.base;
    j["period_divisor"] = r.sigma0.period_divisor;
    nlohmann::json cands = nlohmann::json::array();
    for (std::size_t k = 0; k < r.sigma0.candidates.size(); ++k) {
        nlohmann::json c;
        c["sigma0"] = r.sigma0.candidates[k];
        if (k < r.transversal.size()) {
            c["transversality"] = r.transversal[k].value;
            c["transversal"] = r.transversal[k].ok;
        }
        if (k < r.xi_lambda.size()) c["xi_lambda"] = finite_or_null(r.xi_lambda[k]);
        if (k < r.further.size()) {
            const auto& f = r.further[k];
            c["further_lhs"] = f.lhs;
            c["further_rhs"] = f.rhs;
            c["further_cond_ok"] = f.ok;
            c["dot_sigma0"] = f.dot_sigma0;
            c["dot_mu0"] = f.dot_mu0;
            c["dot_mu0_sign"] = f.dot_mu0_sign;
        }
        cands.push_back(std::move(c));
    }
    j["candidates"] = std::move(cands);
    j["parity"] = {{"u_period_divisor", r.parity.u_period_divisor},
                   {"phi_inherits_period", r.parity.phi_inherits_period},
                   {"phi_rotation_residual", r.parity.phi_rotation_residual},
                   {"u_even", r.parity.u_even},
                   {"even_center", r.parity.even_center},
                   {"u_reflection_residual", r.parity.u_reflection_residual},
                   {"phi_even_part", r.parity.phi_even_part},
                   {"pass", r.parity.pass}};
    return j;
}

nlohmann::json to_json(const BoundsReport& r) {
    nlohmann::json j;
    j["F"] = r.F;
    j["B"] = r.B;
    j["C"] = r.C;
    j["Dtilde"] = r.Dtilde;
    j["D"] = r.D ? nlohmann::json(*r.D) : nlohmann::json("inf");
    j["zeta_star_low"] = r.zeta_star_low;
    j["zeta_star_high"] = r.zeta_star_high;
    j["l2_bound"] = r.l2_bound;
    j["linf_bound"] = r.linf_bound;
    j["improved_linf"] = r.improved_linf ? nlohmann::json(*r.improved_linf) : nlohmann::json(nullptr);
    return j;
}

void write_sign_map_csv(std::ostream& os, const std::vector<SignMapRow>& rows) {
    os << "t,zeta,rho,second_deriv,sign,singular\n";
    for (const auto& r : rows)
        os << format_double(r.t) << ',' << format_double(r.zeta) << ',' << format_double(r.rho) << ','
           << format_double(r.second_deriv) << ',' << r.sign << ',' << (r.singular ? 1 : 0) << '\n';
}

}  // namespace lle::io
