// src/response.cpp

#include "lle/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lle/trivial.hpp"

namespace lle {
namespace {

constexpr double kPi = std::numbers::pi;

bool tiny(cplx den, double scale) { return std::abs(den) < 1e-10 * std::max(1.0, scale); }

}  // namespace

ResponseCoefficients response_coefficients(const Params& p, cplx u0) {
    const cplx i(0.0, 1.0);
    const double k = static_cast<double>(p.k1);
    const double rho = std::norm(u0);
    const double a = p.zeta + p.d * k * k - 2.0 * rho;
    const double wk = p.omega * k;

    ResponseCoefficients r;
    const cplx den_a = a * a - (wk + i) * (wk + i) - rho * rho;
    const cplx den_b = a * a - (wk - i) * (wk - i) - rho * rho;
    const double scale_ab = std::max({a * a, wk * wk, rho * rho});
    r.alpha = -i * (p.d * k * k + wk + p.zeta + i - 2.0 * rho) / den_a;
    r.beta = i * u0 * u0 / den_b;

    r.x = p.zeta - i - 2.0 * rho;
    r.y = -u0 * u0;
    const double ab2 = std::norm(r.alpha) + std::norm(r.beta);
    r.z = 4.0 * u0 * ab2 + 4.0 * std::conj(u0) * r.alpha * r.beta;
    const double den_e = std::norm(r.x) - std::norm(r.y);
    const cplx num_e = -std::conj(r.z) * r.y + r.z * std::conj(r.x);
    r.epsilon = num_e / den_e;

    r.singular = tiny(den_a, scale_ab) || tiny(den_b, scale_ab) ||
                 std::abs(den_e) < 1e-10 * std::max({1.0, std::norm(r.x), std::norm(r.y)});
    const double value = 4.0 * kPi * ((u0 * std::conj(r.epsilon)).real() + ab2);
    if (r.singular || !std::isfinite(value)) {
        r.singular = true;
        // pole: the epsilon term dominates; its sign follows the (signed) denominator
        const double lead = (u0 * std::conj(num_e)).real() * (den_e == 0.0 ? 1.0 : den_e);
        r.second_deriv = std::copysign(std::numeric_limits<double>::infinity(), lead == 0.0 ? 1.0 : lead);
    } else {
        r.second_deriv = value;
    }

    // back-substitution
    const cplx e1 = (p.d * k * k - wk + p.zeta - i - 2.0 * rho) * r.alpha - u0 * u0 * std::conj(r.beta) + i;
    const cplx e2 = (p.d * k * k + wk + p.zeta - i - 2.0 * rho) * r.beta - u0 * u0 * std::conj(r.alpha);
    r.alpha_beta_residual = std::max(std::abs(e1), std::abs(e2));
    r.epsilon_residual = std::abs(r.x * r.epsilon + r.y * std::conj(r.epsilon) - r.z) / std::max(1.0, std::abs(r.z));
    return r;
}

SecondDerivativeCheck second_derivative_vs_numeric(const Params& p, cplx u0, double delta, std::size_t n,
                                                   const NewtonSettings& newton) {
    SecondDerivativeCheck c;
    const Params p0 = p.with_f1(0.0);
    const auto rc = response_coefficients(p0, u0);
    c.analytic = rc.second_deriv;

    auto norm_sq = [&](double f1) -> std::optional<double> {
        const PeriodicField guess = PeriodicField::sample(n, [&](double s) {
            return u0 + f1 * (rc.alpha * std::polar(1.0, p.k1 * s) + rc.beta * std::polar(1.0, -p.k1 * s));
        });
        const auto res = newton_solve(p0.with_f1(f1), guess, newton);
        if (!res.converged()) return std::nullopt;
        return 2.0 * kPi * mean_square(res.u);
    };
    const auto nm = norm_sq(-delta), nz = norm_sq(0.0), np = norm_sq(delta);
    if (!nm || !nz || !np) return c;
    c.n_minus = *nm;
    c.n_zero = *nz;
    c.n_plus = *np;
    c.numeric = (c.n_plus - 2.0 * c.n_zero + c.n_minus) / (delta * delta);
    c.rel_err = std::abs(c.analytic - c.numeric) / std::max(1.0, std::abs(c.analytic));
    c.ok = true;
    return c;
}

std::vector<SignMapRow> sign_map(double f0, double d, double omega, int k1, const std::vector<double>& t_grid) {
    std::vector<SignMapRow> rows;
    rows.reserve(t_grid.size());
    Params p;
    p.d = d;
    p.omega = omega;
    p.f0 = f0;
    p.k1 = k1;
    for (double t : t_grid) {
        const TrivialPoint tp = param_point(t, f0);
        p.zeta = tp.zeta;
        const auto rc = response_coefficients(p, tp.u0);
        SignMapRow row;
        row.t = t;
        row.zeta = tp.zeta;
        row.rho = tp.rho;
        row.second_deriv = rc.second_deriv;
        row.sign = rc.second_deriv > 0.0 ? 1 : (rc.second_deriv < 0.0 ? -1 : 0);
        row.singular = rc.singular;
        rows.push_back(row);
    }
    return rows;
}

std::vector<SignChange> sign_changes(const std::vector<SignMapRow>& rows) {
    std::vector<SignChange> out;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto& a = rows[k - 1];
        const auto& b = rows[k];
        if (a.sign == b.sign || a.sign == 0 || b.sign == 0) continue;
        SignChange c;
        c.t_lo = a.t;
        c.t_hi = b.t;
        c.zeta_lo = a.zeta;
        c.zeta_hi = b.zeta;
        c.sign_before = a.sign;
        c.sign_after = b.sign;
        // the epsilon denominator is the turning-point quadratic
        const double qa = turning_quadratic(a.zeta, a.rho), qb = turning_quadratic(b.zeta, b.rho);
        c.through_pole = (qa > 0.0) != (qb > 0.0);
        out.push_back(c);
    }
    return out;
}

}  // namespace lle
