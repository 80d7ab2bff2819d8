// src/bifurcation.cpp

#include "lle/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lle/error.hpp"
#include "lle/linalg.hpp"
#include "lle/spectral.hpp"

namespace lle {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double l2(const PeriodicField& u) { return std::sqrt(inner(u, u)); }

PeriodicField normalized(PeriodicField u) {
    const double nrm = l2(u);
    if (nrm > 0.0) u *= cplx(1.0 / nrm, 0.0);
    return u;
}

PeriodicField shifted_harmonic(std::size_t n, int k1, double sigma) {
    return PeriodicField::sample(n, [&](double s) { return std::polar(1.0, k1 * (s + sigma)); });
}

double wrap(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    if (r >= period) r -= period;
    return r;
}

}  // namespace

LinearizationReport analyze_linearization(const Params& p, const PeriodicField& u0, double rank_tol) {
    LinearizationReport rep;
    rep.u0 = u0;
    const auto tr = smallest_singular_triplets(BlockJacobian(p, u0).dense(), 3);
    rep.min_svs.assign(tr.values.data(), tr.values.data() + tr.values.size());
    rep.largest_sv = tr.largest;
    rep.kernel_vec = normalized(RealSystem::unpack(tr.right));
    rep.adjoint_kernel_vec = normalized(RealSystem::unpack(tr.left));
    for (double s : rep.min_svs)
        if (s < rank_tol * tr.largest) ++rep.kernel_dim_estimate;
    const PeriodicField du = derivative(u0);
    const double dn = l2(du);
    if (dn > 0.0) {
        rep.simplicity_pairing = std::abs(inner(du, rep.adjoint_kernel_vec)) / dn;
        rep.derivative_alignment = std::abs(inner(rep.kernel_vec, du)) / dn;
    }
    rep.nonsimple_kernel = rep.kernel_dim_estimate >= 2;
    rep.simple = rep.kernel_dim_estimate == 1 && rep.simplicity_pairing > 1e-6;
    return rep;
}

double sigma0_condition(const PeriodicField& phi_star, int k1, double sigma) {
    return integral_conj(shifted_harmonic(phi_star.size(), k1, sigma), phi_star).imag();
}

Sigma0Result sigma0_candidates(const PeriodicField& u0, const PeriodicField& phi_star, int k1, double tol) {
    Sigma0Result r;
    const std::size_t n = phi_star.size();
    const double h = kTwoPi / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double s = PeriodicField::node(j, n);
        const double c = std::cos(k1 * s), sn = std::sin(k1 * s);
        r.A += h * (c * phi_star[j].imag() - sn * phi_star[j].real());
        r.Bden += h * (sn * phi_star[j].imag() + c * phi_star[j].real());
    }
    const double scale = tol * std::sqrt(kTwoPi) * l2(phi_star);
    r.extra_ok = std::hypot(r.A, r.Bden) > scale;
    r.period_divisor = spectral::period_divisor(u0, 1e-6);
    if (!r.extra_ok) {
        r.periodicity_obstruction = true;
        return r;
    }
    const double period = kPi / k1;
    double phase = std::atan2(r.A, r.Bden);
    if (std::abs(r.Bden) <= scale) phase = 0.5 * kPi;  // read as cos(k1 sigma0) = 0
    r.base = wrap(phase / k1, period);
    const double u_period = kTwoPi / static_cast<double>(r.period_divisor);
    for (int j = 0; j < 2 * k1; ++j) {
        const double c = wrap(r.base + j * period, u_period);
        const bool dup = std::any_of(r.candidates.begin(), r.candidates.end(), [&](double x) {
            return spectral::circular_distance(x, c, u_period) < 1e-9;
        });
        if (!dup) r.candidates.push_back(c);
    }
    std::sort(r.candidates.begin(), r.candidates.end());
    return r;
}

Transversality transversality(const PeriodicField& phi_star, double sigma0, int k1) {
    Transversality t;
    t.value = k1 * integral_conj(shifted_harmonic(phi_star.size(), k1, sigma0), phi_star).real();
    t.ok = std::abs(t.value) > 1e-8 * k1 * l2(phi_star) * std::sqrt(kTwoPi);
    return t;
}

XiSolution solve_xi(const Params& p, const PeriodicField& u0, double sigma0) {
    const std::size_t n = u0.size();
    const auto dim = static_cast<Eigen::Index>(2 * n);
    const PeriodicField du = derivative(u0);
    const Vector g = RealSystem::pack(du);
    Matrix a(dim + 1, dim + 1);
    BlockJacobian jac(p, u0);
    jac.assemble_into(a);
    a.col(dim).head(dim) = g;
    a.row(dim).head(dim) = g.transpose();
    a(dim, dim) = 0.0;
    GuardedLU lu(a);
    if (lu.singular()) throw NumericalFailure("solve_xi: bordered system singular");

    PeriodicField rhs_f = shifted_harmonic(n, p.k1, sigma0);
    rhs_f *= cplx(0.0, -1.0);
    Vector rhs(dim + 1);
    rhs.head(dim) = RealSystem::pack(rhs_f);
    rhs[dim] = 0.0;
    const Vector sol = lu.solve(rhs);

    XiSolution x;
    x.xi = RealSystem::unpack(sol.head(dim));
    x.lambda = sol[dim];
    const PeriodicField lxi = RealSystem::unpack(jac.apply(sol.head(dim)));
    x.residual = l2(lxi - rhs_f) / std::sqrt(kTwoPi);
    const double denom = l2(x.xi) * l2(du);
    x.orthogonality = denom > 0.0 ? std::abs(inner(x.xi, du)) / denom : 0.0;
    return x;
}

FurtherCondition further_condition(const PeriodicField& u0, const PeriodicField& phi_star, double sigma0,
                                   const PeriodicField& xi, int k1) {
    const std::size_t n = u0.size();
    const PeriodicField du = derivative(u0);
    PeriodicField quad(n), prod(n), second(n);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx u = u0[j], d = du[j], x = xi[j];
        quad[j] = 2.0 * u * std::norm(x) + std::conj(u) * x * x;
        prod[j] = (d * std::conj(u) + 2.0 * u * std::conj(d)) * d;
        second[j] = -2.0 * std::conj(u) * x * x - 4.0 * u * std::norm(x);
    }
    FurtherCondition fc;
    const double T = transversality(phi_star, sigma0, k1).value;
    fc.product_factor = integral_conj(prod, phi_star).real();
    fc.lhs = 2.0 * integral_conj(quad, phi_star).real() * fc.product_factor;
    fc.rhs = T * T;
    fc.ok = std::abs(fc.lhs - fc.rhs) > 1e-8 * std::max({std::abs(fc.lhs), std::abs(fc.rhs), 1.0});

    // Re integral (i e') conj(phi*) = -T
    const double Q = integral_conj(second, phi_star).real();
    if (T != 0.0) fc.dot_sigma0 = -0.5 * Q / (-T);
    const double pairing = integral_conj(du, phi_star).real();
    if (std::abs(pairing) <= 1e-6 * l2(du) * l2(phi_star))
        throw NumericalFailure("further_condition: u0' pairs to zero with the adjoint kernel");
    fc.dot_mu0 = (T + 2.0 * fc.dot_sigma0 * fc.product_factor) / pairing;
    fc.dot_mu0_sign = fc.dot_mu0 > 0.0 ? 1 : (fc.dot_mu0 < 0.0 ? -1 : 0);
    return fc;
}

ParityReport parity_periodicity_check(const Params& p, const PeriodicField& u0, const PeriodicField& phi_star,
                                      double symmetry_tol, double inherit_tol) {
    ParityReport r;
    r.u_period_divisor = spectral::period_divisor(u0, symmetry_tol);
    if (r.u_period_divisor > 1 && r.u_period_divisor < u0.size()) {
        r.phi_rotation_residual = spectral::rotation_residual(phi_star, r.u_period_divisor);
        r.phi_inherits_period = r.phi_rotation_residual < inherit_tol;
    }
    if (p.omega == 0.0) {
        const auto fit = spectral::best_even_center(u0);
        r.even_center = fit.center;
        r.u_reflection_residual = fit.residual;
        r.u_even = fit.residual < symmetry_tol;
        if (r.u_even) {
            // Reflection is complex-linear, so the even part of c*phi* has
            // the same relative size for every unit c.
            const PeriodicField refl = spectral::reflect(phi_star, fit.center);
            PeriodicField even = phi_star + refl;
            even *= cplx(0.5, 0.0);
            const double nrm = l2(phi_star);
            r.phi_even_part = nrm > 0.0 ? l2(even) / nrm : 0.0;
        }
    }
    r.pass = r.phi_inherits_period && (!r.u_even || r.phi_even_part < inherit_tol);
    return r;
}

BifurcationReport analyze_bifurcation(const Params& p, const PeriodicField& u0) {
    BifurcationReport rep;
    rep.linearization = analyze_linearization(p, u0);
    const auto& lin = rep.linearization;
    if (lin.nonsimple_kernel) {
        rep.status = "NonSimpleKernel";
        return rep;
    }
    if (lin.kernel_dim_estimate == 0) {
        rep.status = "TrivialKernel";
        return rep;
    }
    const PeriodicField& phi = lin.adjoint_kernel_vec;
    rep.parity = parity_periodicity_check(p, u0, phi);
    rep.sigma0 = sigma0_candidates(u0, phi, p.k1);
    if (!rep.sigma0.extra_ok) {
        rep.status = "PeriodicityObstruction";
        return rep;
    }
    for (double s0 : rep.sigma0.candidates) {
        rep.transversal.push_back(transversality(phi, s0, p.k1));
        try {
            const XiSolution xs = solve_xi(p, u0, s0);
            rep.xi_lambda.push_back(xs.lambda);
            rep.further.push_back(further_condition(u0, phi, s0, xs.xi, p.k1));
        } catch (const NumericalFailure&) {
            rep.xi_lambda.push_back(std::numeric_limits<double>::quiet_NaN());
            rep.further.push_back(FurtherCondition{});
        }
    }
    rep.status = "ok";
    return rep;
}

}  // namespace lle
