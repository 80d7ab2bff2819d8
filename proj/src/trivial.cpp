// src/trivial.cpp

#include "lle/trivial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "lle/error.hpp"

namespace lle {
namespace {

double cubic(double rho, double zeta, double f0) {
    return ((rho - 2.0 * zeta) * rho + (zeta * zeta + 1.0)) * rho - f0 * f0;
}

double cubic_prime(double rho, double zeta) {
    return (3.0 * rho - 4.0 * zeta) * rho + zeta * zeta + 1.0;
}

// 2 t (1 - t^2)^{3/2}; turning points solve this = 1/f0^2, peak at t = 1/2.
double turn_profile(double t) { return 2.0 * t * std::pow(1.0 - t * t, 1.5); }

double bisect_turn(double lo, double hi, double target) {
    const bool rising = turn_profile(lo) < turn_profile(hi);
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const bool below = turn_profile(mid) < target;
        if (below == rising)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

bool near_zero_quadratic(double x, double rho) {
    const double q = turning_quadratic(x, rho);
    return std::abs(q) <= 1e-9 * std::max({1.0, x * x, rho * rho});
}

}  // namespace

cplx trivial_residual(const TrivialPoint& tp) {
    const cplx i(0.0, 1.0);
    return (tp.zeta - i) * tp.u0 - std::norm(tp.u0) * tp.u0 + i * tp.f0;
}

double turning_quadratic(double zeta, double rho) { return zeta * zeta - 4.0 * rho * zeta + 1.0 + 3.0 * rho * rho; }

double fstar() { return 2.0 * std::sqrt(2.0) / std::pow(27.0, 0.25); }

TrivialPoint param_point(double t, double f0) {
    if (!(std::abs(t) < 1.0)) throw DomainError("param_point: |t| must be < 1");
    const double w = 1.0 - t * t;
    const double sw = std::sqrt(w);
    TrivialPoint tp;
    tp.t = t;
    tp.f0 = f0;
    tp.zeta = w * f0 * f0 + t / sw;
    tp.u0 = cplx(w * f0, -f0 * t * sw);
    tp.rho = w * f0 * f0;
    return tp;
}

double zeta_prime(double t, double f0) {
    if (!(std::abs(t) < 1.0)) throw DomainError("zeta_prime: |t| must be < 1");
    return -2.0 * t * f0 * f0 + std::pow(1.0 - t * t, -1.5);
}

std::vector<TrivialPoint> solve_constants(double zeta, double f0) {
    if (f0 == 0.0) return {TrivialPoint{std::nullopt, zeta, cplx{}, 0.0, 0.0}};

    Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
    comp(0, 0) = 2.0 * zeta;
    comp(0, 1) = -(zeta * zeta + 1.0);
    comp(0, 2) = f0 * f0;
    comp(1, 0) = 1.0;
    comp(2, 1) = 1.0;
    Eigen::EigenSolver<Eigen::Matrix3d> es(comp, false);
    const auto ev = es.eigenvalues();
    const double imag_tol = 1e-9 * std::max(1.0, zeta * zeta);

    std::vector<double> roots;
    for (int k = 0; k < 3; ++k) {
        if (std::abs(ev[k].imag()) > imag_tol) continue;
        double r = ev[k].real();
        for (int it = 0; it < 3; ++it) {
            const double dp = cubic_prime(r, zeta);
            if (dp == 0.0) break;
            const double step = cubic(r, zeta, f0) / dp;
            if (!std::isfinite(step)) break;
            r -= step;
        }
        if (r < 0.0) continue;  // rho((zeta-rho)^2+1) = f0^2 > 0 forces rho > 0
        roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end());
    std::vector<TrivialPoint> out;
    const cplx i(0.0, 1.0);
    for (double r : roots) {
        if (!out.empty() && std::abs(r - out.back().rho) <= 1e-12 * std::max(1.0, r)) continue;
        TrivialPoint tp;
        tp.zeta = zeta;
        tp.f0 = f0;
        tp.u0 = -i * f0 / (zeta - i - r);
        tp.rho = std::norm(tp.u0);
        out.push_back(tp);
    }
    return out;
}

TurningPointReport turning_points(double f0) {
    TurningPointReport rep;
    rep.fstar = fstar();
    const double a = std::abs(f0);
    auto make = [&](double t) {
        const TrivialPoint tp = param_point(t, f0);
        return TurningPoint{t, tp.zeta, tp.rho};
    };
    if (std::abs(a - rep.fstar) <= 1e-12) {
        rep.count = 1;
        rep.points.push_back(make(0.5));
    } else if (a > rep.fstar) {
        const double target = 1.0 / (f0 * f0);
        rep.count = 2;
        rep.points.push_back(make(bisect_turn(0.0, 0.5, target)));
        rep.points.push_back(make(bisect_turn(0.5, 1.0, target)));
    }
    return rep;
}

Degeneracy is_nondegenerate(const TrivialPoint& tp, double omega, double d) {
    if (d == 0.0) throw DomainError("is_nondegenerate: d must be nonzero");
    if (near_zero_quadratic(tp.zeta, tp.rho)) return {false, 0};
    if (omega != 0.0 || tp.rho < 1.0) return {true, -1};

    // roots of X^2 - 4 rho X + 1 + 3 rho^2 are 2 rho -+ sqrt(rho^2 - 1)
    const double disc = std::sqrt(tp.rho * tp.rho - 1.0);
    const double x_lo = 2.0 * tp.rho - disc;
    const double x_hi = 2.0 * tp.rho + disc;
    double m2_a = (x_lo - tp.zeta) / d;
    double m2_b = (x_hi - tp.zeta) / d;
    if (m2_a > m2_b) std::swap(m2_a, m2_b);
    if (m2_b < 0.0) return {true, -1};
    const long m_lo = std::max(1L, static_cast<long>(std::floor(std::sqrt(std::max(0.0, m2_a)))) - 1);
    const long m_hi = static_cast<long>(std::ceil(std::sqrt(m2_b))) + 1;
    for (long m = m_lo; m <= m_hi; ++m) {
        const double x = tp.zeta + d * static_cast<double>(m * m);
        if (near_zero_quadratic(x, tp.rho)) return {false, static_cast<int>(m)};
    }
    return {true, -1};
}

}  // namespace lle
