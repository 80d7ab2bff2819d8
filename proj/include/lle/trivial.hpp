// include/lle/trivial.hpp
//
// Constant solutions of the unforced-harmonic problem (f1 = 0):
//     (zeta - i) u0 - |u0|^2 u0 + i f0 = 0.
// With rho = |u0|^2 this reduces to rho ((zeta - rho)^2 + 1) = f0^2, and the
// whole solution curve is covered by the parametrization t in (-1, 1)
//     zeta(t) = (1 - t^2) f0^2 + t / sqrt(1 - t^2),
//     u0(t)   = (1 - t^2) f0 - i f0 t sqrt(1 - t^2).

#pragma once

#include <optional>
#include <vector>

#include "lle/model.hpp"

namespace lle {

struct TrivialPoint {
    std::optional<double> t;  // curve parameter when built from the parametrization
    double zeta = 0.0;
    cplx u0;
    double rho = 0.0;
    double f0 = 0.0;
};

// (zeta - i) u0 - rho u0 + i f0
cplx trivial_residual(const TrivialPoint& tp);

// zeta^2 - 4 rho zeta + 1 + 3 rho^2; vanishes exactly at turning points.
double turning_quadratic(double zeta, double rho);

// 2 sqrt(2) / 27^{1/4}
double fstar();

TrivialPoint param_point(double t, double f0);

// d zeta / dt along the parametrization
double zeta_prime(double t, double f0);

// All real roots rho >= 0 of rho^3 - 2 zeta rho^2 + (zeta^2 + 1) rho - f0^2,
// ascending, with u0 = -i f0 / (zeta - i - rho).
std::vector<TrivialPoint> solve_constants(double zeta, double f0);

struct TurningPoint {
    double t = 0.0;
    double zeta = 0.0;
    double rho = 0.0;
};

struct TurningPointReport {
    int count = 0;
    std::vector<TurningPoint> points;  // ascending in t
    double fstar = 0.0;
};

TurningPointReport turning_points(double f0);

struct Degeneracy {
    bool nondegenerate = true;
    int witness_m = -1;  // smallest violating Fourier index when degenerate
};

// Non-degeneracy of a constant solution.  omega != 0 tests the m = 0
// quadratic only; omega == 0 scans the finite m-range where
// zeta + d m^2 can hit a root of X^2 - 4 rho X + 1 + 3 rho^2.
Degeneracy is_nondegenerate(const TrivialPoint& tp, double omega, double d);

}  // namespace lle
