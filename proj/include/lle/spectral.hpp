// include/lle/spectral.hpp
//
// Fourier-based helpers for diagnostics on grid fields: sub-grid shifts,
// reflections about an arbitrary centre and period detection.  The residual
// itself is never evaluated spectrally.

#pragma once

#include <cstddef>
#include <vector>

#include "lle/model.hpp"

namespace lle::spectral {

// DFT coefficients c_m with u_j = sum_m c_m exp(i m s_j), m in [-n/2, n/2).
// Stored in FFT order (m = 0, 1, ..., n/2 - 1, -n/2, ..., -1).
std::vector<cplx> coefficients(const PeriodicField& u);
PeriodicField synthesize(const std::vector<cplx>& coeffs);

// Signed wavenumber of FFT slot k.
int wavenumber(std::size_t k, std::size_t n);

// Trigonometric interpolant evaluated at s_j - sigma, i.e. u(. - sigma).
PeriodicField shift(const PeriodicField& u, double sigma);

// v(s) = u(2c - s)
PeriodicField reflect(const PeriodicField& u, double center);

// ||u - R_c u||_2 / ||u||_2 minimized over c; returns the minimizing centre
// (in [0, pi), reflections repeat with period pi) and the relative residual.
struct ReflectionFit {
    double center = 0.0;
    double residual = 0.0;
};
ReflectionFit best_even_center(const PeriodicField& u);

// Smallest j in divisors of n such that rotation by n/j reproduces u to
// rel_tol * ||u||_2; returns the largest such j (period 2 pi / j).
std::size_t period_divisor(const PeriodicField& u, double rel_tol);

// Relative residual of rotation by n/j nodes.
double rotation_residual(const PeriodicField& u, std::size_t j);

// Shift tau in [0, 2pi) minimizing ||v - u(. - tau)||_2, with sub-grid
// refinement; also reports the relative mismatch.
struct ShiftFit {
    double tau = 0.0;
    double residual = 0.0;
};
ShiftFit best_shift(const PeriodicField& u, const PeriodicField& v);

// Distance between angles on the circle of circumference period.
double circular_distance(double a, double b, double period = 2.0 * 3.14159265358979323846);

// Version string of the FFT backend.
const char* backend_version();

}  // namespace lle::spectral
