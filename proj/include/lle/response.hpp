// include/lle/response.hpp
//
// Local shape of f1 -> ||u(f1)||_2^2 at a non-degenerate constant solution:
// first-order response v = alpha e^{i k1 s} + beta e^{-i k1 s}, second-order
// constant epsilon, and the second derivative 4 pi (Re(u0 conj eps) + |alpha|^2 + |beta|^2).

#pragma once

#include <vector>

#include "lle/continuation.hpp"
#include "lle/model.hpp"

namespace lle {

struct ResponseCoefficients {
    cplx alpha, beta;
    cplx x, y, z, epsilon;
    double second_deriv = 0.0;  // +-inf when singular
    bool singular = false;
    double alpha_beta_residual = 0.0;
    double epsilon_residual = 0.0;
};

ResponseCoefficients response_coefficients(const Params& p, cplx u0);

struct SecondDerivativeCheck {
    double analytic = 0.0;
    double numeric = 0.0;
    double rel_err = 0.0;
    double n_minus = 0.0, n_zero = 0.0, n_plus = 0.0;  // ||u||_2^2 at -delta, 0, +delta
    bool ok = false;  // all three Newton solves converged
};

SecondDerivativeCheck second_derivative_vs_numeric(const Params& p, cplx u0, double fd_step = 1e-3,
                                                   std::size_t n = 512, const NewtonSettings& newton = {});

struct SignMapRow {
    double t = 0.0;
    double zeta = 0.0;
    double rho = 0.0;
    double second_deriv = 0.0;
    int sign = 0;
    bool singular = false;
};

std::vector<SignMapRow> sign_map(double f0, double d, double omega, int k1, const std::vector<double>& t_grid);

struct SignChange {
    double t_lo = 0.0, t_hi = 0.0;
    double zeta_lo = 0.0, zeta_hi = 0.0;
    int sign_before = 0, sign_after = 0;
    bool through_pole = false;  // magnitude blows up across the change
};

std::vector<SignChange> sign_changes(const std::vector<SignMapRow>& rows);

}  // namespace lle
