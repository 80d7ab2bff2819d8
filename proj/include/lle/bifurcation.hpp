// include/lle/bifurcation.hpp
//
// Linearization analysis at f1 = 0 solutions: kernel and adjoint kernel,
// the bifurcation shifts sigma0, transversality, the bordered solve for xi,
// the non-degeneracy condition on the eigenvalue crossing, and the parity /
// periodicity inheritance checks.
//
// Shift convention: u_sigma(s) = u0(s - sigma).  A branch leaving the
// circle of shifts at sigma0 passes through (0, u_{sigma0}).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lle/discretize.hpp"
#include "lle/model.hpp"

namespace lle {

struct LinearizationReport {
    PeriodicField u0;
    std::vector<double> min_svs;  // three smallest, ascending
    double largest_sv = 0.0;
    PeriodicField kernel_vec;          // ||.||_2 = 1
    PeriodicField adjoint_kernel_vec;  // ||.||_2 = 1
    int kernel_dim_estimate = 0;
    bool simple = false;
    double simplicity_pairing = 0.0;   // |<u0', phi*>| / ||u0'||_2
    double derivative_alignment = 0.0; // |<phi, u0'/||u0'||>|
    bool nonsimple_kernel = false;     // dim >= 2: sigma0 analysis refused
};

LinearizationReport analyze_linearization(const Params& p, const PeriodicField& u0, double rank_tol = 1e-6);

struct Sigma0Result {
    double A = 0.0;        // integral cos(k1 s) Im phi* - sin(k1 s) Re phi*
    double Bden = 0.0;     // integral sin(k1 s) Im phi* + cos(k1 s) Re phi*
    bool extra_ok = false;
    bool periodicity_obstruction = false;
    double base = 0.0;     // in [0, pi/k1)
    std::size_t period_divisor = 1;
    std::vector<double> candidates;  // in [0, 2 pi), ascending
};

Sigma0Result sigma0_candidates(const PeriodicField& u0, const PeriodicField& phi_star, int k1,
                               double tol = 1e-8);

// Im integral e(s + sigma) conj(phi*(s)) ds for e = exp(i k1 s)
double sigma0_condition(const PeriodicField& phi_star, int k1, double sigma);

struct Transversality {
    double value = 0.0;
    bool ok = false;
};

// value = Im integral e'(s + sigma0) conj(phi*(s)) ds
Transversality transversality(const PeriodicField& phi_star, double sigma0, int k1);

struct XiSolution {
    PeriodicField xi;
    double lambda = 0.0;            // bordering multiplier; ~0 when solvable
    double residual = 0.0;          // ||L xi + i e(. + sigma0)||_2 / ||e||_2
    double orthogonality = 0.0;     // |<xi, u0'>| / (||xi|| ||u0'||)
};

// Solves [J, u0'; u0'^T, 0] [xi; lambda] = [-i e(. + sigma0); 0].
// Throws NumericalFailure when the bordered matrix is singular.
XiSolution solve_xi(const Params& p, const PeriodicField& u0, double sigma0);

struct FurtherCondition {
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = false;
    double dot_sigma0 = 0.0;
    double dot_mu0 = 0.0;
    int dot_mu0_sign = 0;
    double product_factor = 0.0;  // Re integral (u0' conj u0 + 2 u0 conj u0') u0' conj phi*
};

// Throws NumericalFailure when Re integral u0' conj(phi*) vanishes.
FurtherCondition further_condition(const PeriodicField& u0, const PeriodicField& phi_star, double sigma0,
                                   const PeriodicField& xi, int k1);

struct ParityReport {
    std::size_t u_period_divisor = 1;
    bool phi_inherits_period = true;
    double phi_rotation_residual = 0.0;
    bool u_even = false;
    double even_center = 0.0;
    double u_reflection_residual = 0.0;
    double phi_even_part = 0.0;  // relative even part of phase-aligned phi* (0 for odd)
    cplx phase{1.0, 0.0};
    bool pass = true;
};

ParityReport parity_periodicity_check(const Params& p, const PeriodicField& u0, const PeriodicField& phi_star,
                                      double symmetry_tol = 1e-8, double inherit_tol = 1e-6);

struct BifurcationReport {
    LinearizationReport linearization;
    Sigma0Result sigma0;
    std::vector<Transversality> transversal;
    std::vector<double> xi_lambda;
    std::vector<FurtherCondition> further;
    ParityReport parity;
    std::string status;  // "ok", "TrivialKernel", "NonSimpleKernel", "PeriodicityObstruction"
};

// Runs the whole pipeline at one f1 = 0 solution.
BifurcationReport analyze_bifurcation(const Params& p, const PeriodicField& u0);

}  // namespace lle
