// include/lle/discretize.hpp
//
// Central finite-difference discretization: packed residual vector, the real
// 2n x 2n Jacobian in banded-cyclic block form, periodic quadrature and norms.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "lle/kernels/kernels.hpp"
#include "lle/model.hpp"

namespace lle {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Packed real layout of a PeriodicField: x[2j] = Re u_j, x[2j+1] = Im u_j.
struct RealSystem {
    static Vector pack(const PeriodicField& u);
    static PeriodicField unpack(const Eigen::Ref<const Vector>& x);
    static std::size_t dim(std::size_t n) { return 2 * n; }
};

kernels::OperatorCoeffs operator_coeffs(const Params& p, const DerivativeScheme& scheme);

// residual(p, u) in packed layout, evaluated with the active kernel table.
Vector residual_vec(const Params& p, const PeriodicField& u);

// Derivative of residual_vec with respect to the continuation parameter.
Vector dresidual_df1(const Params& p, std::size_t n);  // i e(s_j)
Vector dresidual_dzeta(const PeriodicField& u);        // u_j

// Real Jacobian of residual_vec at u.  Row block j couples node j to j-1, j
// and j+1 (indices mod n); the coupling to neighbours is the same 2x2 block
// for every row, only the diagonal blocks depend on u.
class BlockJacobian {
public:
    BlockJacobian(const Params& p, const PeriodicField& u);

    std::size_t n() const { return n_; }
    std::size_t dim() const { return 2 * n_; }

    // 2x2 diagonal block of node j, row-major.
    const double* diagonal_block(std::size_t j) const { return &blocks_[4 * j]; }
    // coupling from node j to j+1 (upper) and to j-1 (lower), row-major
    const double* upper_block() const { return upper_; }
    const double* lower_block() const { return lower_; }

    Vector apply(const Eigen::Ref<const Vector>& v) const;
    Vector apply_transpose(const Eigen::Ref<const Vector>& v) const;

    // Writes the full matrix into the leading dim() x dim() corner of out.
    void assemble_into(Eigen::Ref<Matrix> out) const;
    Matrix dense() const;

private:
    std::size_t n_;
    kernels::OperatorCoeffs coeffs_;
    PeriodicField u_;
    std::vector<double> blocks_;
    double upper_[4];
    double lower_[4];
};

inline BlockJacobian jacobian(const Params& p, const PeriodicField& u) { return BlockJacobian(p, u); }

struct FieldNorms {
    double l2 = 0.0;        // sqrt(h sum |u_j|^2)
    double l2_deriv = 0.0;  // same, of the central-difference derivative
    double linf = 0.0;      // max_j |u_j|
};

FieldNorms norms(const PeriodicField& u);

// Central-difference derivative (u_{j+1} - u_{j-1}) / (2h).
PeriodicField derivative(const PeriodicField& u);

// Periodic rectangle rule for integral_0^{2pi} v conj(w) ds.
cplx integral_conj(const PeriodicField& v, const PeriodicField& w);

// <v, w>_2 = Re integral v conj(w) ds
double inner(const PeriodicField& v, const PeriodicField& w);

// ||u||_2^2 / (2 pi) = mean of |u_j|^2
double mean_square(const PeriodicField& u);

// Packed residual 2-norm used as the convergence measure.
double residual_norm(const Params& p, const PeriodicField& u);

}  // namespace lle
