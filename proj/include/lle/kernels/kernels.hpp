// include/lle/kernels/kernels.hpp
//
// Data-parallel inner loops of the discretized profile equation.  Every
// kernel has a scalar reference implementation; an AVX2+FMA variant is
// compiled in a separate translation unit and picked at runtime when the
// CPU supports it.  Fields are interleaved (re, im) arrays of n complex
// values.  "Padded" inputs carry one ghost value on each side, i.e. the
// pointer addresses u_{-1} and the array holds n + 2 complex values.

#pragma once

#include <cstddef>

namespace lle::kernels {

// Coefficients of the linear part of the operator after folding the
// stencils:  L u_j = c2 (u_{j+1} + u_{j-1}) + i*w1 (u_{j+1} - u_{j-1})
//                    + (zeta_eff - i) u_j
// with c2 = -d/h^2, w1 = omega/(2h), zeta_eff = zeta + 2d/h^2.
struct OperatorCoeffs {
    double c2 = 0.0;
    double w1 = 0.0;
    double zeta_eff = 0.0;
};

struct KernelTable {
    const char* name;

    // out_j = L u_j - |u_j|^2 u_j + i f_j
    void (*residual)(const double* u_padded, const double* forcing, std::size_t n,
                     const OperatorCoeffs& c, double* out);

    // Pointwise 2x2 real Jacobian blocks, row-major [j00, j01, j10, j11] per node.
    void (*jacobian_blocks)(const double* u, std::size_t n, const OperatorCoeffs& c,
                            double* blocks);

    // out = J(u) v, the real linearization applied to a padded direction v.
    void (*jacobian_apply)(const double* u, const double* v_padded, std::size_t n,
                           const OperatorCoeffs& c, double* out);

    // sum_k x_k y_k over len doubles
    double (*dot)(const double* x, const double* y, std::size_t len);

    // max_j |u_j|^2 over n complex values
    double (*max_abs2)(const double* u, std::size_t n);
};

const KernelTable& scalar_table();

// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();

// Table used by the library.  Chosen once; LLE_FORCE_SCALAR=1 in the
// environment pins the scalar reference.
const KernelTable& active();

}  // namespace lle::kernels
