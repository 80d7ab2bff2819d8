// src/kernels/scalar.cpp
//
// Scalar reference kernels.  Written for clarity; the AVX2 variants are
// tested against these.

#include "lle/kernels/kernels.hpp"

#include <algorithm>

namespace lle::kernels {
namespace {

void residual_scalar(const double* up, const double* f, std::size_t n, const OperatorCoeffs& c,
                     double* out) {
    for (std::size_t j = 0; j < n; ++j) {
        const double* um = up + 2 * j;  // u_{j-1}
        const double* u = um + 2;
        const double* uq = um + 4;      // u_{j+1}
        const double a = u[0], b = u[1];
        const double mod2 = a * a + b * b;
        const double sum_re = uq[0] + um[0], sum_im = uq[1] + um[1];
        const double dif_re = uq[0] - um[0], dif_im = uq[1] - um[1];
        // i*w1*dif = (-w1 dif_im, w1 dif_re);  (zeta_eff - i) u = (ze a + b, ze b - a)
        out[2 * j] = c.c2 * sum_re - c.w1 * dif_im + c.zeta_eff * a + b - mod2 * a - f[2 * j + 1];
        out[2 * j + 1] = c.c2 * sum_im + c.w1 * dif_re + c.zeta_eff * b - a - mod2 * b + f[2 * j];
    }
}

void jacobian_blocks_scalar(const double* u, std::size_t n, const OperatorCoeffs& c, double* blk) {
    for (std::size_t j = 0; j < n; ++j) {
        const double a = u[2 * j], b = u[2 * j + 1];
        blk[4 * j + 0] = c.zeta_eff - (3.0 * a * a + b * b);
        blk[4 * j + 1] = 1.0 - 2.0 * a * b;
        blk[4 * j + 2] = -1.0 - 2.0 * a * b;
        blk[4 * j + 3] = c.zeta_eff - (a * a + 3.0 * b * b);
    }
}

void jacobian_apply_scalar(const double* u, const double* vp, std::size_t n, const OperatorCoeffs& c,
                           double* out) {
    for (std::size_t j = 0; j < n; ++j) {
        const double* vm = vp + 2 * j;
        const double* v = vm + 2;
        const double* vq = vm + 4;
        const double a = u[2 * j], b = u[2 * j + 1];
        const double j00 = c.zeta_eff - (3.0 * a * a + b * b);
        const double j01 = 1.0 - 2.0 * a * b;
        const double j10 = -1.0 - 2.0 * a * b;
        const double j11 = c.zeta_eff - (a * a + 3.0 * b * b);
        out[2 * j] = c.c2 * (vq[0] + vm[0]) - c.w1 * (vq[1] - vm[1]) + j00 * v[0] + j01 * v[1];
        out[2 * j + 1] = c.c2 * (vq[1] + vm[1]) + c.w1 * (vq[0] - vm[0]) + j10 * v[0] + j11 * v[1];
    }
}

double dot_scalar(const double* x, const double* y, std::size_t len) {
    double s = 0.0;
    for (std::size_t k = 0; k < len; ++k) s += x[k] * y[k];
    return s;
}

double max_abs2_scalar(const double* u, std::size_t n) {
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j) m = std::max(m, u[2 * j] * u[2 * j] + u[2 * j + 1] * u[2 * j + 1]);
    return m;
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{"scalar",       residual_scalar, jacobian_blocks_scalar,
                                   jacobian_apply_scalar, dot_scalar, max_abs2_scalar};
    return table;
}

}  // namespace lle::kernels
