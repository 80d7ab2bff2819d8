// src/kernels/avx2.cpp
//
// AVX2 + FMA kernels.  Two complex values per 256-bit register, laid out
// (re0, im0, re1, im1).  This translation unit is compiled with -mavx2 -mfma
// and must not instantiate inline templates shared with the rest of the
// program, so it sticks to raw pointers and intrinsics.

#include "lle/kernels/kernels.hpp"

#include <immintrin.h>

namespace lle::kernels {
namespace {

// (re, im) -> (im, re) within each complex lane pair
inline __m256d swap_pairs(__m256d x) { return _mm256_permute_pd(x, 0b0101); }

// multiply each complex value by i: (re, im) -> (-im, re)
inline __m256d mul_i(__m256d x) {
    const __m256d sign = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);
    return _mm256_xor_pd(swap_pairs(x), sign);
}

// |u|^2 broadcast to both slots of each complex value
inline __m256d mod2(__m256d x) {
    const __m256d sq = _mm256_mul_pd(x, x);
    return _mm256_add_pd(sq, swap_pairs(sq));
}

void residual_avx2(const double* up, const double* f, std::size_t n, const OperatorCoeffs& c,
                   double* out) {
    const __m256d c2 = _mm256_set1_pd(c.c2);
    const __m256d w1 = _mm256_set1_pd(c.w1);
    const __m256d ze = _mm256_set1_pd(c.zeta_eff);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const __m256d um = _mm256_loadu_pd(up + 2 * j);
        const __m256d u = _mm256_loadu_pd(up + 2 * j + 2);
        const __m256d uq = _mm256_loadu_pd(up + 2 * j + 4);
        const __m256d fj = _mm256_loadu_pd(f + 2 * j);
        // i * (w1 (uq - um) - u + f)
        __m256d t = _mm256_fmadd_pd(w1, _mm256_sub_pd(uq, um), _mm256_sub_pd(fj, u));
        t = mul_i(t);
        t = _mm256_fmadd_pd(c2, _mm256_add_pd(uq, um), t);
        t = _mm256_fmadd_pd(_mm256_sub_pd(ze, mod2(u)), u, t);
        _mm256_storeu_pd(out + 2 * j, t);
    }
    if (j < n) scalar_table().residual(up + 2 * j, f + 2 * j, n - j, c, out + 2 * j);
}

// Diagonal entries (j00, j11) and off-diagonal entries (j01, j10) for two nodes.
inline void block_parts(__m256d u, __m256d ze, __m256d& diag, __m256d& off) {
    const __m256d sq = _mm256_mul_pd(u, u);
    const __m256d three = _mm256_set1_pd(3.0);
    // lane (re): ze - 3a^2 - b^2, lane (im): ze - 3b^2 - a^2
    diag = _mm256_sub_pd(ze, _mm256_fmadd_pd(three, sq, swap_pairs(sq)));
    const __m256d ab2 = _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_mul_pd(u, swap_pairs(u)));
    off = _mm256_sub_pd(_mm256_set_pd(-1.0, 1.0, -1.0, 1.0), ab2);
}

void jacobian_blocks_avx2(const double* u, std::size_t n, const OperatorCoeffs& c, double* blk) {
    const __m256d ze = _mm256_set1_pd(c.zeta_eff);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        __m256d diag, off;
        block_parts(_mm256_loadu_pd(u + 2 * j), ze, diag, off);
        const __m256d lo = _mm256_unpacklo_pd(diag, off);  // d00_0 o01_0 d00_1 o01_1
        const __m256d hi = _mm256_unpackhi_pd(off, diag);  // o10_0 d11_0 o10_1 d11_1
        _mm256_storeu_pd(blk + 4 * j, _mm256_permute2f128_pd(lo, hi, 0x20));
        _mm256_storeu_pd(blk + 4 * j + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
    }
    if (j < n) scalar_table().jacobian_blocks(u + 2 * j, n - j, c, blk + 4 * j);
}

void jacobian_apply_avx2(const double* u, const double* vp, std::size_t n, const OperatorCoeffs& c,
                         double* out) {
    const __m256d c2 = _mm256_set1_pd(c.c2);
    const __m256d w1 = _mm256_set1_pd(c.w1);
    const __m256d ze = _mm256_set1_pd(c.zeta_eff);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const __m256d vm = _mm256_loadu_pd(vp + 2 * j);
        const __m256d v = _mm256_loadu_pd(vp + 2 * j + 2);
        const __m256d vq = _mm256_loadu_pd(vp + 2 * j + 4);
        __m256d diag, off;
        block_parts(_mm256_loadu_pd(u + 2 * j), ze, diag, off);
        __m256d t = mul_i(_mm256_mul_pd(w1, _mm256_sub_pd(vq, vm)));
        t = _mm256_fmadd_pd(c2, _mm256_add_pd(vq, vm), t);
        t = _mm256_fmadd_pd(diag, v, t);
        t = _mm256_fmadd_pd(off, swap_pairs(v), t);
        _mm256_storeu_pd(out + 2 * j, t);
    }
    if (j < n) scalar_table().jacobian_apply(u + 2 * j, vp + 2 * j, n - j, c, out + 2 * j);
}

inline double hsum(__m256d x) {
    const __m128d lo = _mm256_castpd256_pd128(x);
    const __m128d hi = _mm256_extractf128_pd(x, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* x, const double* y, std::size_t len) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= len; k += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k + 4), _mm256_loadu_pd(y + k + 4), acc1);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; k < len; ++k) s += x[k] * y[k];
    return s;
}

double max_abs2_avx2(const double* u, std::size_t n) {
    __m256d m = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) m = _mm256_max_pd(m, mod2(_mm256_loadu_pd(u + 2 * j)));
    const __m128d lo = _mm256_castpd256_pd128(m);
    const __m128d hi = _mm256_extractf128_pd(m, 1);
    double r = _mm_cvtsd_f64(_mm_max_pd(lo, hi));
    if (j < n) {
        const double tail = scalar_table().max_abs2(u + 2 * j, n - j);
        r = r > tail ? r : tail;
    }
    return r;
}

}  // namespace

const KernelTable& avx2_table_impl() {
    static const KernelTable table{"avx2",        residual_avx2, jacobian_blocks_avx2,
                                   jacobian_apply_avx2, dot_avx2, max_abs2_avx2};
    return table;
}

}  // namespace lle::kernels
