// src/discretize.cpp

#include "lle/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lle/error.hpp"

namespace lle {
namespace {

// Copies an interleaved field of n complex values into a buffer with one
// ghost value on each side.
std::vector<double> padded(const double* x, std::size_t n) {
    std::vector<double> buf(2 * (n + 2));
    std::copy(x, x + 2 * n, buf.begin() + 2);
    buf[0] = x[2 * (n - 1)];
    buf[1] = x[2 * (n - 1) + 1];
    buf[2 * (n + 1)] = x[0];
    buf[2 * (n + 1) + 1] = x[1];
    return buf;
}

}  // namespace

Vector RealSystem::pack(const PeriodicField& u) {
    Vector x(2 * u.size());
    std::copy(u.real_data(), u.real_data() + x.size(), x.data());
    return x;
}

PeriodicField RealSystem::unpack(const Eigen::Ref<const Vector>& x) {
    if (x.size() % 2 != 0) throw ContractViolation("packed vector has odd length");
    PeriodicField u(static_cast<std::size_t>(x.size() / 2));
    std::copy(x.data(), x.data() + x.size(), u.real_data());
    return u;
}

kernels::OperatorCoeffs operator_coeffs(const Params& p, const DerivativeScheme& scheme) {
    kernels::OperatorCoeffs c;
    c.c2 = -p.d * scheme.second_coeff();
    c.w1 = p.omega * scheme.first_coeff();
    c.zeta_eff = p.zeta + 2.0 * p.d * scheme.second_coeff();
    return c;
}

Vector residual_vec(const Params& p, const PeriodicField& u) {
    const std::size_t n = u.size();
    const DerivativeScheme scheme(n);
    const auto f = forcing_on_grid(p, n);
    const auto up = padded(u.real_data(), n);
    Vector out(2 * n);
    kernels::active().residual(up.data(), reinterpret_cast<const double*>(f.data()), n,
                               operator_coeffs(p, scheme), out.data());
    return out;
}

Vector dresidual_df1(const Params& p, std::size_t n) {
    const auto e = profile_on_grid(p, n);
    Vector g(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        g[2 * j] = -e[j].imag();
        g[2 * j + 1] = e[j].real();
    }
    return g;
}

Vector dresidual_dzeta(const PeriodicField& u) { return RealSystem::pack(u); }

BlockJacobian::BlockJacobian(const Params& p, const PeriodicField& u)
    : n_(u.size()), u_(u), blocks_(4 * u.size()) {
    const DerivativeScheme scheme(n_);
    coeffs_ = operator_coeffs(p, scheme);
    kernels::active().jacobian_blocks(u.real_data(), n_, coeffs_, blocks_.data());
    // neighbour couplings: c2 I + w1 * (multiplication by +-i)
    upper_[0] = coeffs_.c2;
    upper_[1] = -coeffs_.w1;
    upper_[2] = coeffs_.w1;
    upper_[3] = coeffs_.c2;
    lower_[0] = coeffs_.c2;
    lower_[1] = coeffs_.w1;
    lower_[2] = -coeffs_.w1;
    lower_[3] = coeffs_.c2;
}

Vector BlockJacobian::apply(const Eigen::Ref<const Vector>& v) const {
    if (static_cast<std::size_t>(v.size()) != dim()) throw ContractViolation("Jacobian apply: size mismatch");
    const auto vp = padded(v.data(), n_);
    Vector out(dim());
    kernels::active().jacobian_apply(u_.real_data(), vp.data(), n_, coeffs_, out.data());
    return out;
}

Vector BlockJacobian::apply_transpose(const Eigen::Ref<const Vector>& v) const {
    if (static_cast<std::size_t>(v.size()) != dim()) throw ContractViolation("Jacobian apply: size mismatch");
    // (J^T v)_k = D_k^T v_k + U^T v_{k-1} + L^T v_{k+1}
    Vector out(dim());
    for (std::size_t k = 0; k < n_; ++k) {
        const double* d = diagonal_block(k);
        const std::size_t km = k == 0 ? n_ - 1 : k - 1;
        const std::size_t kp = k + 1 == n_ ? 0 : k + 1;
        const double a = v[2 * k], b = v[2 * k + 1];
        const double am = v[2 * km], bm = v[2 * km + 1];
        const double ap = v[2 * kp], bp = v[2 * kp + 1];
        out[2 * k] = d[0] * a + d[2] * b + upper_[0] * am + upper_[2] * bm + lower_[0] * ap + lower_[2] * bp;
        out[2 * k + 1] = d[1] * a + d[3] * b + upper_[1] * am + upper_[3] * bm + lower_[1] * ap + lower_[3] * bp;
    }
    return out;
}

void BlockJacobian::assemble_into(Eigen::Ref<Matrix> out) const {
    out.topLeftCorner(dim(), dim()).setZero();
    for (std::size_t j = 0; j < n_; ++j) {
        const auto r = static_cast<Eigen::Index>(2 * j);
        const auto cu = static_cast<Eigen::Index>(2 * (j + 1 == n_ ? 0 : j + 1));
        const auto cl = static_cast<Eigen::Index>(2 * (j == 0 ? n_ - 1 : j - 1));
        const double* d = diagonal_block(j);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                out(r + a, r + b) += d[2 * a + b];
                out(r + a, cu + b) += upper_[2 * a + b];
                out(r + a, cl + b) += lower_[2 * a + b];
            }
        }
    }
}

Matrix BlockJacobian::dense() const {
    Matrix m(dim(), dim());
    assemble_into(m);
    return m;
}

PeriodicField derivative(const PeriodicField& u) {
    const std::size_t n = u.size();
    const DerivativeScheme scheme(n);
    const double c = scheme.first_coeff();
    PeriodicField du(n);
    for (std::size_t j = 0; j < n; ++j) du[j] = c * (u[scheme.next(j)] - u[scheme.prev(j)]);
    return du;
}

cplx integral_conj(const PeriodicField& v, const PeriodicField& w) {
    if (v.size() != w.size()) throw ContractViolation("quadrature: size mismatch");
    const double h = 2.0 * std::numbers::pi / static_cast<double>(v.size());
    cplx s{};
    for (std::size_t j = 0; j < v.size(); ++j) s += v[j] * std::conj(w[j]);
    return h * s;
}

double inner(const PeriodicField& v, const PeriodicField& w) {
    if (v.size() != w.size()) throw ContractViolation("inner product: size mismatch");
    const double h = 2.0 * std::numbers::pi / static_cast<double>(v.size());
    return h * kernels::active().dot(v.real_data(), w.real_data(), 2 * v.size());
}

double mean_square(const PeriodicField& u) {
    if (u.size() == 0) return 0.0;
    return kernels::active().dot(u.real_data(), u.real_data(), 2 * u.size()) / static_cast<double>(u.size());
}

FieldNorms norms(const PeriodicField& u) {
    FieldNorms r;
    r.l2 = std::sqrt(inner(u, u));
    const PeriodicField du = derivative(u);
    r.l2_deriv = std::sqrt(inner(du, du));
    r.linf = std::sqrt(kernels::active().max_abs2(u.real_data(), u.size()));
    return r;
}

double residual_norm(const Params& p, const PeriodicField& u) { return residual_vec(p, u).norm(); }

}  // namespace lle
