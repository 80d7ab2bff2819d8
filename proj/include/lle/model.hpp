// include/lle/model.hpp
//
// Model parameters, forcing profiles, periodic grid fields and the
// continuous-level maps of the traveling-wave profile equation
//
//     -d u'' + i omega u' + (zeta - i) u - |u|^2 u + i f(s) = 0,
//     f(s) = f0 + f1 e(s),   u 2*pi-periodic.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "lle/stencil.hpp"

namespace lle {

using cplx = std::complex<double>;

// Shape e(s) of the second pump.  The default is the second harmonic
// exp(i k1 s); sampled profiles are only defined at grid nodes.
class ForcingProfile {
public:
    enum class Kind { SecondHarmonic, Sampled };

    ForcingProfile() = default;
    static ForcingProfile second_harmonic() { return ForcingProfile{}; }
    static ForcingProfile sampled(std::vector<cplx> grid_values);

    Kind kind() const { return kind_; }
    bool is_sampled() const { return kind_ == Kind::Sampled; }
    std::span<const cplx> samples() const { return samples_; }

    // e(s).  For sampled profiles s must coincide with a node (to 1e-9 h);
    // anything else throws ContractViolation.
    cplx at(double s, int k1) const;

    // e(2*pi*j/n); sampled profiles require n == samples().size().
    cplx at_node(std::size_t j, std::size_t n, int k1) const;

private:
    Kind kind_ = Kind::SecondHarmonic;
    std::vector<cplx> samples_;
};

struct Params {
    double d = -0.1;
    double zeta = 0.0;
    double omega = 0.0;
    double f0 = 0.0;
    double f1 = 0.0;
    int k1 = 1;
    ForcingProfile forcing;

    // Throws DomainError when d == 0 or k1 < 1.
    void validate() const;

    Params with_f1(double value) const {
        Params p = *this;
        p.f1 = value;
        return p;
    }
    Params with_zeta(double value) const {
        Params p = *this;
        p.zeta = value;
        return p;
    }
};

// Complex samples u_j ~ u(2*pi*j/n) on a uniform periodic grid.  The values
// are stored as contiguous (re, im) pairs, which is also the packed real
// layout x[2j] = Re u_j, x[2j+1] = Im u_j used by the linearization.
class PeriodicField {
public:
    PeriodicField() = default;
    explicit PeriodicField(std::size_t n, cplx value = {});
    explicit PeriodicField(std::vector<cplx> values);

    template <class Fn>
    static PeriodicField sample(std::size_t n, Fn&& fn) {
        std::vector<cplx> v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = fn(node(j, n));
        return PeriodicField(std::move(v));
    }

    static double node(std::size_t j, std::size_t n);

    std::size_t size() const { return values_.size(); }
    cplx& operator[](std::size_t j) { return values_[j]; }
    const cplx& operator[](std::size_t j) const { return values_[j]; }
    std::span<cplx> values() { return values_; }
    std::span<const cplx> values() const { return values_; }

    // Interleaved real view of length 2n.
    double* real_data() { return reinterpret_cast<double*>(values_.data()); }
    const double* real_data() const { return reinterpret_cast<const double*>(values_.data()); }

    // v_j = u_{j+shift mod n}, i.e. u(. + shift*h).
    PeriodicField rotated(std::ptrdiff_t shift) const;

    PeriodicField& operator+=(const PeriodicField& o);
    PeriodicField& operator-=(const PeriodicField& o);
    PeriodicField& operator*=(cplx s);

    friend bool operator==(const PeriodicField&, const PeriodicField&) = default;

private:
    std::vector<cplx> values_;
};

PeriodicField operator+(PeriodicField a, const PeriodicField& b);
PeriodicField operator-(PeriodicField a, const PeriodicField& b);
PeriodicField operator*(cplx s, PeriodicField a);

// Throws ContractViolation unless n >= 8 and n is even.
void check_grid(std::size_t n);

struct PhysicalDetunings {
    double zeta = 0.0;
    double zeta1 = 0.0;
    double d = 0.0;
    int k1 = 1;
};

// f(s) = f0 + f1 e(s)
cplx eval_forcing(const Params& p, double s);

// f at all n grid nodes.
std::vector<cplx> forcing_on_grid(const Params& p, std::size_t n);

// e at all n grid nodes.
std::vector<cplx> profile_on_grid(const Params& p, std::size_t n);

// Pointwise residual -d u'' + i omega u' + (zeta - i) u - |u|^2 u + i f.
PeriodicField residual(const Params& p, const PeriodicField& u, const DerivativeScheme& derivs);

// The reflection (f1, u) -> (-f1, u(. + pi/k1)).  Requires n divisible by
// 2*k1 so the shift is an exact rotation by n/(2 k1) nodes; sampled profiles
// must additionally satisfy e(s + pi/k1) = -e(s) on the grid.
std::pair<double, PeriodicField> apply_R(const Params& p, double f1, const PeriodicField& u);

// omega = (zeta - zeta1 + d k1^2) / k1
double omega_from_detunings(const PhysicalDetunings& pd);

}  // namespace lle
