// src/model.cpp

#include "lle/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lle/discretize.hpp"
#include "lle/error.hpp"

namespace lle {

DerivativeScheme::DerivativeScheme(std::size_t grid_size)
    : n(grid_size), h(2.0 * std::numbers::pi / static_cast<double>(grid_size)) {
    check_grid(grid_size);
}

double DerivativeScheme::first_symbol(int m) const { return std::sin(m * h) / h; }

double DerivativeScheme::second_symbol(int m) const { return -(2.0 - 2.0 * std::cos(m * h)) / (h * h); }

void check_grid(std::size_t n) {
    if (n < 8 || n % 2 != 0) {
        throw ContractViolation("grid size must be even and at least 8, got " + std::to_string(n));
    }
}

ForcingProfile ForcingProfile::sampled(std::vector<cplx> grid_values) {
    check_grid(grid_values.size());
    ForcingProfile fp;
    fp.kind_ = Kind::Sampled;
    fp.samples_ = std::move(grid_values);
    return fp;
}

cplx ForcingProfile::at(double s, int k1) const {
    if (kind_ == Kind::SecondHarmonic) return std::polar(1.0, k1 * s);
    const std::size_t n = samples_.size();
    const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
    const double pos = std::fmod(s, 2.0 * std::numbers::pi) / h;
    const double wrapped = pos < 0 ? pos + static_cast<double>(n) : pos;
    const double nearest = std::round(wrapped);
    if (std::abs(wrapped - nearest) > 1e-9) {
        throw ContractViolation("sampled forcing queried off-grid at s = " + std::to_string(s));
    }
    return samples_[static_cast<std::size_t>(nearest) % n];
}

cplx ForcingProfile::at_node(std::size_t j, std::size_t n, int k1) const {
    if (kind_ == Kind::SecondHarmonic) return std::polar(1.0, k1 * PeriodicField::node(j, n));
    if (samples_.size() != n) {
        throw ContractViolation("sampled forcing has " + std::to_string(samples_.size()) +
                                " nodes, field has " + std::to_string(n));
    }
    return samples_[j];
}

void Params::validate() const {
    if (d == 0.0) throw DomainError("dispersion d must be nonzero");
    if (k1 < 1) throw DomainError("mode index k1 must be >= 1");
}

PeriodicField::PeriodicField(std::size_t n, cplx value) : values_(n, value) {}

PeriodicField::PeriodicField(std::vector<cplx> values) : values_(std::move(values)) {}

double PeriodicField::node(std::size_t j, std::size_t n) {
    return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
}

PeriodicField PeriodicField::rotated(std::ptrdiff_t shift) const {
    const auto n = static_cast<std::ptrdiff_t>(values_.size());
    std::vector<cplx> out(values_.size());
    if (n == 0) return PeriodicField(std::move(out));
    const std::ptrdiff_t s = ((shift % n) + n) % n;
    for (std::ptrdiff_t j = 0; j < n; ++j) out[j] = values_[(j + s) % n];
    return PeriodicField(std::move(out));
}

PeriodicField& PeriodicField::operator+=(const PeriodicField& o) {
    if (o.size() != size()) throw ContractViolation("field size mismatch");
    for (std::size_t j = 0; j < size(); ++j) values_[j] += o.values_[j];
    return *this;
}

PeriodicField& PeriodicField::operator-=(const PeriodicField& o) {
    if (o.size() != size()) throw ContractViolation("field size mismatch");
    for (std::size_t j = 0; j < size(); ++j) values_[j] -= o.values_[j];
    return *this;
}

PeriodicField& PeriodicField::operator*=(cplx s) {
    for (auto& v : values_) v *= s;
    return *this;
}

PeriodicField operator+(PeriodicField a, const PeriodicField& b) { return a += b; }
PeriodicField operator-(PeriodicField a, const PeriodicField& b) { return a -= b; }
PeriodicField operator*(cplx s, PeriodicField a) { return a *= s; }

cplx eval_forcing(const Params& p, double s) {
    if (p.f1 == 0.0 && !p.forcing.is_sampled()) return p.f0;
    return p.f0 + p.f1 * p.forcing.at(s, p.k1);
}

std::vector<cplx> profile_on_grid(const Params& p, std::size_t n) {
    std::vector<cplx> e(n);
    for (std::size_t j = 0; j < n; ++j) e[j] = p.forcing.at_node(j, n, p.k1);
    return e;
}

std::vector<cplx> forcing_on_grid(const Params& p, std::size_t n) {
    std::vector<cplx> f = profile_on_grid(p, n);
    for (auto& v : f) v = p.f0 + p.f1 * v;
    return f;
}

PeriodicField residual(const Params& p, const PeriodicField& u, const DerivativeScheme& derivs) {
    if (derivs.n != u.size()) throw ContractViolation("derivative scheme and field sizes differ");
    return RealSystem::unpack(residual_vec(p, u));
}

std::pair<double, PeriodicField> apply_R(const Params& p, double f1, const PeriodicField& u) {
    const std::size_t n = u.size();
    const auto half_period_nodes = static_cast<std::size_t>(2 * p.k1);
    if (p.k1 < 1 || n % half_period_nodes != 0) {
        throw ContractViolation("grid size " + std::to_string(n) + " not divisible by 2*k1 = " +
                                std::to_string(half_period_nodes));
    }
    const std::size_t shift = n / half_period_nodes;
    if (p.forcing.is_sampled()) {
        const auto e = profile_on_grid(p, n);
        double scale = 0.0;
        for (const auto& v : e) scale = std::max(scale, std::abs(v));
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(e[(j + shift) % n] + e[j]) > 1e-12 * std::max(scale, 1.0)) {
                throw ContractViolation("sampled forcing lacks half-period antisymmetry");
            }
        }
    }
    return {-f1, u.rotated(static_cast<std::ptrdiff_t>(shift))};
}

double omega_from_detunings(const PhysicalDetunings& pd) {
    if (pd.k1 < 1) throw DomainError("mode index k1 must be >= 1");
    return (pd.zeta - pd.zeta1 + pd.d * pd.k1 * pd.k1) / pd.k1;
}

}  // namespace lle
