// Shared fixtures for the unit tests.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "lle/model.hpp"

namespace test {

inline lle::Params dual_pump(double zeta, double omega = 1.0) {
    lle::Params p;
    p.d = -0.1;
    p.f0 = 2.0;
    p.k1 = 1;
    p.omega = omega;
    p.zeta = zeta;
    return p;
}

// Smooth random field: a few low Fourier modes with random coefficients.
inline lle::PeriodicField smooth_random(std::size_t n, std::mt19937_64& rng, int modes = 3, double amp = 1.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<lle::cplx> c(static_cast<std::size_t>(2 * modes + 1));
    for (auto& z : c) z = amp * lle::cplx(u(rng), u(rng));
    return lle::PeriodicField::sample(n, [&](double s) {
        lle::cplx v{};
        for (int m = -modes; m <= modes; ++m) v += c[static_cast<std::size_t>(m + modes)] * std::polar(1.0, m * s);
        return v;
    });
}

inline double max_abs_diff(const lle::PeriodicField& a, const lle::PeriodicField& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

}  // namespace test
