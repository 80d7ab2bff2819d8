// include/lle/stencil.hpp
//
// Central finite-difference stencils on a uniform periodic grid of n nodes
// over [0, 2*pi).  Index arithmetic wraps modulo n.

#pragma once

#include <cstddef>
#include <numbers>

namespace lle {

struct DerivativeScheme {
    std::size_t n = 0;
    double h = 0.0;

    explicit DerivativeScheme(std::size_t grid_size);

    // (u_{j+1} - u_{j-1}) / (2h)
    double first_coeff() const { return 1.0 / (2.0 * h); }
    // (u_{j+1} - 2 u_j + u_{j-1}) / h^2
    double second_coeff() const { return 1.0 / (h * h); }

    // Discrete symbols of the two stencils acting on exp(i m s).
    double first_symbol(int m) const;   // sin(m h) / h  (multiplies i)
    double second_symbol(int m) const;  // -(2 - 2 cos(m h)) / h^2

    std::size_t next(std::size_t j) const { return j + 1 == n ? 0 : j + 1; }
    std::size_t prev(std::size_t j) const { return j == 0 ? n - 1 : j - 1; }
};

}  // namespace lle
