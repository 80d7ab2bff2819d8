#include "doctest.h"

#include "lle/discretize.hpp"
#include "lle/error.hpp"
#include "lle/model.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace lle;

TEST_SUITE("model") {

TEST_CASE("params validation rejects zero dispersion and bad mode index") {
    Params p = test::dual_pump(3.0);
    CHECK_NOTHROW(p.validate());
    p.d = 0.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p.d = -0.1;
    p.k1 = 0;
    CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("grid contract") {
    CHECK_NOTHROW(check_grid(8));
    CHECK_THROWS_AS(check_grid(6), ContractViolation);
    CHECK_THROWS_AS(check_grid(31), ContractViolation);
}

TEST_CASE("forcing evaluation") {
    Params p = test::dual_pump(3.0);
    p.f1 = 0.5;
    const double s = 0.7;
    const cplx expect = 2.0 + 0.5 * std::polar(1.0, s);
    CHECK(std::abs(eval_forcing(p, s) - expect) < 1e-15);
    const auto grid = forcing_on_grid(p, 16);
    REQUIRE(grid.size() == 16);
    CHECK(std::abs(grid[4] - (2.0 + 0.5 * std::polar(1.0, PeriodicField::node(4, 16)))) < 1e-15);
}

TEST_CASE("sampled profile only answers at nodes") {
    std::vector<cplx> v(8);
    for (std::size_t j = 0; j < 8; ++j) v[j] = cplx(double(j), 0.0);
    const auto prof = ForcingProfile::sampled(v);
    CHECK(prof.at_node(3, 8, 1) == cplx(3.0, 0.0));
    CHECK(prof.at(PeriodicField::node(5, 8), 1) == cplx(5.0, 0.0));
    CHECK_THROWS_AS(prof.at(0.1, 1), ContractViolation);
    CHECK_THROWS_AS(prof.at_node(0, 16, 1), ContractViolation);
}

TEST_CASE("residual of a fixed field matches the independent evaluation") {
    Params p = test::dual_pump(3.0);
    p.f1 = 0.5;
    const std::size_t n = 32;
    const auto u = PeriodicField::sample(n, [](double s) {
        return 1.0 + 0.3 * std::polar(1.0, s) + cplx(0.0, 0.1) * std::polar(1.0, -2.0 * s);
    });
    const auto r = residual(p, u, DerivativeScheme(n));
    CHECK(r[0].real() == doctest::Approx(oracle::kResidualRe0_N32).epsilon(1e-12));
    CHECK(r[5].imag() == doctest::Approx(oracle::kResidualIm5_N32).epsilon(1e-12));
    CHECK(residual_vec(p, u).norm() == doctest::Approx(oracle::kResidualNorm_N32).epsilon(1e-12));
}

TEST_CASE("reflection map is an involution and preserves solutions") {
    Params p = test::dual_pump(3.0);
    std::mt19937_64 rng(7);
    const auto u = test::smooth_random(64, rng);
    auto [f1a, ua] = apply_R(p, 0.3, u);
    CHECK(f1a == doctest::Approx(-0.3));
    auto [f1b, ub] = apply_R(p, f1a, ua);
    CHECK(f1b == doctest::Approx(0.3));
    CHECK(test::max_abs_diff(ub, u) < 1e-15);
    // residual norm is invariant under R
    const double r0 = residual_vec(p.with_f1(0.3), u).norm();
    const double r1 = residual_vec(p.with_f1(f1a), ua).norm();
    CHECK(r1 == doctest::Approx(r0).epsilon(1e-12));
}

TEST_CASE("reflection needs n divisible by 2 k1") {
    Params p = test::dual_pump(3.0);
    p.k1 = 3;
    CHECK_THROWS_AS(apply_R(p, 0.1, PeriodicField(16)), ContractViolation);
    CHECK_NOTHROW(apply_R(p, 0.1, PeriodicField(18)));
}

TEST_CASE("wave speed from physical detunings") {
    PhysicalDetunings pd{3.0, 2.0, -0.1, 2};
    CHECK(omega_from_detunings(pd) == doctest::Approx((3.0 - 2.0 - 0.1 * 4.0) / 2.0));
}

TEST_CASE("rotation and field arithmetic") {
    PeriodicField u(std::vector<cplx>{1, 2, 3, 4});
    const auto r = u.rotated(1);
    CHECK(r[0] == cplx(2));
    CHECK(r[3] == cplx(1));
    const auto w = 2.0 * u - u;
    CHECK(w == u);
}

}
