#include "doctest.h"

#include "lle/cli/threshold.hpp"
#include "lle/error.hpp"
#include "support.hpp"

using namespace lle;
using namespace lle::cli;

namespace {
ContinuationSettings fast() {
    ContinuationSettings cs;
    cs.record_min_sv = false;
    return cs;
}
}  // namespace

TEST_SUITE("threshold") {

TEST_CASE("argument validation") {
    const Params p = test::dual_pump(3.0);
    CHECK_THROWS_AS(locate_threshold(p, 3.2, 3.1, 0.01, 32, fast()), DomainError);
    CHECK_THROWS_AS(locate_threshold(p, 3.0, 3.1, 0.0, 32, fast()), DomainError);
    const auto r = locate_threshold(p, 3.1, 3.1, 0.01, 32, fast());
    CHECK(r.lo == 3.1);
    CHECK(r.hi == 3.1);
    CHECK(r.probes.empty());
}

TEST_CASE("predicate needs three constant solutions") {
    const auto pr = probe_connectivity(test::dual_pump(2.0), 2.0, 32, fast());
    CHECK_FALSE(pr.verdict);
    CHECK_FALSE(pr.diagnostic.empty());
}

TEST_CASE("verdicts on either side of the switch") {
    const Params p = test::dual_pump(3.0);
    const auto lo = probe_connectivity(p, 3.0, 64, fast());
    REQUIRE(lo.verdict);
    CHECK(*lo.verdict == Connectivity::LowerPair);
    CHECK(lo.closed);
    CHECK(lo.rho.size() == 3);
    const auto hi = probe_connectivity(p, 4.0, 64, fast());
    REQUIRE(hi.verdict);
    CHECK(*hi.verdict == Connectivity::UpperPair);
}

TEST_CASE("same verdict at both ends is a numerical failure") {
    CHECK_THROWS_AS(locate_threshold(test::dual_pump(3.0), 2.9, 3.0, 0.05, 32, fast()), NumericalFailure);
}

}
