#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "zen/measure.hpp"

using namespace zen;

namespace {
constexpr double kInvTwoPi = 0.15915494309189535;  // 1/(2*pi)
constexpr double kInvPi = 0.3183098861837907;      // 1/pi
}  // namespace

TEST_CASE("doubling ratio of the canonical measures", "[measure]") {
    // single atom at the origin: nu[0,2r) / nu[0,r) == 1 for every r
    BoundaryMeasure hardy{{{0.0, kInvTwoPi}}, {}};
    auto rep = delta2_ratio(hardy);
    REQUIRE(rep.satisfied);
    CHECK(rep.ratio_sup == Catch::Approx(1.0).margin(1e-15));

    // pure power piece r^alpha dr: ratio is identically 2^{alpha+1}
    for (double alpha : {0.0, 1.0, 2.5}) {
        BoundaryMeasure berg{{}, {{kInvPi, alpha}}};
        auto r = delta2_ratio(berg);
        REQUIRE(r.satisfied);
        CHECK(r.ratio_sup == Catch::Approx(std::pow(2.0, alpha + 1.0)).epsilon(1e-10));
    }

    // atom at 0 plus flat piece: ratio (m + 2cr)/(m + cr) increases to 2
    BoundaryMeasure mixed{{{0.0, kInvTwoPi}}, {{kInvPi, 0.0}}};
    auto rm = delta2_ratio(mixed);
    REQUIRE(rm.satisfied);
    CHECK(rm.ratio_sup == Catch::Approx(2.0).epsilon(1e-10));

    // two pieces alpha in {0,1}: small-r limit 2^{1+1}=4 dominates large-r limit 2
    BoundaryMeasure two{{}, {{1.0, 0.0}, {1.0, 1.0}}};
    auto rt = delta2_ratio(two);
    REQUIRE(rt.satisfied);
    CHECK(rt.ratio_sup == Catch::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("measures with no mass near the origin are rejected with a witness", "[measure]") {
    // all mass at r = 1: the ball [0,r) is empty for r <= 1 while [0,2r) is
    // not, so the doubling ratio is unbounded; the report must refuse and
    // point at a radius below the first atom
    BoundaryMeasure away{{{1.0, 1.0}}, {}};
    auto rep = delta2_ratio(away);
    REQUIRE_FALSE(rep.satisfied);
    REQUIRE(rep.witness_r.has_value());
    CHECK(*rep.witness_r < 1.0);
    CHECK_FALSE(rep.reason.empty());
    CHECK_THROWS_AS(validate_measure(away), ValidationError);
}

TEST_CASE("shape validation rejects malformed inputs", "[measure]") {
    CHECK_THROWS_AS(validate_measure({{{0.0, -1.0}}, {}}), ValidationError);   // negative mass
    CHECK_THROWS_AS(validate_measure({{{-0.5, 1.0}}, {}}), ValidationError);   // negative radius
    CHECK_THROWS_AS(validate_measure({{}, {{1.0, -1.0}}}), ValidationError);   // alpha <= -1
    CHECK_THROWS_AS(validate_measure({{}, {{1.0, -1.5}}}), ValidationError);
    CHECK_THROWS_AS(validate_measure({{}, {{-1.0, 0.0}}}), ValidationError);   // negative coeff
    CHECK_THROWS_AS(validate_measure({{}, {}}), ValidationError);              // empty measure
}

TEST_CASE("cumulative mass matches hand computation", "[measure]") {
    // atom 2 at r=1, piece 3 r^1 dr: nu[0,r) = [r>1]*2 + 3 r^2/2
    BoundaryMeasure m{{{1.0, 2.0}}, {{3.0, 1.0}}};
    CHECK(mass_cdf(m, 0.5) == Catch::Approx(3.0 * 0.25 / 2.0).epsilon(1e-14));
    CHECK(mass_cdf(m, 2.0) == Catch::Approx(2.0 + 3.0 * 4.0 / 2.0).epsilon(1e-14));
    // half-open convention: the atom at r=1 is not yet inside [0,1)
    CHECK(mass_cdf(m, 1.0) == Catch::Approx(3.0 / 2.0).epsilon(1e-14));
}
