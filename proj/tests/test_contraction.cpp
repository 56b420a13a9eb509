#include "paclab/contraction/map.hpp"
#include "paclab/contraction/orbit.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace paclab;

namespace {

// Negative-slope four-branch map whose attractor is a pair of 3-cycles.
PiecewiseAffineContraction reference_map() {
    std::vector<RealValue> bps{RealValue(Rational(0)), RealValue(Rational(1, 6)),
                               RealValue(Rational(1, 2)), RealValue(Rational(5, 6)),
                               RealValue(Rational(1))};
    return PiecewiseAffineContraction::build_map(BigInt(2), -1, std::move(bps),
                                                 {BigInt(1), BigInt(2), BigInt(1), BigInt(2)});
}

}  // namespace

TEST_CASE("build_map validates its inputs") {
    auto bps = [] {
        return std::vector<RealValue>{RealValue(Rational(0)), RealValue(Rational(1, 2)),
                                      RealValue(Rational(1))};
    };
    REQUIRE_THROWS_AS(
        PiecewiseAffineContraction::build_map(BigInt(2), 1, bps(), {BigInt(1)}),
        std::invalid_argument);
    REQUIRE_THROWS_AS(
        PiecewiseAffineContraction::build_map(BigInt(2), 1, bps(), {BigInt(0), BigInt(2)}),
        std::invalid_argument);
    REQUIRE_THROWS_AS(
        PiecewiseAffineContraction::build_map(BigInt(2), -1, bps(), {BigInt(2), BigInt(2)}),
        std::invalid_argument);
    REQUIRE_THROWS_AS(
        PiecewiseAffineContraction::build_map(BigInt(1), 1, bps(), {BigInt(1), BigInt(1)}),
        std::invalid_argument);

    std::vector<RealValue> bad{RealValue(Rational(0)), RealValue(Rational(2, 3)),
                               RealValue(Rational(1, 3)), RealValue(Rational(1))};
    REQUIRE_THROWS_AS(PiecewiseAffineContraction::build_map(
                          BigInt(2), 1, std::move(bad), {BigInt(1), BigInt(1), BigInt(1)}),
                      std::invalid_argument);
}

TEST_CASE("branches cover half-open intervals and evaluate affinely") {
    PiecewiseAffineContraction f = reference_map();
    REQUIRE(f.branch_count() == 4);
    REQUIRE(f.slope() == Rational(-1, 2));
    REQUIRE(f.breakpoints().size() == 5);

    REQUIRE(f.branch_of(RealValue(Rational(0))) == 1);
    REQUIRE(f.branch_of(RealValue(Rational(1, 6))) == 2);
    REQUIRE(f.branch_of(RealValue(Rational(1, 2))) == 3);
    REQUIRE(f.branch_of(RealValue(Rational(999, 1000))) == 4);
    REQUIRE_THROWS_AS(f.branch_of(RealValue(Rational(1))), std::domain_error);

    REQUIRE(f.evaluate(Rational(0)) == Rational(1, 2));
    REQUIRE(f.evaluate(Rational(2, 9)) == Rational(8, 9));
    REQUIRE(f.evaluate(Rational(8, 9)) == Rational(5, 9));
    REQUIRE(f.evaluate(Rational(5, 9)) == Rational(2, 9));

    RealValue via_formula = f.branch_formula(2, RealValue(Rational(2, 9)));
    REQUIRE(via_formula.as_rational() == Rational(8, 9));
}

TEST_CASE("branch words compose to affine maps with exact fixed points") {
    PiecewiseAffineContraction f = reference_map();
    AffineWord w = compose_branches(f, {2, 4, 3});
    REQUIRE(w.scale == Rational(-1, 8));
    REQUIRE(w.shift == Rational(1, 4));
    REQUIRE(w.fixed_point() == Rational(2, 9));
    REQUIRE(w.apply(Rational(0)) == Rational(1, 4));
    REQUIRE(w.apply(Rational(2, 9)) == Rational(2, 9));
}

TEST_CASE("image_components finds the branch images and their gaps") {
    std::vector<RealValue> bps{RealValue(Rational(0)), RealValue(Rational(1, 2)),
                               RealValue(Rational(1))};
    PiecewiseAffineContraction f = PiecewiseAffineContraction::build_map(
        BigInt(2), 1, std::move(bps), {BigInt(1), BigInt(2)});
    ImageDecomposition dec = f.image_components();
    REQUIRE(dec.components.size() == 2);
    REQUIRE(dec.gaps.size() == 1);
    REQUIRE(dec.components[0].lo.as_rational() == Rational(0));
    REQUIRE(dec.components[0].width().as_rational() == Rational(1, 4));
    REQUIRE(dec.gaps[0].width().as_rational() == Rational(1, 2));
    REQUIRE(interval_contains(dec.gaps[0], RealValue(Rational(1, 2))));
    REQUIRE_FALSE(interval_contains(dec.gaps[0], RealValue(Rational(7, 8))));
}

TEST_CASE("preimages are found exactly or reported absent") {
    PiecewiseAffineContraction f = reference_map();
    std::optional<RealValue> pre = f.preimage(RealValue(Rational(8, 9)));
    REQUIRE(pre.has_value());
    REQUIRE(pre->as_rational() == Rational(2, 9));
    REQUIRE_FALSE(f.preimage(RealValue(Rational(0))).has_value());
}

TEST_CASE("detect_cycle certifies the two 3-cycles of the reference map") {
    PiecewiseAffineContraction f = reference_map();

    SECTION("generic seed converges to the certified cycle") {
        CycleResult r = detect_cycle(f, RealValue(Rational(0)), 10'000);
        REQUIRE(r.status == CycleStatus::Cycle);
        REQUIRE(r.preperiod == 1);
        REQUIRE(r.cycle == std::vector<Rational>{Rational(2, 9), Rational(8, 9), Rational(5, 9)});
        REQUIRE_FALSE(r.exact_revisit);
        REQUIRE_FALSE(r.boundary_fixed_point);
    }

    SECTION("seed on the cycle revisits exactly") {
        CycleResult r = detect_cycle(f, RealValue(Rational(1, 9)), 10'000);
        REQUIRE(r.status == CycleStatus::Cycle);
        REQUIRE(r.exact_revisit);
        REQUIRE(r.preperiod == 0);
        REQUIRE(r.cycle == std::vector<Rational>{Rational(1, 9), Rational(4, 9), Rational(7, 9)});
    }

    SECTION("the certified cycle is mapped cyclically by f") {
        CycleResult r = detect_cycle(f, RealValue(Rational(3, 7)), 10'000);
        REQUIRE(r.status == CycleStatus::Cycle);
        for (std::size_t i = 0; i < r.cycle.size(); ++i)
            REQUIRE(f.evaluate(r.cycle[i]) == r.cycle[(i + 1) % r.cycle.size()]);
    }
}

TEST_CASE("detect_cycle handles fixed points at the domain edges") {
    std::vector<RealValue> bps{RealValue(Rational(0)), RealValue(Rational(1, 2)),
                               RealValue(Rational(1))};
    PiecewiseAffineContraction f = PiecewiseAffineContraction::build_map(
        BigInt(2), 1, std::move(bps), {BigInt(1), BigInt(2)});

    SECTION("contraction to 0 is certified without an exact hit") {
        CycleResult r = detect_cycle(f, RealValue(Rational(1, 3)), 10'000);
        REQUIRE(r.status == CycleStatus::Cycle);
        REQUIRE(r.cycle == std::vector<Rational>{Rational(0)});
        REQUIRE(r.preperiod == 0);
        REQUIRE_FALSE(r.exact_revisit);
    }

    SECTION("orbits climbing the top branch limit on the excluded endpoint") {
        CycleResult r = detect_cycle(f, RealValue(Rational(2, 3)), 10'000);
        REQUIRE(r.status == CycleStatus::Cycle);
        REQUIRE(r.boundary_fixed_point);
        REQUIRE(r.cycle == std::vector<Rational>{Rational(1)});
    }
}

TEST_CASE("detect_cycle certifies a fixed point sitting on a breakpoint") {
    // Equal intercepts make the map continuous across 1/2, and the global
    // fixed point is the breakpoint itself; orbits alternate sides forever.
    std::vector<RealValue> bps{RealValue(Rational(0)), RealValue(Rational(1, 2)),
                               RealValue(Rational(1))};
    PiecewiseAffineContraction f = PiecewiseAffineContraction::build_map_general(
        BigInt(2), -1, std::move(bps), {Rational(3, 4), Rational(3, 4)});
    CycleResult r = detect_cycle(f, RealValue(Rational(0)), 10'000);
    REQUIRE(r.status == CycleStatus::Cycle);
    REQUIRE(r.cycle == std::vector<Rational>{Rational(1, 2)});
    REQUIRE_FALSE(r.exact_revisit);
    REQUIRE(f.evaluate(Rational(1, 2)) == Rational(1, 2));
}
