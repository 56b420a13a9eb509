#include "paclab/serversim/conjugacy.hpp"
#include "paclab/serversim/parameters.hpp"
#include "paclab/serversim/simplex.hpp"
#include "paclab/serversim/simulation.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace paclab;

namespace {

DTriple unit_triple() {
    return DTriple(RealValue(Rational(1)), RealValue(Rational(1)), RealValue(Rational(1)));
}

DTriple champernowne_triple() {
    DigitStream c = champernowne_stream(4);
    return d_from_x(RealValue(offset_add(c, Rational(-1, 4))), RealValue(c),
                    RealValue(offset_add(c, Rational(1, 2))));
}

}  // namespace

TEST_CASE("the boundary chart visits the vertices in order") {
    REQUIRE(phi(Rational(0)) == SimplexState(Rational(0), Rational(1), Rational(0)));
    REQUIRE(phi(Rational(1, 3)) == SimplexState(Rational(0), Rational(0), Rational(1)));
    REQUIRE(phi(Rational(2, 3)) == SimplexState(Rational(1), Rational(0), Rational(0)));
    REQUIRE(phi(Rational(1, 6)) == SimplexState(Rational(0), Rational(1, 2), Rational(1, 2)));
    REQUIRE(phi(Rational(13, 15)) == SimplexState(Rational(2, 5), Rational(3, 5), Rational(0)));

    SECTION("phi_inv inverts phi on a grid") {
        for (long long k = 0; k < 24; ++k) {
            Rational t(k, 24);
            REQUIRE(phi_inv(phi(t)) == t);
        }
        REQUIRE(phi_inv(SimplexState(Rational(2, 5), Rational(3, 5), Rational(0))) ==
                Rational(13, 15));
    }

    SECTION("interior states have no chart coordinate") {
        REQUIRE_THROWS_AS(phi_inv(SimplexState(Rational(1, 3), Rational(1, 3), Rational(1, 3))),
                          std::domain_error);
    }
}

TEST_CASE("parameters convert between ratios and breakpoints exactly") {
    DTriple d = d_from_x(RealValue(Rational(1, 6)), RealValue(Rational(1, 2)),
                         RealValue(Rational(5, 6)));
    REQUIRE(d.d1.as_rational() == Rational(1));
    REQUIRE(d.d2.as_rational() == Rational(1));
    REQUIRE(d.d3.as_rational() == Rational(1));

    auto x = breakpoints_from_d(DTriple(RealValue(Rational(1)), RealValue(Rational(2)),
                                        RealValue(Rational(3))));
    REQUIRE(x[0].as_rational() == Rational(1, 6));
    REQUIRE(x[1].as_rational() == Rational(4, 9));
    REQUIRE(x[2].as_rational() == Rational(3, 4));

    SECTION("ratios must be strictly positive") {
        REQUIRE_THROWS_AS(DTriple(RealValue(Rational(0)), RealValue(Rational(1)),
                                  RealValue(Rational(1))),
                          std::invalid_argument);
    }

    SECTION("breakpoints outside their thirds are rejected") {
        REQUIRE_THROWS_AS(d_from_x(RealValue(Rational(1, 2)), RealValue(Rational(1, 2)),
                                   RealValue(Rational(5, 6))),
                          std::domain_error);
    }
}

TEST_CASE("switch_target ranks the two candidate tanks") {
    DTriple d = unit_triple();
    REQUIRE(switch_target(SimplexState(Rational(0), Rational(1, 3), Rational(2, 3)), 1, d) == 3);
    REQUIRE(switch_target(SimplexState(Rational(0), Rational(2, 3), Rational(1, 3)), 1, d) == 2);

    SECTION("ties go to the lower tank index") {
        REQUIRE(switch_target(SimplexState(Rational(0), Rational(1, 2), Rational(1, 2)), 1, d) ==
                2);
        REQUIRE(switch_target(SimplexState(Rational(1, 2), Rational(0), Rational(1, 2)), 2, d) ==
                1);
        REQUIRE(switch_target(SimplexState(Rational(1, 2), Rational(1, 2), Rational(0)), 3, d) ==
                1);
    }

    SECTION("the named tank must be empty") {
        REQUIRE_THROWS_AS(
            switch_target(SimplexState(Rational(1, 2), Rational(1, 4), Rational(1, 4)), 1, d),
            std::invalid_argument);
    }
}

TEST_CASE("drain_step empties the served tank and splits it among the rest") {
    DrainResult r = drain_step(SimplexState(Rational(0), Rational(1, 3), Rational(2, 3)), 3);
    REQUIRE(r.state == SimplexState(Rational(1, 3), Rational(2, 3), Rational(0)));
    REQUIRE(r.duration == Rational(1));
    REQUIRE_THROWS_AS(drain_step(SimplexState(Rational(0), Rational(1, 3), Rational(2, 3)), 1),
                      std::invalid_argument);
}

TEST_CASE("the symmetric parameters run an exact simplex 3-cycle") {
    DTriple d = unit_triple();
    SimplexState v0(Rational(0), Rational(1, 3), Rational(2, 3));

    PoincareResult p1 = poincare(v0, d);
    REQUIRE(p1.served == 3);
    REQUIRE(p1.state == SimplexState(Rational(1, 3), Rational(2, 3), Rational(0)));
    PoincareResult p2 = poincare(p1.state, d);
    REQUIRE(p2.served == 2);
    REQUIRE(p2.state == SimplexState(Rational(2, 3), Rational(0), Rational(1, 3)));
    PoincareResult p3 = poincare(p2.state, d);
    REQUIRE(p3.served == 1);
    REQUIRE(p3.state == v0);

    SECTION("trajectory records segments and cumulative event times") {
        Trajectory traj = trajectory(v0, d, 3);
        REQUIRE(traj.segments.size() == 3);
        REQUIRE(traj.event_times ==
                std::vector<Rational>{Rational(1), Rational(2), Rational(3)});
        REQUIRE(traj.segments.back().end == v0);
    }

    SECTION("poincare_cycle finds the exact cycle") {
        CycleEstimate est = poincare_cycle(v0, d, 100);
        REQUIRE(est.found);
        REQUIRE(est.exact);
        REQUIRE(est.cycle.size() == 3);
        REQUIRE(est.preperiod.empty());
    }

    SECTION("a generic start converges to the same cycle approximately") {
        CycleEstimate est =
            poincare_cycle(SimplexState(Rational(11, 100), Rational(0), Rational(89, 100)), d,
                           200);
        REQUIRE(est.found);
        REQUIRE_FALSE(est.exact);
        REQUIRE(est.cycle.size() == 3);
    }
}

TEST_CASE("trajectory validates the start-state and served-tank pairing") {
    DTriple d = unit_triple();
    SimplexState boundary(Rational(0), Rational(1, 3), Rational(2, 3));
    SimplexState interior(Rational(1, 4), Rational(1, 4), Rational(1, 2));

    REQUIRE_THROWS_AS(trajectory(boundary, d, 2, {}, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(trajectory(interior, d, 2), std::invalid_argument);

    Trajectory traj = trajectory(interior, d, 2, {}, 2);
    REQUIRE(traj.segments.size() == 3);  // leading partial drain plus two events
    REQUIRE(traj.segments.front().served == 2);
    REQUIRE(traj.segments.front().end.v2.is_zero());
    REQUIRE(traj.segments.front().duration == Rational(3, 8));
}

TEST_CASE("sample_rows interpolates segments exactly") {
    DTriple d = unit_triple();
    SimplexState v0(Rational(0), Rational(1, 3), Rational(2, 3));
    Trajectory traj = trajectory(v0, d, 3);
    std::vector<SampleRow> rows = sample_rows(traj, 4);
    REQUIRE(rows.size() == 3 * 4 + 1);
    REQUIRE(rows.front().t == Rational(0));
    REQUIRE(rows.back().t == Rational(3));
    for (std::size_t i = 1; i < rows.size(); ++i) REQUIRE(rows[i - 1].t < rows[i].t);
    for (const SampleRow& row : rows) REQUIRE(row.v1 + row.v2 + row.v3 == Rational(1));
    REQUIRE(rows.back().v1 + rows.back().v3 == Rational(1) - rows.back().v2);
}

TEST_CASE("the boundary return map is conjugate to the interval map") {
    DTriple d = unit_triple();
    REQUIRE(boundary_return_map(d, Rational(1, 4)) == Rational(7, 8));
    REQUIRE(conjugacy_residual(d, 50) == Rational(0));

    SECTION("empirical breakpoints land on the closed-form ones") {
        EmpiricalBreakpoints emp = empirical_breakpoints(d, 64);
        REQUIRE_FALSE(emp.anomaly);
        REQUIRE(emp.located.size() == 3);
        auto closed = breakpoints_from_d(d);
        Rational tol(BigInt(1), pow_int(BigInt(10), 9));
        for (std::size_t i = 0; i < 3; ++i)
            REQUIRE((emp.located[i] - closed[i].as_rational()).abs() < tol);
    }
}

TEST_CASE("stream parameters drive exact decisions at bounded precision") {
    DTriple cd = champernowne_triple();
    DecisionContext ctx{60, 4096};

    REQUIRE(boundary_return_map(cd, Rational(13, 15), ctx) == Rational(1, 15));

    SECTION("an interval map built from the stream ratios agrees") {
        PiecewiseAffineContraction f = interval_map_from_d(cd);
        REQUIRE(f.evaluate(Rational(13, 15)) == Rational(1, 15));
        REQUIRE(f.evaluate(Rational(1, 15)) == Rational(7, 15));
        REQUIRE(f.evaluate(Rational(7, 15)) == Rational(4, 15));
        REQUIRE(f.evaluate(Rational(4, 15)) == Rational(13, 15));
    }

    SECTION("an exhausted digit budget is reported, not guessed") {
        // v2/v3 matches the stream ratio to four digits, so four digits of
        // enclosure cannot separate the scaled volumes.
        SimplexState v(Rational(0), Rational(4261, 14261), Rational(10000, 14261));
        DTriple d(RealValue(champernowne_stream(4)), RealValue(Rational(1)),
                  RealValue(Rational(1)));
        REQUIRE_THROWS_AS(switch_target(v, 1, d, DecisionContext{4, 4}), PrecisionExhausted);
        REQUIRE(switch_target(v, 1, d, DecisionContext{4, 64}) == 3);
    }
}
