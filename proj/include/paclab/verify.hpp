#pragma once

#include "paclab/betadyn/backward_orbit.hpp"
#include "paclab/betadyn/transforms.hpp"
#include "paclab/contraction/map.hpp"
#include "paclab/contraction/orbit.hpp"
#include "paclab/exact/digit_stream.hpp"
#include "paclab/exact/rational.hpp"
#include "paclab/exact/real_value.hpp"
#include "paclab/quasipart/quasipartition.hpp"
#include "paclab/serversim/conjugacy.hpp"
#include "paclab/serversim/parameters.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace paclab {

/// Outcome of one deterministic property suite. The seed is part of the
/// report so any run can be replayed bit-exactly.
struct SuiteReport {
    std::string name;
    std::uint64_t seed = 0;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::vector<std::string> notes;

    bool passed() const { return failures == 0; }
    void fail(std::string why) {
        ++failures;
        if (notes.size() < 8) notes.push_back(std::move(why));
    }
};

namespace detail {

/// Uniform-ish rational in [0,1) (or (0,1) when nonzero) with denominator
/// between 2 and max_den.
inline Rational random_unit_rational(std::mt19937_64& rng, long long max_den,
                                     bool nonzero = false) {
    long long den = 2 + static_cast<long long>(rng() % static_cast<std::uint64_t>(max_den - 1));
    long long lo = nonzero ? 1 : 0;
    long long num = lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(den - lo));
    return Rational(num, den);
}

/// Random canonical-form map: distinct rational interior breakpoints, random
/// slope sign, random alphas (with alpha_1 != beta when the slope is
/// negative).
inline PiecewiseAffineContraction random_map(std::mt19937_64& rng, long long beta,
                                             std::size_t branches, long long max_den) {
    std::set<Rational> interior;
    while (interior.size() + 1 < branches)
        interior.insert(random_unit_rational(rng, max_den, true));
    std::vector<RealValue> bps;
    bps.emplace_back(Rational(0));
    for (const Rational& r : interior) bps.emplace_back(r);
    bps.emplace_back(Rational(1));
    int sign = (rng() % 2 == 0) ? 1 : -1;
    std::vector<BigInt> alphas;
    for (std::size_t i = 0; i < branches; ++i) {
        long long hi = (sign < 0 && i == 0) ? beta - 1 : beta;
        alphas.emplace_back(1 + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi)));
    }
    return PiecewiseAffineContraction::build_map(BigInt(beta), sign, std::move(bps), alphas);
}

}  // namespace detail

/// The switched-server parameters built on the base-4 Champernowne constant:
/// breakpoints (c - 1/4, c, c + 1/2) pulled back through d_from_x.
inline DTriple champernowne_dtriple() {
    DigitStream c = champernowne_stream(4);
    RealValue x1{offset_add(c, Rational(-1, 4))};
    RealValue x2{c};
    RealValue x3{offset_add(c, Rational(1, 2))};
    return d_from_x(x1, x2, x3);
}

/// (T_-beta)^2 = T_(beta^2) on 10,000 random rationals for each
/// beta in {2,3,4,5}; every check is an exact rational identity.
inline SuiteReport verify_lemma_square(std::uint64_t seed = 101) {
    SuiteReport rep;
    rep.name = "lemma-square";
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    for (long long beta : {2LL, 3LL, 4LL, 5LL}) {
        BigInt b(beta);
        for (int k = 0; k < 10'000; ++k) {
            Rational x = detail::random_unit_rational(rng, 10'000);
            ++rep.checks;
            if (!square_identity_check(x, b))
                rep.fail("square identity fails at x=" + x.str() + ", beta=" + b.str());
        }
    }
    return rep;
}

/// Iterated preimages versus the digit transform on 50 random maps of both
/// slope signs, chained from every interior breakpoint: the chain must match
/// the transform orbit exactly and any death point must land in a gap.
inline SuiteReport verify_backward_orbit(std::uint64_t seed = 202) {
    SuiteReport rep;
    rep.name = "backward-orbit";
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    for (int m = 0; m < 50; ++m) {
        long long beta = 2 + static_cast<long long>(rng() % 2);
        std::size_t branches = 2 + static_cast<std::size_t>(rng() % 4);
        PiecewiseAffineContraction f = detail::random_map(rng, beta, branches, 50);
        for (std::size_t i = 1; i < f.branch_count(); ++i) {
            Rational start = f.breakpoints()[i].as_rational();
            ++rep.checks;
            try {
                BackwardTransformReport r = backward_equals_transform(f, start, 10'000);
                if (r.died && !r.death_point_in_gap)
                    rep.fail("death point outside the gaps, start=" + start.str());
            } catch (const std::exception& e) {
                rep.fail(std::string("mismatch: ") + e.what());
            }
        }
    }
    return rep;
}

/// breakpoints_from_d after d_from_x is the exact identity on 100 random
/// rational triples drawn from (0,1/3) x (1/3,2/3) x (2/3,1).
inline SuiteReport verify_roundtrip(std::uint64_t seed = 303) {
    SuiteReport rep;
    rep.name = "roundtrip";
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 100; ++k) {
        Rational x1 = detail::random_unit_rational(rng, 300, true) / Rational(3);
        Rational x2 = Rational(1, 3) + detail::random_unit_rational(rng, 300, true) / Rational(3);
        Rational x3 = Rational(2, 3) + detail::random_unit_rational(rng, 300, true) / Rational(3);
        DTriple d = d_from_x(x1, x2, x3);
        auto back = breakpoints_from_d(d);
        const Rational* want[3] = {&x1, &x2, &x3};
        for (std::size_t i = 0; i < 3; ++i) {
            ++rep.checks;
            if (!back[i].is_rational() || back[i].as_rational() != *want[i])
                rep.fail("roundtrip drift at x" + std::to_string(i + 1) + "=" + want[i]->str());
        }
    }
    return rep;
}

/// Conjugacy of the Poincare return map with the interval map: residual
/// exactly 0 on 20 random rational triples x 100 samples, below 10^-50 for
/// the Champernowne parameters at 60-digit decisions, and equal to the
/// worked value 1/15 at t = 13/15.
inline SuiteReport verify_conjugacy(std::uint64_t seed = 404) {
    SuiteReport rep;
    rep.name = "conjugacy";
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 20; ++k) {
        auto pick = [&] {
            long long den = 1 + static_cast<long long>(rng() % 40);
            long long num = 1 + static_cast<long long>(rng() % (4 * static_cast<std::uint64_t>(den)));
            return Rational(num, den);
        };
        DTriple d{RealValue(pick()), RealValue(pick()), RealValue(pick())};
        ++rep.checks;
        Rational worst = conjugacy_residual(d, 100, rng());
        if (!worst.is_zero()) rep.fail("nonzero rational residual " + worst.str());
    }
    DTriple cd = champernowne_dtriple();
    DecisionContext ctx{60, 4096};
    ++rep.checks;
    Rational worst = conjugacy_residual(cd, 100, seed ^ 0x9e3779b9u, ctx);
    if (worst >= Rational(BigInt(1), pow_int(BigInt(10), 50)))
        rep.fail("Champernowne residual too large: " + worst.str());
    ++rep.checks;
    Rational g = boundary_return_map(cd, Rational(13, 15), ctx);
    if (g != Rational(1, 15)) rep.fail("return map at 13/15 gave " + g.str());
    ++rep.checks;
    PiecewiseAffineContraction f = interval_map_from_d(cd);
    if (f.evaluate(Rational(13, 15)) != Rational(1, 15))
        rep.fail("interval map at 13/15 disagrees with 1/15");
    return rep;
}

/// Pigeonhole bound: some gap of length at least (1 - 1/beta)/(n+1) exists
/// for every generated map, by exact rational comparison.
inline SuiteReport verify_gap_bound(std::uint64_t seed = 505) {
    SuiteReport rep;
    rep.name = "gap-bound";
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    for (int m = 0; m < 200; ++m) {
        long long beta = 2 + static_cast<long long>(rng() % 4);
        std::size_t branches = 2 + static_cast<std::size_t>(rng() % 5);
        PiecewiseAffineContraction f = detail::random_map(rng, beta, branches, 50);
        ImageDecomposition dec = f.image_components();
        Rational widest(0);
        for (const ExactInterval& gap : dec.gaps) {
            Rational w = gap.width().as_rational();
            if (w > widest) widest = w;
        }
        Rational bound = (Rational(1) - Rational(1, beta)) /
                         Rational(static_cast<long long>(f.branch_count()) + 1);
        ++rep.checks;
        if (widest < bound)
            rep.fail("max gap " + widest.str() + " below bound " + bound.str());
    }
    return rep;
}

/// Full finite-attractor pipeline on 100 random maps: conclusive backward
/// closures, verified quasi-partitions, and forward orbits from 50 random
/// seeds per map entering confirmed cycles inside F union G.
inline SuiteReport verify_theorem1(std::uint64_t seed = 606) {
    SuiteReport rep;
    rep.name = "theorem1";
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    for (int m = 0; m < 100; ++m) {
        long long beta = 2 + static_cast<long long>(rng() % 2);
        std::size_t branches = 2 + static_cast<std::size_t>(rng() % 4);
        PiecewiseAffineContraction f = detail::random_map(rng, beta, branches, 50);
        ++rep.checks;
        try {
            BackwardClosure closure = backward_closure(f);
            if (!closure.conclusive()) {
                rep.fail("backward closure inconclusive on map " + std::to_string(m));
                continue;
            }
            QuasiPartition qp = build_partition(f, closure.H);
            if (!verify_partition(f, qp)) {
                rep.fail("partition fails verification on map " + std::to_string(m));
                continue;
            }
            AttractorReport ar = confirmed_cycles(f, qp);
            std::set<Rational> allowed(ar.F.begin(), ar.F.end());
            allowed.insert(ar.G.begin(), ar.G.end());
            for (int s = 0; s < 50; ++s) {
                Rational x0 = detail::random_unit_rational(rng, 1'000);
                ++rep.checks;
                CycleResult cr = detect_cycle(f, RealValue(x0), 10'000);
                if (cr.status != CycleStatus::Cycle) {
                    rep.fail("no certified cycle from seed " + x0.str() + " on map " +
                             std::to_string(m));
                    continue;
                }
                for (const Rational& pt : cr.cycle)
                    if (allowed.find(pt) == allowed.end()) {
                        rep.fail("cycle point " + pt.str() + " escapes F and G on map " +
                                 std::to_string(m));
                        break;
                    }
            }
        } catch (const std::exception& e) {
            rep.fail(std::string("pipeline error on map ") + std::to_string(m) + ": " + e.what());
        }
    }
    return rep;
}

inline std::vector<SuiteReport> verify_all() {
    return {verify_lemma_square(), verify_backward_orbit(), verify_roundtrip(),
            verify_conjugacy(),    verify_gap_bound(),      verify_theorem1()};
}

}  // namespace paclab
