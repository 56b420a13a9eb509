#pragma once

#include "paclab/contraction/map.hpp"
#include "paclab/exact/rational.hpp"
#include "paclab/exact/real_value.hpp"
#include "paclab/serversim/parameters.hpp"
#include "paclab/serversim/simplex.hpp"
#include "paclab/serversim/simulation.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace paclab {

/// The interval map conjugate to the Poincare return map: beta = 2, negative
/// slope, branch pattern alpha = (1, 2, 1, 2) over (0, x1, x2, x3, 1) with
/// the x_i given by breakpoints_from_d.
inline PiecewiseAffineContraction interval_map_from_d(const DTriple& d) {
    auto x = breakpoints_from_d(d);
    std::vector<RealValue> bps;
    bps.emplace_back(Rational(0));
    for (auto& xi : x) bps.push_back(std::move(xi));
    bps.emplace_back(Rational(1));
    return PiecewiseAffineContraction::build_map(BigInt(2), -1, std::move(bps),
                                                 {BigInt(1), BigInt(2), BigInt(1), BigInt(2)});
}

/// Boundary coordinate of the next emptying event: g(t) = phi_inv(P(phi(t))).
inline Rational boundary_return_map(const DTriple& d, const Rational& t,
                                    const DecisionContext& ctx = {}) {
    return phi_inv(poincare(phi(t), d, ctx).state);
}

/// |g(t) - f(t)| at one parameter. Exactly zero wherever the conjugacy holds;
/// at a rational breakpoint itself the switch tie rule and the half-open
/// branch convention can disagree, and the true discrepancy is reported.
inline Rational conjugacy_residual_at(const PiecewiseAffineContraction& f, const DTriple& d,
                                      const Rational& t, const DecisionContext& ctx = {}) {
    Rational lhs = boundary_return_map(d, t, ctx);
    return (lhs - f.evaluate(t)).abs();
}

/// Maximum residual over `samples` random rationals in [0,1). Sampling skips
/// exact hits on rational breakpoints, where the tie convention differs by
/// design. Deterministic for a fixed seed.
inline Rational conjugacy_residual(const DTriple& d, std::size_t samples,
                                   std::uint64_t seed = 20240901,
                                   const DecisionContext& ctx = {}) {
    PiecewiseAffineContraction f = interval_map_from_d(d);
    std::mt19937_64 rng(seed);
    Rational worst(0);
    for (std::size_t k = 0; k < samples; ++k) {
        Rational t;
        for (;;) {
            long long den = 2 + static_cast<long long>(rng() % 9998);
            long long num = static_cast<long long>(rng() % static_cast<std::uint64_t>(den));
            t = Rational(num, den);
            bool on_breakpoint = false;
            for (std::size_t i = 1; i + 1 < f.breakpoints().size(); ++i) {
                const RealValue& bp = f.breakpoints()[i];
                if (bp.is_rational() && bp.as_rational() == t) {
                    on_breakpoint = true;
                    break;
                }
            }
            if (!on_breakpoint) break;
        }
        Rational r = conjugacy_residual_at(f, d, t, ctx);
        if (r > worst) worst = r;
    }
    return worst;
}

/// Discontinuities of the boundary return map located without using the
/// closed-form breakpoints: grid scan plus exact bisection.
struct EmpiricalBreakpoints {
    std::vector<Rational> located;
    bool anomaly = false;
    std::string note;
};

namespace detail {

/// Within one continuity piece g is affine with slope -1/2, so a pair
/// (a, b) brackets a discontinuity exactly when the secant slope is off.
inline bool return_map_jump(const Rational& a, const Rational& b, const Rational& ga,
                            const Rational& gb) {
    return gb - ga != (a - b) / Rational(2);
}

}  // namespace detail

/// Scan g on `resolution` grid cells and bisect every flagged cell down to
/// width 10^-12. Brackets collapsing to the same point are merged. Reports
/// an anomaly unless exactly three discontinuities are found.
inline EmpiricalBreakpoints empirical_breakpoints(const DTriple& d, std::size_t resolution,
                                                  const DecisionContext& ctx = {}) {
    if (resolution < 8)
        throw std::invalid_argument("empirical_breakpoints: resolution too coarse");
    const Rational width(BigInt(1), pow_int(BigInt(10), 12));
    const Rational merge_gap(BigInt(1), pow_int(BigInt(10), 10));
    std::vector<Rational> grid;
    grid.reserve(resolution + 1);
    for (std::size_t i = 0; i < resolution; ++i)
        grid.emplace_back(static_cast<long long>(i), static_cast<long long>(resolution));
    grid.push_back(Rational(1) - Rational(BigInt(1), pow_int(BigInt(10), 13)));

    auto g = [&](const Rational& t) { return boundary_return_map(d, t, ctx); };
    EmpiricalBreakpoints out;
    Rational ga = g(grid[0]);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        Rational gb = g(grid[i + 1]);
        if (detail::return_map_jump(grid[i], grid[i + 1], ga, gb)) {
            Rational lo = grid[i], hi = grid[i + 1];
            Rational glo = ga, ghi = gb;
            while (hi - lo > width) {
                Rational mid = (lo + hi) / Rational(2);
                Rational gmid = g(mid);
                if (detail::return_map_jump(lo, mid, glo, gmid)) {
                    hi = mid;
                    ghi = std::move(gmid);
                } else if (detail::return_map_jump(mid, hi, gmid, ghi)) {
                    lo = mid;
                    glo = std::move(gmid);
                } else {
                    lo = hi = mid;  // the jump sits exactly on mid
                }
            }
            Rational hit = (lo + hi) / Rational(2);
            if (out.located.empty() || hit - out.located.back() > merge_gap)
                out.located.push_back(std::move(hit));
        }
        ga = std::move(gb);
    }
    if (out.located.size() != 3) {
        out.anomaly = true;
        out.note = "expected 3 discontinuities, found " + std::to_string(out.located.size());
    }
    return out;
}

}  // namespace paclab
