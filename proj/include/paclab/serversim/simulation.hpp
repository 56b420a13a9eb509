#pragma once

#include "paclab/exact/rational.hpp"
#include "paclab/exact/real_value.hpp"
#include "paclab/serversim/parameters.hpp"
#include "paclab/serversim/simplex.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace paclab {

/// Raised when a switch decision cannot be certified within the digit budget.
class PrecisionExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Digit budget for switch decisions against digit-stream ratios. Comparisons
/// start from `start_digits` and double until certain or `max_digits` is hit.
struct DecisionContext {
    std::size_t start_digits = 60;
    std::size_t max_digits = 4096;
};

namespace detail {

/// Certified order of d*a versus b for a, b >= 0 rational and d > 0.
/// Stream-valued d is compared through enclosure refinement; Equal is only
/// reachable exactly, never by approximation.
inline CompareResult scaled_compare(const RealValue& d, const Rational& a, const Rational& b,
                                    const DecisionContext& ctx) {
    if (a.is_zero()) {
        if (b.is_zero()) return CompareResult::Equal;
        return b.sign() > 0 ? CompareResult::Less : CompareResult::Greater;
    }
    if (d.is_rational()) {
        Rational p = d.as_rational() * a;
        if (p == b) return CompareResult::Equal;
        return p > b ? CompareResult::Greater : CompareResult::Less;
    }
    std::size_t digits = std::max<std::size_t>(ctx.start_digits, 1);
    for (;;) {
        Enclosure e = d.enclosure(digits);
        Rational lo = e.lo * a;
        Rational hi = e.hi * a;
        if (lo > b || (lo == b && e.lo_open)) return CompareResult::Greater;
        if (hi < b || (hi == b && e.hi_open)) return CompareResult::Less;
        if (lo == b && hi == b) return CompareResult::Equal;
        if (digits >= ctx.max_digits)
            throw PrecisionExhausted("switch decision undecided at " + std::to_string(digits) +
                                     " digits");
        digits = std::min(digits * 2, ctx.max_digits);
    }
}

}  // namespace detail

/// Tank served after tank `emptied` runs dry. The two candidates are ranked
/// by inflow-weighted volume, which reduces to one comparison against the
/// ratio d_emptied; ties go to the lower tank index.
inline std::size_t switch_target(const SimplexState& v, std::size_t emptied, const DTriple& d,
                                 const DecisionContext& ctx = {}) {
    if (emptied < 1 || emptied > 3)
        throw std::out_of_range("switch_target: tank index must be 1..3");
    if (!v.coord(emptied).is_zero())
        throw std::invalid_argument("switch_target: named tank is not empty");
    switch (emptied) {
        case 1:
            return detail::scaled_compare(d.d1, v.v3, v.v2, ctx) == CompareResult::Greater ? 3 : 2;
        case 2:
            return detail::scaled_compare(d.d2, v.v1, v.v3, ctx) == CompareResult::Less ? 3 : 1;
        default:
            return detail::scaled_compare(d.d3, v.v2, v.v1, ctx) == CompareResult::Greater ? 2 : 1;
    }
}

/// One drained segment: the served tank runs from its starting volume to
/// empty while every other tank gains half that volume.
struct DrainResult {
    SimplexState state;
    Rational duration;
};

/// Drain the served tank to zero. Net rates are -2/3 on the served tank and
/// +1/3 elsewhere, so the duration is (3/2) times the served volume and the
/// result stays exact.
inline DrainResult drain_step(const SimplexState& v, std::size_t served) {
    if (served < 1 || served > 3)
        throw std::out_of_range("drain_step: tank index must be 1..3");
    const Rational& amount = v.coord(served);
    if (amount.is_zero()) throw std::invalid_argument("drain_step: served tank already empty");
    Rational half = amount / Rational(2);
    Rational w1 = served == 1 ? Rational(0) : v.v1 + half;
    Rational w2 = served == 2 ? Rational(0) : v.v2 + half;
    Rational w3 = served == 3 ? Rational(0) : v.v3 + half;
    return {SimplexState(std::move(w1), std::move(w2), std::move(w3)),
            Rational(3, 2) * amount};
}

/// One Poincare step on the boundary of the simplex: pick the next served
/// tank at the current empty tank, then drain it.
struct PoincareResult {
    SimplexState state;
    std::size_t served = 0;
    Rational duration;
};

inline PoincareResult poincare(const SimplexState& v, const DTriple& d,
                               const DecisionContext& ctx = {}) {
    std::size_t served = switch_target(v, v.emptied_tank(), d, ctx);
    DrainResult step = drain_step(v, served);
    return {std::move(step.state), served, std::move(step.duration)};
}

struct Segment {
    SimplexState start;
    std::size_t served = 0;
    Rational duration;
    SimplexState end;
};

/// Piecewise-linear flow record. `event_times[k]` is the exact cumulative
/// time at the end of segment k.
struct Trajectory {
    SimplexState initial;
    std::vector<Segment> segments;
    std::vector<Rational> event_times;
};

/// Flow from `v0` through `n_events` Poincare steps. A boundary start must
/// not name a served tank (the switch rule decides); an interior start must
/// name one, and draining it to the boundary is recorded as an extra leading
/// segment.
inline Trajectory trajectory(const SimplexState& v0, const DTriple& d, std::size_t n_events,
                             const DecisionContext& ctx = {},
                             std::optional<std::size_t> initial_served = std::nullopt) {
    Trajectory traj;
    traj.initial = v0;
    SimplexState cur = v0;
    Rational now(0);
    auto push = [&](std::size_t served) {
        DrainResult step = drain_step(cur, served);
        now += step.duration;
        traj.segments.push_back({cur, served, step.duration, step.state});
        traj.event_times.push_back(now);
        cur = std::move(step.state);
    };
    if (v0.on_boundary()) {
        if (initial_served)
            throw std::invalid_argument(
                "trajectory: boundary start determines the served tank by the switch rule");
    } else {
        if (!initial_served)
            throw std::invalid_argument("trajectory: interior start requires a served tank");
        push(*initial_served);
    }
    for (std::size_t k = 0; k < n_events; ++k)
        push(switch_target(cur, cur.emptied_tank(), d, ctx));
    return traj;
}

/// One plot row of a sampled trajectory.
struct SampleRow {
    Rational t;
    Rational v1, v2, v3;
    std::size_t served = 0;
};

/// Exact linear interpolation inside each segment: `samples_per_segment`
/// evenly spaced rows per segment plus one closing row at the final state.
inline std::vector<SampleRow> sample_rows(const Trajectory& traj,
                                          std::size_t samples_per_segment) {
    if (samples_per_segment == 0)
        throw std::invalid_argument("sample_rows: need at least one sample per segment");
    std::vector<SampleRow> rows;
    Rational t0(0);
    for (const Segment& seg : traj.segments) {
        for (std::size_t j = 0; j < samples_per_segment; ++j) {
            Rational tau = seg.duration * Rational(static_cast<long long>(j),
                                                   static_cast<long long>(samples_per_segment));
            Rational gain = tau / Rational(3);
            Rational v1 = seg.served == 1 ? seg.start.v1 - Rational(2) * gain : seg.start.v1 + gain;
            Rational v2 = seg.served == 2 ? seg.start.v2 - Rational(2) * gain : seg.start.v2 + gain;
            Rational v3 = seg.served == 3 ? seg.start.v3 - Rational(2) * gain : seg.start.v3 + gain;
            rows.push_back({t0 + tau, std::move(v1), std::move(v2), std::move(v3), seg.served});
        }
        t0 += seg.duration;
    }
    if (!traj.segments.empty()) {
        const Segment& last = traj.segments.back();
        rows.push_back({t0, last.end.v1, last.end.v2, last.end.v3, last.served});
    }
    return rows;
}

/// Cycle detection over the boundary states of the Poincare orbit. States
/// are exact rationals even for stream-valued ratios, so a repeated state
/// certifies a genuine cycle (exact = true). Orbits merely attracted to a
/// cycle have denominators growing with every halving and never revisit
/// exactly; those are caught by an epsilon-revisit confirmed over one full
/// period (exact = false), reported as the last period's worth of states.
struct CycleEstimate {
    std::vector<SimplexState> preperiod;
    std::vector<SimplexState> cycle;
    bool found = false;
    bool exact = false;
};

namespace detail {

inline Rational state_distance(const SimplexState& a, const SimplexState& b) {
    Rational m = (a.v1 - b.v1).abs();
    Rational m2 = (a.v2 - b.v2).abs();
    Rational m3 = (a.v3 - b.v3).abs();
    if (m2 > m) m = m2;
    if (m3 > m) m = m3;
    return m;
}

}  // namespace detail

inline CycleEstimate poincare_cycle(const SimplexState& v0, const DTriple& d,
                                    std::size_t max_events, const DecisionContext& ctx = {},
                                    std::optional<std::size_t> initial_served = std::nullopt,
                                    const Rational& epsilon = Rational(1, pow_int(10, 12))) {
    SimplexState cur = v0;
    if (!v0.on_boundary()) {
        if (!initial_served)
            throw std::invalid_argument("poincare_cycle: interior start requires a served tank");
        cur = drain_step(cur, *initial_served).state;
    }
    std::vector<SimplexState> states;
    std::map<SimplexState, std::size_t> seen;
    for (std::size_t k = 0; k <= max_events; ++k) {
        auto hit = seen.find(cur);
        if (hit != seen.end()) {
            CycleEstimate est;
            est.preperiod.assign(states.begin(), states.begin() + hit->second);
            est.cycle.assign(states.begin() + hit->second, states.end());
            est.found = est.exact = true;
            return est;
        }
        seen.emplace(cur, states.size());
        states.push_back(cur);
        if (k == max_events) break;
        cur = poincare(cur, d, ctx).state;
    }

    // Epsilon revisit at the tail, confirmed by one more full loop compared
    // against the recorded orbit without disturbing it.
    const std::size_t len = states.size();
    for (std::size_t p = 1; p + 1 <= len && p <= 512; ++p) {
        if (detail::state_distance(states[len - 1], states[len - 1 - p]) > epsilon) continue;
        SimplexState probe = states[len - 1];
        bool confirmed = true;
        for (std::size_t i = 1; i <= p && confirmed; ++i) {
            probe = poincare(probe, d, ctx).state;
            if (detail::state_distance(probe, states[len - 1 - p + i]) > epsilon)
                confirmed = false;
        }
        if (!confirmed) continue;
        CycleEstimate est;
        est.preperiod.assign(states.begin(), states.end() - static_cast<std::ptrdiff_t>(p));
        est.cycle.assign(states.end() - static_cast<std::ptrdiff_t>(p), states.end());
        est.found = true;
        return est;
    }
    return {std::move(states), {}, false, false};
}

}  // namespace paclab
