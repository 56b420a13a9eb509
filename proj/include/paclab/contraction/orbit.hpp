#pragma once

#include "paclab/contraction/map.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace paclab {

/// Forward orbit together with the branch applied at each step (1-indexed).
struct Orbit {
    RealValue seed;
    std::vector<RealValue> points;      // points[0] = seed
    std::vector<std::size_t> branches;  // branches[k] carries points[k] to points[k+1]
};

inline Orbit forward_orbit(const PiecewiseAffineContraction& f, const RealValue& x,
                           std::size_t max_steps) {
    Orbit orbit{x, {x}, {}};
    for (std::size_t k = 0; k < max_steps; ++k) {
        std::size_t b = f.branch_of(orbit.points.back());
        orbit.branches.push_back(b);
        orbit.points.push_back(orbit.points.back().affine_image(f.slope(), f.intercept(b)));
    }
    return orbit;
}

/// Composition of branch formulas along a word, itself affine: x -> scale*x + shift.
struct AffineWord {
    Rational scale{1};
    Rational shift{0};

    Rational apply(const Rational& x) const { return scale * x + shift; }

    /// Unique fixed point; the scale of any nonempty word is +-beta^-p, never 1.
    Rational fixed_point() const {
        if (scale == Rational(1)) throw std::logic_error("AffineWord: scale 1 has no unique fixed point");
        return shift / (Rational(1) - scale);
    }
};

inline AffineWord compose_branches(const PiecewiseAffineContraction& f,
                                   const std::vector<std::size_t>& word) {
    AffineWord w;
    for (std::size_t b : word) {
        w.scale = f.slope() * w.scale;
        w.shift = f.slope() * w.shift + f.intercept(b);
    }
    return w;
}

enum class CycleStatus { Cycle, NoCycleWithinBound, Undecidable };

struct CycleResult {
    CycleStatus status = CycleStatus::NoCycleWithinBound;
    std::size_t preperiod = 0;
    std::vector<Rational> cycle;  // f-order, rotated so the least point comes first
    /// Cycle {1}: the attracting endpoint, reachable in the limit only; 1 is
    /// outside the half-open domain, so f does not literally act on it.
    bool boundary_fixed_point = false;
    /// True when the orbit landed on the cycle exactly (set-membership hit).
    bool exact_revisit = false;
    std::string note;
};

namespace detail {

inline void rotate_to_least(std::vector<Rational>& cycle) {
    auto m = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), m, cycle.end());
}

/// What a certification attempt learned. Dead marks a word that can never
/// certify (properties of the word alone), so it is skipped forever; Retry
/// marks a failure that later, closer orbit points can cure.
enum class ProbeOutcome { NotDoubled, Dead, Retry, Found };

/// Certified periodic-itinerary analysis. The orbit's branch word over the
/// last 2p steps reads w twice, so the orbit provably sat inside w's branches
/// at offsets that contract by 1/beta per step around the fixed ring of the
/// w-composition. The observed window already bounds every future offset on
/// its near edge; certifying the far edge of each ring value (on the side the
/// orbit approaches from) then pins every future branch decision, so the tail
/// follows w forever and converges to the ring.
struct ClosureAttempt {
    const PiecewiseAffineContraction& f;
    const std::vector<Rational>& points;
    const std::vector<std::size_t>& trace;

    ProbeOutcome try_period(std::size_t p, std::set<std::vector<std::size_t>>& dead_words,
                            std::optional<CycleResult>& result) const {
        const std::size_t len = trace.size();
        if (len < 2 * p) return ProbeOutcome::NotDoubled;
        const std::size_t k0 = len - 2 * p;
        for (std::size_t j = 0; j < p; ++j)
            if (trace[k0 + j] != trace[k0 + p + j]) return ProbeOutcome::NotDoubled;

        std::vector<std::size_t> word(trace.begin() + static_cast<std::ptrdiff_t>(k0),
                                      trace.begin() + static_cast<std::ptrdiff_t>(k0 + p));
        if (dead_words.count(word)) return ProbeOutcome::Dead;
        auto dead = [&] {
            dead_words.insert(std::move(word));
            return ProbeOutcome::Dead;
        };

        Rational z_star = compose_branches(f, word).fixed_point();
        if (z_star == Rational(1)) {
            ProbeOutcome bc = boundary_case(word, k0, result);
            return bc == ProbeOutcome::Dead ? dead() : bc;
        }
        if (z_star < Rational(0) || z_star > Rational(1)) return dead();

        // The limit ring under the word's own branch formulas. The map's real
        // branch may disagree where a ring value sits exactly on an edge; the
        // side checks below and the final cyclicity check cover that, so no
        // branch lookups here.
        std::vector<Rational> ring{z_star};
        for (std::size_t j = 0; j < p; ++j) {
            Rational next = f.slope() * ring[j] + f.intercept(word[j]);
            if (next < Rational(0) || next >= Rational(1)) return dead();
            ring.push_back(std::move(next));
        }
        if (ring[p] != z_star) return dead();

        Rational offset = points[k0] - z_star;
        if (offset.is_zero()) return ProbeOutcome::Retry;  // exact-revisit logic owns this
        ProbeOutcome edges = far_edges_hold(word, ring, offset.sign());
        if (edges != ProbeOutcome::Found) return edges == ProbeOutcome::Dead ? dead() : edges;

        // Distinct limit values in visiting order.
        std::size_t q = p;
        for (std::size_t cand = 1; cand < p; ++cand) {
            if (p % cand != 0) continue;
            bool periodic = true;
            for (std::size_t j = 0; j < p && periodic; ++j)
                periodic = ring[j] == ring[(j + cand) % p];
            if (periodic) { q = cand; break; }
        }
        std::vector<Rational> cycle(ring.begin(), ring.begin() + static_cast<std::ptrdiff_t>(q));

        // The limit must be a cycle of the map itself, not merely of the word
        // formulas, for the result to mean what it claims.
        bool edge_touch = false;
        try {
            for (std::size_t j = 0; j < q; ++j) {
                if (f.branch_of(RealValue(cycle[j])) != word[j]) edge_touch = true;
                if (f.evaluate(cycle[j]) != ring[j + 1]) return dead();
            }
        } catch (const UndecidableError&) {
            return ProbeOutcome::Retry;
        } catch (const std::domain_error&) {
            return dead();
        }

        CycleResult out;
        out.status = CycleStatus::Cycle;
        out.cycle = std::move(cycle);
        out.preperiod = first_consistent_index(k0, p);
        rotate_to_least(out.cycle);
        out.note = "certified periodic itinerary, word length " + std::to_string(p) +
                   ", cycle length " + std::to_string(q);
        if (edge_touch) out.note += "; limit ring touches a branch edge";
        result = std::move(out);
        return ProbeOutcome::Found;
    }

private:
    /// Fixed point exactly 1: only the all-top word with positive slope and
    /// image sup 1 reaches it. The top branch then maps itself into itself
    /// climbing toward 1, and the orbit was observed inside it, so no further
    /// check is needed.
    ProbeOutcome boundary_case(const std::vector<std::size_t>& word, std::size_t k0,
                               std::optional<CycleResult>& result) const {
        const std::size_t n = f.branch_count();
        const std::size_t p = word.size();
        bool possible = f.slope_sign() > 0 &&
                        f.intercept(n) == Rational(1) - Rational(1, f.beta());
        if (possible)
            for (std::size_t b : word)
                if (b != n) { possible = false; break; }
        if (!possible) return ProbeOutcome::Dead;
        CycleResult out;
        out.status = CycleStatus::Cycle;
        out.cycle = {Rational(1)};
        out.boundary_fixed_point = true;
        out.preperiod = first_consistent_index(k0, p);
        out.note = "attracting boundary point; 1 is outside the half-open domain";
        result = std::move(out);
        return ProbeOutcome::Found;
    }

    /// The orbit point at phase j sits at signed offset side_0 * slope_sign^j
    /// * d/beta^j from ring[j]. The observed doubled window already keeps each
    /// such offset inside its branch on the near side, and later offsets only
    /// shrink, so the one condition left is that shrinking toward the ring
    /// value never crosses the far edge: the ring value must not lie beyond
    /// the edge opposite its approach side. Those conditions depend on the
    /// word alone, so a violation is permanent.
    ProbeOutcome far_edges_hold(const std::vector<std::size_t>& word,
                                const std::vector<Rational>& ring, int side) const {
        const std::size_t p = word.size();
        const std::size_t span = f.slope_sign() < 0 ? 2 * p : p;
        for (std::size_t j = 0; j < span; ++j) {
            const Rational& z = ring[j % p];
            std::size_t b = word[j % p];
            CompareResult c = side > 0 ? compare(RealValue(z), f.breakpoints()[b - 1])
                                       : compare(RealValue(z), f.breakpoints()[b]);
            if (c == CompareResult::Undecidable) return ProbeOutcome::Retry;
            if (side > 0 ? c == CompareResult::Less : c == CompareResult::Greater)
                return ProbeOutcome::Dead;
            side *= f.slope_sign();
        }
        return ProbeOutcome::Found;
    }

    /// Earliest index from which the observed branch word is already periodic.
    std::size_t first_consistent_index(std::size_t k0, std::size_t p) const {
        std::size_t e = k0;
        while (e > 0 && trace[e - 1] == trace[e - 1 + p]) --e;
        return e;
    }
};

}  // namespace detail

/// Eventual-cycle search from a rational seed. Exact equality revisits and
/// certified periodic itineraries both count as proof; maps with stream
/// breakpoints additionally accept an epsilon-revisit confirmed by one full
/// loop, since their orbits can converge to a cycle no exact test ever hits.
inline CycleResult detect_cycle(const PiecewiseAffineContraction& f, const RealValue& seed,
                                std::size_t max_steps,
                                const Rational& epsilon = Rational(1, pow_int(10, 12))) {
    if (!seed.is_rational())
        throw std::invalid_argument("detect_cycle: seed must be rational");
    constexpr std::size_t kPeriodCap = 512;
    const bool tolerance_mode = f.has_stream_breakpoints();

    std::vector<Rational> points{seed.as_rational()};
    std::vector<std::size_t> trace;
    std::map<Rational, std::size_t> seen;
    detail::ClosureAttempt closure{f, points, trace};
    std::set<std::vector<std::size_t>> dead_words;
    std::map<std::size_t, std::size_t> defer_until;  // period -> earliest retry length

    for (std::size_t k = 0;; ++k) {
        auto [it, fresh] = seen.emplace(points.back(), k);
        if (!fresh) {
            CycleResult out;
            out.status = CycleStatus::Cycle;
            out.preperiod = it->second;
            out.cycle.assign(points.begin() + static_cast<std::ptrdiff_t>(it->second),
                             points.end() - 1);
            detail::rotate_to_least(out.cycle);
            out.exact_revisit = true;
            out.note = "exact revisit";
            return out;
        }
        if (k >= max_steps) break;

        try {
            std::size_t b = f.branch_of(RealValue(points.back()));
            trace.push_back(b);
            points.push_back(f.slope() * points.back() + f.intercept(b));
        } catch (const UndecidableError& e) {
            CycleResult out;
            out.status = CycleStatus::Undecidable;
            out.note = e.what();
            return out;
        }

        // Certified-itinerary attempt: cheap last-entry probe per period, full
        // doubled-word check and certificate only on a probe hit. Words proven
        // uncertifiable are never retried; curable failures back off until the
        // orbit has advanced a full period.
        const std::size_t len = trace.size();
        for (std::size_t p = 1; p <= std::min(len / 2, kPeriodCap); ++p) {
            if (trace[len - 1] != trace[len - 1 - p]) continue;
            auto deferred = defer_until.find(p);
            if (deferred != defer_until.end() && len < deferred->second) continue;
            std::optional<CycleResult> hit;
            switch (closure.try_period(p, dead_words, hit)) {
                case detail::ProbeOutcome::Found: return *hit;
                case detail::ProbeOutcome::Retry: defer_until[p] = len + p; break;
                case detail::ProbeOutcome::NotDoubled:
                case detail::ProbeOutcome::Dead: break;
            }
        }

        if (tolerance_mode) {
            const std::size_t k_idx = points.size() - 1;
            const Rational y = points[k_idx];
            for (std::size_t j = k_idx; j-- > 0;) {
                if ((y - points[j]).abs() > epsilon) continue;
                const std::size_t p = k_idx - j;
                // Confirm one full loop within epsilon; iterate locally so the
                // shared orbit stays one-point-per-iteration.
                bool confirmed = true;
                Rational cur = y;
                try {
                    for (std::size_t i = 1; i <= p && confirmed; ++i) {
                        std::size_t b = f.branch_of(RealValue(cur));
                        cur = f.slope() * cur + f.intercept(b);
                        if ((cur - points[j + i]).abs() > epsilon) confirmed = false;
                    }
                } catch (const UndecidableError&) {
                    confirmed = false;
                }
                if (!confirmed) continue;
                CycleResult out;
                out.status = CycleStatus::Cycle;
                out.cycle.assign(points.begin() + static_cast<std::ptrdiff_t>(j),
                                 points.begin() + static_cast<std::ptrdiff_t>(k_idx));
                out.preperiod = j;
                for (std::size_t e = 0; e < j; ++e) {
                    bool near = false;
                    for (const Rational& c : out.cycle)
                        if ((points[e] - c).abs() <= epsilon) { near = true; break; }
                    if (near) { out.preperiod = e; break; }
                }
                detail::rotate_to_least(out.cycle);
                out.note = "tolerance-mode revisit confirmed by a full loop";
                return out;
            }
        }
    }

    CycleResult out;
    out.status = CycleStatus::NoCycleWithinBound;
    out.note = "no cycle within " + std::to_string(max_steps) + " steps";
    return out;
}

}  // namespace paclab
