#pragma once

#include "paclab/contraction/orbit.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace paclab {

enum class ChainStatus { Dead, Cyclic, DepthExceeded };

/// Preimage chain of one interior breakpoint: points[k] is the k-fold
/// preimage, so f(points[k+1]) = points[k] exactly.
struct BreakpointChain {
    Rational breakpoint;
    std::vector<Rational> points;
    ChainStatus status = ChainStatus::Dead;
};

struct BackwardClosure {
    std::vector<BreakpointChain> chains;
    std::vector<Rational> H;  // distinct chain points inside (0,1), ascending

    /// Every chain closed off exactly; a finite H is then certain.
    bool conclusive() const {
        for (const BreakpointChain& c : chains)
            if (c.status == ChainStatus::DepthExceeded) return false;
        return true;
    }
};

/// All preimages of the interior breakpoints, chased until each chain dies
/// (no preimage), revisits a point exactly, or hits max_depth.
inline BackwardClosure backward_closure(const PiecewiseAffineContraction& f,
                                        std::size_t max_depth = 10'000) {
    if (f.has_stream_breakpoints())
        throw std::invalid_argument("backward_closure: map must have rational breakpoints");

    BackwardClosure closure;
    std::set<Rational> merged;
    for (std::size_t i = 1; i < f.branch_count(); ++i) {
        BreakpointChain chain;
        chain.breakpoint = f.breakpoints()[i].as_rational();
        chain.points.push_back(chain.breakpoint);
        std::set<Rational> visited{chain.breakpoint};
        chain.status = ChainStatus::DepthExceeded;
        while (chain.points.size() <= max_depth) {
            std::optional<RealValue> pre = f.preimage(RealValue(chain.points.back()));
            if (!pre) {
                chain.status = ChainStatus::Dead;
                break;
            }
            Rational z = pre->as_rational();
            if (!visited.insert(z).second) {
                chain.status = ChainStatus::Cyclic;
                break;
            }
            chain.points.push_back(z);
        }
        for (const Rational& p : chain.points)
            if (p > Rational(0) && p < Rational(1)) merged.insert(p);
        closure.chains.push_back(std::move(chain));
    }
    closure.H.assign(merged.begin(), merged.end());
    return closure;
}

/// A point of H was straddled by an interval image: the candidate partition
/// is not f-invariant, so the construction hypothesis failed.
class ConstructionViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Open components of (0,1) minus a finite separating set, with the index map
/// tau sending each component into the component containing its image.
struct QuasiPartition {
    std::vector<std::pair<Rational, Rational>> intervals;  // open, ascending
    std::vector<std::size_t> tau;  // 1-indexed: f(J_s) subset of J_{tau[s-1]}
    std::vector<Rational> G;       // separating points plus 0 and 1, ascending
};

namespace detail {

/// Branch covering an open interval with no breakpoint inside: the branch of
/// the midpoint.
inline std::size_t covering_branch(const PiecewiseAffineContraction& f, const Rational& lo,
                                   const Rational& hi) {
    return f.branch_of(RealValue((lo + hi) / Rational(2)));
}

/// Image endpoints of (lo, hi) under one branch formula, in increasing order.
inline std::pair<Rational, Rational> open_interval_image(const PiecewiseAffineContraction& f,
                                                         std::size_t branch, const Rational& lo,
                                                         const Rational& hi) {
    Rational a = f.branch_formula(branch, RealValue(lo)).as_rational();
    Rational b = f.branch_formula(branch, RealValue(hi)).as_rational();
    return f.slope_sign() > 0 ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace detail

inline QuasiPartition build_partition(const PiecewiseAffineContraction& f,
                                      const std::vector<Rational>& separating) {
    if (f.has_stream_breakpoints())
        throw std::invalid_argument("build_partition: map must have rational breakpoints");
    std::set<Rational> h_set(separating.begin(), separating.end());
    for (const Rational& h : h_set)
        if (h <= Rational(0) || h >= Rational(1))
            throw std::invalid_argument("build_partition: separating points must lie in (0,1)");
    for (std::size_t i = 1; i < f.branch_count(); ++i)
        if (!h_set.count(f.breakpoints()[i].as_rational()))
            throw std::invalid_argument("build_partition: interior breakpoint missing from the set");

    QuasiPartition qp;
    qp.G.push_back(Rational(0));
    qp.G.insert(qp.G.end(), h_set.begin(), h_set.end());
    qp.G.push_back(Rational(1));
    for (std::size_t j = 0; j + 1 < qp.G.size(); ++j)
        qp.intervals.emplace_back(qp.G[j], qp.G[j + 1]);

    for (const auto& [lo, hi] : qp.intervals) {
        std::size_t b = detail::covering_branch(f, lo, hi);
        auto [img_lo, img_hi] = detail::open_interval_image(f, b, lo, hi);
        auto it = std::upper_bound(qp.G.begin(), qp.G.end(), img_lo);
        std::size_t j = static_cast<std::size_t>(it - qp.G.begin()) - 1;
        if (j + 1 >= qp.G.size() || img_hi > qp.G[j + 1])
            throw ConstructionViolation("build_partition: interval image straddles a separating point");
        qp.tau.push_back(j + 1);
    }
    return qp;
}

/// Exact endpoint re-check of f(J_s) within J_tau(s) for every component.
inline bool verify_partition(const PiecewiseAffineContraction& f, const QuasiPartition& qp) {
    if (qp.intervals.size() != qp.tau.size() || qp.intervals.size() + 1 != qp.G.size())
        return false;
    for (std::size_t s = 0; s < qp.intervals.size(); ++s) {
        const auto& [lo, hi] = qp.intervals[s];
        std::size_t t = qp.tau[s];
        if (t < 1 || t > qp.intervals.size()) return false;
        std::size_t b = detail::covering_branch(f, lo, hi);
        auto [img_lo, img_hi] = detail::open_interval_image(f, b, lo, hi);
        const auto& [tlo, thi] = qp.intervals[t - 1];
        if (img_lo < tlo || img_hi > thi) return false;
    }
    return true;
}

/// The finite forward-invariant core: fixed points of the affine compositions
/// around each tau-cycle (one per periodic component), plus the separating
/// set. Every omega-limit point of the map lies in F union G.
struct AttractorReport {
    std::vector<std::vector<std::size_t>> tau_cycles;  // 1-indexed component ids
    std::vector<std::size_t> periodic;                 // union of the cycles, ascending
    BigInt q;                                          // lcm of cycle lengths
    std::vector<Rational> F;                           // cycle-composition fixed points
    std::vector<Rational> G;
    std::vector<std::vector<Rational>> confirmed_cycles;  // filled by confirmed_cycles()
    std::vector<std::string> anomalies;
};

inline AttractorReport attractor_superset(const PiecewiseAffineContraction& f,
                                          const QuasiPartition& qp) {
    const std::size_t m = qp.intervals.size();
    AttractorReport report;
    report.G = qp.G;
    report.q = 1;

    std::set<std::size_t> in_some_cycle;
    for (std::size_t s = 1; s <= m; ++s) {
        std::size_t t = s;
        for (std::size_t i = 0; i < m; ++i) t = qp.tau[t - 1];  // now inside a cycle
        if (in_some_cycle.count(t)) continue;
        std::vector<std::size_t> cycle{t};
        for (std::size_t u = qp.tau[t - 1]; u != t; u = qp.tau[u - 1]) cycle.push_back(u);
        std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
        for (std::size_t u : cycle) in_some_cycle.insert(u);
        report.tau_cycles.push_back(std::move(cycle));
    }
    report.periodic.assign(in_some_cycle.begin(), in_some_cycle.end());

    std::set<Rational> fixed_points;
    for (const std::vector<std::size_t>& cycle : report.tau_cycles) {
        report.q = boost::multiprecision::lcm(report.q, BigInt(cycle.size()));
        std::vector<std::size_t> word;
        for (std::size_t s : cycle) {
            const auto& [lo, hi] = qp.intervals[s - 1];
            word.push_back(detail::covering_branch(f, lo, hi));
        }
        const Rational start = compose_branches(f, word).fixed_point();
        Rational c = start;
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const auto& [lo, hi] = qp.intervals[cycle[i] - 1];
            if (c < lo || c > hi)
                throw std::logic_error(
                    "attractor_superset: cycle fixed point escapes its component closure");
            fixed_points.insert(c);
            c = f.branch_formula(word[i], RealValue(c)).as_rational();
        }
        if (c != start)
            throw std::logic_error("attractor_superset: branch formulas do not close the cycle");
    }
    report.F.assign(fixed_points.begin(), fixed_points.end());
    return report;
}

/// Forward-dynamics sharpening of the superset: the distinct cycles actually
/// reached from every fixed-point candidate and every separating point.
/// Throws if any reached cycle escapes F union G, which would falsify the
/// containment the construction promises.
inline AttractorReport confirmed_cycles(const PiecewiseAffineContraction& f,
                                        const QuasiPartition& qp,
                                        std::size_t max_steps = 10'000) {
    AttractorReport report = attractor_superset(f, qp);
    std::set<Rational> allowed(report.F.begin(), report.F.end());
    allowed.insert(report.G.begin(), report.G.end());

    std::set<std::vector<Rational>> distinct;
    std::vector<Rational> seeds;
    for (const Rational& x : report.F)
        if (x < Rational(1)) seeds.push_back(x);  // 1 itself is outside the domain
    for (const Rational& g : report.G)
        if (g < Rational(1)) seeds.push_back(g);

    for (const Rational& seed : seeds) {
        CycleResult r = detect_cycle(f, RealValue(seed), max_steps);
        if (r.status != CycleStatus::Cycle) {
            report.anomalies.push_back("no cycle reached from " + seed.to_fraction_string() +
                                       ": " + r.note);
            continue;
        }
        for (const Rational& p : r.cycle)
            if (!allowed.count(p))
                throw std::logic_error("confirmed_cycles: reached cycle escapes the superset");
        distinct.insert(r.cycle);
    }
    report.confirmed_cycles.assign(distinct.begin(), distinct.end());
    return report;
}

}  // namespace paclab
