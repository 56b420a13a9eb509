#pragma once

#include "paclab/betadyn/transforms.hpp"
#include "paclab/contraction/map.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace paclab {

/// Side-by-side run of the preimage chain of a point and the matching
/// expanding transformation (positive slope pairs with t_beta, negative with
/// t_neg_beta). The two must agree step for step while preimages exist; the
/// chain's final point must sit in an image gap once they stop.
struct BackwardTransformReport {
    Rational start;
    std::vector<Rational> chain;  // chain[k] is the k-fold preimage; chain[0] = start
    bool died = false;            // no further preimage
    std::size_t death_index = 0;  // first k with empty preimage (== chain length)
    bool death_point_in_gap = false;
    /// The transform applied once more at the death point, and whether that
    /// value lies in the image; recorded as data, the theory fixes neither.
    std::optional<Rational> transform_past_death;
    bool transform_past_death_in_image = false;
    bool cyclic = false;  // chain revisited a point exactly
    bool bound_reached = false;
};

/// Throws std::logic_error on any disagreement: a mismatch between the
/// preimage chain and the transformation, or a dead chain whose final point
/// the independently computed gap list fails to contain.
inline BackwardTransformReport backward_equals_transform(const PiecewiseAffineContraction& f,
                                                         const Rational& start,
                                                         std::size_t max_steps) {
    if (f.has_stream_breakpoints())
        throw std::invalid_argument("backward_equals_transform: map must have rational breakpoints");
    detail::require_unit_interval(start, "backward_equals_transform");

    BackwardTransformReport report;
    report.start = start;
    report.chain.push_back(start);
    std::set<Rational> visited{start};
    const ImageDecomposition img = f.image_components();
    auto in_gap = [&](const Rational& y) {
        for (const ExactInterval& g : img.gaps)
            if (interval_contains(g, RealValue(y))) return true;
        return false;
    };
    auto transform = [&](const Rational& y) {
        return f.slope_sign() > 0 ? t_beta(y, f.beta()) : t_neg_beta(y, f.beta());
    };

    for (std::size_t k = 0; k < max_steps; ++k) {
        const Rational y = report.chain.back();
        std::optional<RealValue> pre = f.preimage(RealValue(y));
        if (!pre) {
            report.died = true;
            report.death_index = report.chain.size();
            report.death_point_in_gap = in_gap(y);
            if (!report.death_point_in_gap)
                throw std::logic_error(
                    "backward_equals_transform: dead chain point not in any image gap");
            Rational past = transform(y);
            report.transform_past_death = past;
            report.transform_past_death_in_image = !in_gap(past);
            return report;
        }
        Rational z = pre->as_rational();
        if (z != transform(y))
            throw std::logic_error(
                "backward_equals_transform: preimage disagrees with the transformation");
        report.chain.push_back(z);
        if (!visited.insert(z).second) {
            report.cyclic = true;
            return report;
        }
    }
    report.bound_reached = true;
    return report;
}

}  // namespace paclab
