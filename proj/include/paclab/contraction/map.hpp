#pragma once

#include "paclab/exact/real_value.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace paclab {

/// Interval with exact endpoints and explicit endpoint membership.
struct ExactInterval {
    RealValue lo, hi;
    bool lo_open = false;
    bool hi_open = true;

    RealValue width() const { return subtract(hi, lo); }
};

/// Membership test; throws UndecidableError when not resolvable in budget.
inline bool interval_contains(const ExactInterval& iv, const RealValue& x,
                              std::size_t max_digits = 2'000) {
    CompareResult lo = compare(x, iv.lo, max_digits);
    if (lo == CompareResult::Undecidable)
        throw UndecidableError("interval_contains: lower end undecidable");
    if (lo == CompareResult::Less || (lo == CompareResult::Equal && iv.lo_open)) return false;
    CompareResult hi = compare(x, iv.hi, max_digits);
    if (hi == CompareResult::Undecidable)
        throw UndecidableError("interval_contains: upper end undecidable");
    return hi == CompareResult::Less || (hi == CompareResult::Equal && !iv.hi_open);
}

struct ImageDecomposition {
    std::vector<ExactInterval> components;  // merged branch images, left to right
    std::vector<ExactInterval> gaps;        // complement within [0,1), left to right
};

/// n-branch map of [0,1) with uniform slope +1/beta or -1/beta. Branch i
/// (1-indexed) acts on [x_{i-1}, x_i) as x -> slope*x + a_i. The canonical
/// construction takes integers alpha_i in {1..beta}: a_i = (alpha_i - 1)/beta
/// for positive slope, a_i = alpha_i / beta for negative slope (which needs
/// alpha_1 != beta so the image of 0 stays below 1). Arbitrary rational
/// intercepts are also accepted when every branch image stays inside [0,1).
/// Immutable and freely shareable across threads.
class PiecewiseAffineContraction {
public:
    static PiecewiseAffineContraction build_map(const BigInt& beta, int slope_sign,
                                                std::vector<RealValue> breakpoints,
                                                const std::vector<BigInt>& alphas) {
        PiecewiseAffineContraction f(beta, slope_sign, std::move(breakpoints));
        if (alphas.size() != f.branch_count())
            throw std::invalid_argument("build_map: need one alpha per branch");
        for (const BigInt& a : alphas)
            if (a < 1 || a > beta)
                throw std::invalid_argument("build_map: alpha outside {1..beta}");
        if (slope_sign < 0 && alphas.front() == beta)
            throw std::invalid_argument("build_map: negative slope requires alpha_1 != beta");
        f.alphas_ = alphas;
        f.canonical_ = true;
        for (const BigInt& a : alphas)
            f.intercepts_.push_back(slope_sign > 0 ? Rational(a - 1, beta) : Rational(a, beta));
        return f;
    }

    static PiecewiseAffineContraction build_map_general(const BigInt& beta, int slope_sign,
                                                        std::vector<RealValue> breakpoints,
                                                        std::vector<Rational> intercepts) {
        PiecewiseAffineContraction f(beta, slope_sign, std::move(breakpoints));
        if (intercepts.size() != f.branch_count())
            throw std::invalid_argument("build_map: need one intercept per branch");
        f.canonical_ = false;
        f.intercepts_ = std::move(intercepts);
        f.check_images_within_unit();
        return f;
    }

    std::size_t branch_count() const { return breakpoints_.size() - 1; }
    const BigInt& beta() const { return beta_; }
    int slope_sign() const { return slope_sign_; }
    Rational slope() const { return Rational(BigInt(slope_sign_), beta_); }
    const std::vector<RealValue>& breakpoints() const { return breakpoints_; }
    const Rational& intercept(std::size_t branch) const { return intercepts_.at(branch - 1); }

    /// True when built from the alpha grid (slope-sign theorem hypotheses).
    bool canonical_form() const { return canonical_; }
    const std::vector<BigInt>& alphas() const {
        if (!canonical_) throw std::logic_error("alphas: map built from raw intercepts");
        return alphas_;
    }

    bool has_stream_breakpoints() const {
        for (const RealValue& b : breakpoints_)
            if (!b.is_rational()) return true;
        return false;
    }

    /// 1-indexed branch containing x; branches are half-open on the right.
    std::size_t branch_of(const RealValue& x, std::size_t max_digits = 2'000) const {
        CompareResult at_zero = compare(x, breakpoints_.front(), max_digits);
        if (at_zero == CompareResult::Less)
            throw std::domain_error("branch_of: point below 0");
        if (at_zero == CompareResult::Undecidable)
            throw UndecidableError("branch_of: comparison against 0 undecidable");
        for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
            CompareResult c = compare(x, breakpoints_[i], max_digits);
            if (c == CompareResult::Less) return i;
            if (c == CompareResult::Undecidable)
                throw UndecidableError("branch_of: breakpoint comparison undecidable");
        }
        throw std::domain_error("branch_of: point not below 1");
    }

    RealValue evaluate(const RealValue& x, std::size_t max_digits = 2'000) const {
        return apply_branch(branch_of(x, max_digits), x);
    }

    /// The affine formula of one branch, applied without membership checks.
    /// Lets callers map interval endpoints that sit on the branch boundary.
    RealValue branch_formula(std::size_t branch, const RealValue& x) const {
        return apply_branch(branch, x);
    }

    Rational evaluate(const Rational& x) const {
        return evaluate(RealValue(x)).as_rational();
    }

    /// Image of branch i as an interval: the right-open branch domain maps to
    /// a right-open interval for positive slope, left-open for negative.
    ExactInterval branch_image(std::size_t branch) const {
        RealValue at_left = apply_branch(branch, breakpoints_[branch - 1]);
        RealValue at_right = apply_branch(branch, breakpoints_[branch]);
        if (slope_sign_ > 0) return {std::move(at_left), std::move(at_right), false, true};
        return {std::move(at_right), std::move(at_left), true, false};
    }

    /// Branch images merged left to right, plus their complement in [0,1).
    ImageDecomposition image_components(std::size_t max_digits = 2'000) const {
        std::vector<ExactInterval> imgs;
        for (std::size_t i = 1; i <= branch_count(); ++i) imgs.push_back(branch_image(i));
        sort_by_lower_end(imgs, max_digits);

        ImageDecomposition out;
        for (ExactInterval& iv : imgs) {
            if (!out.components.empty()) {
                ExactInterval& last = out.components.back();
                CompareResult c = require_decided(compare(iv.lo, last.hi, max_digits));
                bool joined = c == CompareResult::Less ||
                              (c == CompareResult::Equal && !(iv.lo_open && last.hi_open));
                if (joined) {
                    CompareResult h = require_decided(compare(iv.hi, last.hi, max_digits));
                    if (h == CompareResult::Greater ||
                        (h == CompareResult::Equal && last.hi_open && !iv.hi_open)) {
                        last.hi = iv.hi;
                        last.hi_open = iv.hi_open;
                    }
                    continue;
                }
            }
            out.components.push_back(std::move(iv));
        }

        RealValue cursor{Rational(0)};
        bool cursor_open = false;  // 0 itself belongs to [0,1)
        for (const ExactInterval& comp : out.components) {
            CompareResult c = require_decided(compare(cursor, comp.lo, max_digits));
            // A gap needs either room between the ends, or one uncovered point.
            if (c == CompareResult::Less || (c == CompareResult::Equal && !cursor_open && comp.lo_open))
                out.gaps.push_back({cursor, comp.lo, cursor_open, !comp.lo_open});
            cursor = comp.hi;
            cursor_open = !comp.hi_open;
        }
        CompareResult tail = require_decided(compare(cursor, Rational(1), max_digits));
        if (tail == CompareResult::Less)
            out.gaps.push_back({cursor, RealValue(Rational(1)), cursor_open, true});
        return out;
    }

    /// True when some branch maps a point of its domain onto y.
    bool in_image(const RealValue& y, std::size_t max_digits = 2'000) const {
        return preimage_candidates(y, max_digits) > 0;
    }

    /// The unique z with f(z) = y, if any. Throws when two branches claim y,
    /// which no canonical-form map produces.
    std::optional<RealValue> preimage(const RealValue& y, std::size_t max_digits = 2'000) const {
        std::optional<RealValue> found;
        preimage_candidates(y, max_digits, &found);
        return found;
    }

private:
    PiecewiseAffineContraction(const BigInt& beta, int slope_sign,
                               std::vector<RealValue> breakpoints)
        : beta_(beta), slope_sign_(slope_sign), breakpoints_(std::move(breakpoints)) {
        if (beta_ < 2) throw std::invalid_argument("build_map: beta must be an integer >= 2");
        if (slope_sign_ != 1 && slope_sign_ != -1)
            throw std::invalid_argument("build_map: slope sign must be +1 or -1");
        if (breakpoints_.size() < 3)
            throw std::invalid_argument("build_map: need at least two branches");
        const RealValue& first = breakpoints_.front();
        const RealValue& last = breakpoints_.back();
        if (!first.is_rational() || !first.as_rational().is_zero())
            throw std::invalid_argument("build_map: first breakpoint must be exactly 0");
        if (!last.is_rational() || last.as_rational() != Rational(1))
            throw std::invalid_argument("build_map: last breakpoint must be exactly 1");
        for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
            CompareResult c = compare(breakpoints_[i], breakpoints_[i + 1]);
            if (c == CompareResult::Undecidable)
                throw UndecidableError("build_map: breakpoint order undecidable");
            if (c != CompareResult::Less)
                throw std::invalid_argument("build_map: breakpoints must increase strictly");
        }
    }

    RealValue apply_branch(std::size_t branch, const RealValue& x) const {
        return x.affine_image(slope(), intercepts_.at(branch - 1));
    }

    void check_images_within_unit() const {
        for (std::size_t i = 1; i <= branch_count(); ++i) {
            ExactInterval img = branch_image(i);
            // The lower end may touch 0 either way; the upper end may touch 1
            // only when excluded from the image.
            CompareResult lo = require_decided(compare(img.lo, Rational(0)));
            CompareResult hi = require_decided(compare(img.hi, Rational(1)));
            bool lo_ok = lo != CompareResult::Less;
            bool hi_ok = hi == CompareResult::Less ||
                         (hi == CompareResult::Equal && img.hi_open);
            if (!lo_ok || !hi_ok)
                throw std::invalid_argument("build_map: branch image escapes [0,1)");
        }
    }

    static CompareResult require_decided(CompareResult c) {
        if (c == CompareResult::Undecidable)
            throw UndecidableError("image_components: endpoint comparison undecidable");
        return c;
    }

    static void sort_by_lower_end(std::vector<ExactInterval>& ivs, std::size_t max_digits) {
        // Insertion sort with explicit three-way comparisons: branch counts are
        // tiny and each comparison may be expensive, so no std::sort predicate.
        for (std::size_t i = 1; i < ivs.size(); ++i)
            for (std::size_t j = i; j > 0; --j) {
                CompareResult c = require_decided(compare(ivs[j].lo, ivs[j - 1].lo, max_digits));
                bool before = c == CompareResult::Less ||
                              (c == CompareResult::Equal && !ivs[j].lo_open && ivs[j - 1].lo_open);
                if (!before) break;
                std::swap(ivs[j], ivs[j - 1]);
            }
    }

    /// Counts branches whose affine inverse of y lands in their own domain;
    /// optionally reports the (unique) witness and enforces uniqueness.
    std::size_t preimage_candidates(const RealValue& y, std::size_t max_digits,
                                    std::optional<RealValue>* witness = nullptr) const {
        std::size_t hits = 0;
        for (std::size_t i = 1; i <= branch_count(); ++i) {
            // Invert z -> slope*z + a_i.
            Rational scale(BigInt(slope_sign_) * beta_);
            RealValue z = y.affine_image(scale, intercepts_[i - 1] * -scale);
            ExactInterval domain{breakpoints_[i - 1], breakpoints_[i], false, true};
            if (!interval_contains(domain, z, max_digits)) continue;
            ++hits;
            if (witness) {
                if (*witness) throw std::logic_error("preimage: two branches map onto the point");
                *witness = std::move(z);
            } else {
                break;  // existence is enough
            }
        }
        return hits;
    }

    BigInt beta_;
    int slope_sign_;
    std::vector<RealValue> breakpoints_;
    std::vector<Rational> intercepts_;
    std::vector<BigInt> alphas_;
    bool canonical_ = false;
};

}  // namespace paclab
