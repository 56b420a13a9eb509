#pragma once

#include "paclab/exact/digit_stream.hpp"
#include "paclab/exact/rational.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace paclab {

/// Interval certain to contain a value; endpoints may be excluded.
struct Enclosure {
    Rational lo, hi;
    bool lo_open = false;
    bool hi_open = false;

    Rational width() const { return hi - lo; }
};

/// True when every point of a lies strictly below every point of b.
inline bool enclosure_below(const Enclosure& a, const Enclosure& b) {
    if (a.hi < b.lo) return true;
    return a.hi == b.lo && (a.hi_open || b.lo_open);
}

namespace detail {

/// Linear-fractional view (a*s + b)/(c*s + d) of a digit stream's value s,
/// with rational coefficients. Closed under post-composition with rational
/// Moebius maps, which is exactly what deferred affine images of contractions
/// and the d <-> breakpoint parameter formulas require. Coefficients are kept
/// normalized (integral, gcd 1, leading sign positive) so algebraically equal
/// views of one stream compare Equal.
struct MobiusStream {
    std::array<BigInt, 4> m;  // a, b, c, d
    DigitStream stream;

    MobiusStream(const Rational& a, const Rational& b, const Rational& c,
                 const Rational& d, DigitStream s)
        : m(), stream(std::move(s)) {
        BigInt lcm = 1;
        for (const Rational* r : {&a, &b, &c, &d})
            lcm = boost::multiprecision::lcm(lcm, r->denominator());
        m = {(a * Rational(lcm)).numerator(), (b * Rational(lcm)).numerator(),
             (c * Rational(lcm)).numerator(), (d * Rational(lcm)).numerator()};
        BigInt g = 0;
        for (const BigInt& x : m) g = boost::multiprecision::gcd(g, x);
        if (g > 1)
            for (BigInt& x : m) x /= g;
        for (const BigInt& x : m) {
            if (x == 0) continue;
            if (x < 0)
                for (BigInt& y : m) y = -y;
            break;
        }
    }

    BigInt determinant() const { return m[0] * m[3] - m[1] * m[2]; }

    Rational apply(const Rational& s) const {
        Rational den = Rational(m[2]) * s + Rational(m[3]);
        if (den.is_zero()) throw std::domain_error("MobiusStream: pole hit");
        return (Rational(m[0]) * s + Rational(m[1])) / den;
    }

    bool same_expression(const MobiusStream& o) const {
        return stream.same_object(o.stream) && m == o.m;
    }
};

}  // namespace detail

/// A point of [0,1]: an exact rational, or an exact expression over one lazy
/// digit stream (the stream itself, a deferred affine image of it, or a
/// linear-fractional parameter derived from it). Never a float.
class RealValue {
public:
    RealValue() : v_(Rational(0)) {}
    RealValue(Rational r) : v_(std::move(r)) {}        // NOLINT: implicit by design
    RealValue(long long n) : v_(Rational(n)) {}        // NOLINT
    RealValue(DigitStream s)                           // NOLINT
        : v_(detail::MobiusStream(Rational(1), Rational(0), Rational(0), Rational(1),
                                  std::move(s))) {}
    explicit RealValue(detail::MobiusStream e) : v_(std::move(e)) {}

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }

    const Rational& as_rational() const {
        if (!is_rational()) throw std::logic_error("RealValue: not rational");
        return std::get<Rational>(v_);
    }

    const detail::MobiusStream& as_mobius() const {
        return std::get<detail::MobiusStream>(v_);
    }

    /// Image under u -> (p*u + q)/(r*u + t). Stays rational or stays a
    /// single-stream expression; throws only on an exact rational pole.
    RealValue mobius_image(const Rational& p, const Rational& q, const Rational& r,
                           const Rational& t) const {
        if (is_rational()) {
            const Rational& u = as_rational();
            Rational den = r * u + t;
            if (den.is_zero()) throw std::domain_error("RealValue: pole in exact evaluation");
            return RealValue((p * u + q) / den);
        }
        const auto& ms = as_mobius();
        // Matrix product [[p,q],[r,t]] * [[a,b],[c,d]].
        Rational a(ms.m[0]), b(ms.m[1]), c(ms.m[2]), d(ms.m[3]);
        detail::MobiusStream out(p * a + q * c, p * b + q * d, r * a + t * c,
                                 r * b + t * d, ms.stream);
        if (out.determinant() == 0) {
            // Degenerate composition: value is constant a'/c' (= b'/d').
            Rational num(out.m[1]), den(out.m[3]);
            if (den.is_zero()) { num = Rational(out.m[0]); den = Rational(out.m[2]); }
            if (den.is_zero()) throw std::domain_error("RealValue: degenerate expression");
            return RealValue(num / den);
        }
        return RealValue(std::move(out));
    }

    RealValue affine_image(const Rational& scale, const Rational& shift) const {
        return mobius_image(scale, shift, Rational(0), Rational(1));
    }

    /// Enclosure from (at least) `digits` stream digits. Exact rationals give
    /// a degenerate closed interval. The stream's own enclosure is
    /// [P/b^L, (P+1)/b^L) (canonical form forbids the all-(b-1) tail), and the
    /// Moebius map transports the endpoint openness.
    Enclosure enclosure(std::size_t digits) const {
        if (is_rational()) return {as_rational(), as_rational(), false, false};
        const auto& ms = as_mobius();
        std::size_t cap = std::max<std::size_t>(digits, 64) * 16;
        for (std::size_t n = std::max<std::size_t>(digits, 1);; n *= 2) {
            const int b = ms.stream.base();
            const BigInt bn = pow_int(b, n);
            Rational lo(ms.stream.prefix_integer(n), bn);
            Rational hi = lo + Rational(1, bn);
            Rational den_lo = Rational(ms.m[2]) * lo + Rational(ms.m[3]);
            Rational den_hi = Rational(ms.m[2]) * hi + Rational(ms.m[3]);
            if (den_lo.sign() * den_hi.sign() <= 0) {
                if (n >= cap)
                    throw UndecidableError("RealValue: expression pole not separated within budget");
                continue;  // refine past the pole
            }
            Rational at_lo = ms.apply(lo), at_hi = ms.apply(hi);
            if (ms.determinant() > 0) return {at_lo, at_hi, false, true};
            return {at_hi, at_lo, true, false};
        }
    }

    /// Exact parameter expression, replayable in reports.
    std::string description() const {
        if (is_rational()) return as_rational().str();
        const auto& ms = as_mobius();
        auto lin = [&](const BigInt& coeff, const BigInt& constant) {
            std::string s;
            if (coeff != 0) {
                if (coeff == -1) s += "-";
                else if (coeff != 1) s += coeff.str() + "*";
                s += "s";
            }
            if (constant != 0 || coeff == 0) {
                if (!s.empty() && constant > 0) s += "+";
                s += constant.str();
            }
            return s;
        };
        std::string num = lin(ms.m[0], ms.m[1]);
        if (ms.m[2] == 0 && ms.m[3] == 1)
            return num + " where s=" + ms.stream.name();
        return "(" + num + ")/(" + lin(ms.m[2], ms.m[3]) + ") where s=" + ms.stream.name();
    }

private:
    std::variant<Rational, detail::MobiusStream> v_;
};

/// Exact sum. Closed for rational +/- anything and for two affine views of the
/// same stream (which is all the interval geometry here ever produces);
/// anything else throws, by design rather than approximating.
inline RealValue add(const RealValue& x, const RealValue& y) {
    if (y.is_rational()) return x.affine_image(Rational(1), y.as_rational());
    if (x.is_rational()) return y.affine_image(Rational(1), x.as_rational());
    const auto& mx = x.as_mobius();
    const auto& my = y.as_mobius();
    if (!mx.stream.same_object(my.stream))
        throw std::logic_error("RealValue: sum of two distinct streams is not representable");
    if (mx.m[2] != 0 || my.m[2] != 0)
        throw std::logic_error("RealValue: sum of non-affine stream expressions is not representable");
    Rational a = Rational(mx.m[0], mx.m[3]) + Rational(my.m[0], my.m[3]);
    Rational b = Rational(mx.m[1], mx.m[3]) + Rational(my.m[1], my.m[3]);
    if (a.is_zero()) return RealValue(b);
    return RealValue(detail::MobiusStream(a, b, Rational(0), Rational(1), mx.stream));
}

inline RealValue negate(const RealValue& x) {
    return x.affine_image(Rational(-1), Rational(0));
}

inline RealValue subtract(const RealValue& x, const RealValue& y) {
    return add(x, negate(y));
}

enum class CompareResult { Less, Equal, Greater, Undecidable };

/// Exact three-way comparison by enclosure refinement. Equal is returned only
/// when provable: both rational, or the same normalized expression over the
/// same stream object. A genuine coincidence of a stream value with another
/// expression is reported Undecidable once max_digits is exhausted — never a
/// wrong order.
inline CompareResult compare(const RealValue& a, const RealValue& b,
                             std::size_t max_digits = 2'000) {
    if (a.is_rational() && b.is_rational()) {
        auto c = a.as_rational() <=> b.as_rational();
        if (c < 0) return CompareResult::Less;
        if (c > 0) return CompareResult::Greater;
        return CompareResult::Equal;
    }
    if (!a.is_rational() && !b.is_rational() &&
        a.as_mobius().same_expression(b.as_mobius()))
        return CompareResult::Equal;

    std::size_t n = 8;
    for (;;) {
        Enclosure ea = a.enclosure(n), eb = b.enclosure(n);
        if (enclosure_below(ea, eb)) return CompareResult::Less;
        if (enclosure_below(eb, ea)) return CompareResult::Greater;
        if (n >= max_digits) return CompareResult::Undecidable;
        n = std::min(n * 2, max_digits);
    }
}

inline CompareResult compare(const RealValue& a, const Rational& b,
                             std::size_t max_digits = 2'000) {
    return compare(a, RealValue(b), max_digits);
}

namespace detail {

/// value -> "<int>.<n digits>", truncated toward zero. Exact on rationals of
/// any sign or size; used for CSV/report rendering.
inline std::string decimal_of_rational(const Rational& r, std::size_t n_digits) {
    Rational a = r.abs();
    BigInt ip = a.floor();
    Rational frac = a - Rational(ip);
    std::string digits = frac.floor_scaled(pow_int(10, n_digits)).str();
    if (digits.size() < n_digits) digits.insert(0, n_digits - digits.size(), '0');
    return (r.sign() < 0 ? "-" : "") + ip.str() + (n_digits ? "." + digits : "");
}

}  // namespace detail

/// Truncated (never rounded) decimal rendering with n_digits fractional
/// digits; x must be nonnegative. Stream expressions refine until the
/// truncation is pinned, up to `budget` stream digits, then throw Undecidable.
inline std::string decimal_string(const RealValue& x, std::size_t n_digits,
                                  std::size_t budget = 0) {
    if (x.is_rational()) {
        const Rational& r = x.as_rational();
        if (r < Rational(0)) throw std::domain_error("decimal_string: negative value");
        return detail::decimal_of_rational(r, n_digits);
    }
    if (budget == 0) budget = std::max<std::size_t>(4 * n_digits + 64, 4'096);
    const BigInt scale = pow_int(10, n_digits);
    std::size_t n = std::max<std::size_t>(n_digits, 8);
    for (;;) {
        Enclosure e = x.enclosure(n);
        BigInt t_min = e.lo.floor_scaled(scale);
        BigInt t_max = e.hi.floor_scaled(scale);
        if (e.hi_open && Rational(t_max) == e.hi * Rational(scale)) --t_max;
        if (t_min == t_max) return detail::decimal_of_rational(Rational(t_min, scale), n_digits);
        if (n >= budget)
            throw UndecidableError("decimal_string: digit not pinned within scan budget");
        n = std::min(n * 2, budget);
    }
}

}  // namespace paclab
