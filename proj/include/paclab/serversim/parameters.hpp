#pragma once

#include "paclab/exact/rational.hpp"
#include "paclab/exact/real_value.hpp"

#include <array>
#include <stdexcept>

namespace paclab {

/// Per-tank inflow ratios of the switched server. All three entries must be
/// strictly positive; they may be exact rationals or digit-stream reals.
struct DTriple {
    RealValue d1, d2, d3;

    DTriple(RealValue a, RealValue b, RealValue c)
        : d1(std::move(a)), d2(std::move(b)), d3(std::move(c)) {
        for (const RealValue* d : {&d1, &d2, &d3}) {
            if (compare(*d, Rational(0)) != CompareResult::Greater)
                throw std::invalid_argument("DTriple: ratios must be strictly positive");
        }
    }

    const RealValue& at(std::size_t i) const {
        switch (i) {
            case 1: return d1;
            case 2: return d2;
            case 3: return d3;
            default: throw std::out_of_range("DTriple: index must be 1..3");
        }
    }
};

namespace detail {

inline void require_open_range(const RealValue& x, const Rational& lo, const Rational& hi,
                               const char* what) {
    if (compare(x, lo) != CompareResult::Greater || compare(x, hi) != CompareResult::Less)
        throw std::domain_error(what);
}

}  // namespace detail

/// Ratios from interior breakpoints x1 in (0,1/3), x2 in (1/3,2/3),
/// x3 in (2/3,1):
///   d1 = (1 - 3 x1) / (3 x1)
///   d2 = (2 - 3 x2) / (3 x2 - 1)
///   d3 = (3 - 3 x3) / (3 x3 - 2)
inline DTriple d_from_x(const RealValue& x1, const RealValue& x2, const RealValue& x3) {
    detail::require_open_range(x1, Rational(0), Rational(1, 3), "d_from_x: x1 outside (0,1/3)");
    detail::require_open_range(x2, Rational(1, 3), Rational(2, 3), "d_from_x: x2 outside (1/3,2/3)");
    detail::require_open_range(x3, Rational(2, 3), Rational(1), "d_from_x: x3 outside (2/3,1)");
    RealValue d1 = x1.mobius_image(Rational(-3), Rational(1), Rational(3), Rational(0));
    RealValue d2 = x2.mobius_image(Rational(-3), Rational(2), Rational(3), Rational(-1));
    RealValue d3 = x3.mobius_image(Rational(-3), Rational(3), Rational(3), Rational(-2));
    return DTriple(std::move(d1), std::move(d2), std::move(d3));
}

/// Interior breakpoints of the conjugate interval map,
///   x_i = 1/(3 (1 + d_i)) + (i - 1)/3 = ((i-1) d_i + i) / (3 d_i + 3),
/// one per tank; exact inverse of d_from_x.
inline std::array<RealValue, 3> breakpoints_from_d(const DTriple& d) {
    std::array<RealValue, 3> x = {RealValue(Rational(0)), RealValue(Rational(0)),
                                  RealValue(Rational(0))};
    for (std::size_t i = 1; i <= 3; ++i) {
        Rational k(static_cast<long long>(i - 1));
        x[i - 1] = d.at(i).mobius_image(k, k + Rational(1), Rational(3), Rational(3));
    }
    return x;
}

}  // namespace paclab
