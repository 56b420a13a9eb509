#pragma once

#include "paclab/exact/rational.hpp"

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace paclab {

/// Point of the standard 2-simplex: three nonnegative volumes summing to 1
/// exactly. Tanks are addressed 1..3.
struct SimplexState {
    Rational v1, v2, v3;

    SimplexState() : v1(1), v2(0), v3(0) {}
    SimplexState(Rational a, Rational b, Rational c)
        : v1(std::move(a)), v2(std::move(b)), v3(std::move(c)) {
        if (v1.sign() < 0 || v2.sign() < 0 || v3.sign() < 0)
            throw std::invalid_argument("SimplexState: negative volume");
        if (v1 + v2 + v3 != Rational(1))
            throw std::invalid_argument("SimplexState: volumes must sum to 1");
    }

    const Rational& coord(std::size_t tank) const {
        switch (tank) {
            case 1: return v1;
            case 2: return v2;
            case 3: return v3;
            default: throw std::out_of_range("SimplexState: tank index must be 1..3");
        }
    }

    bool on_boundary() const { return v1.is_zero() || v2.is_zero() || v3.is_zero(); }

    /// Lowest-indexed empty tank (the vertex convention); throws on interior states.
    std::size_t emptied_tank() const {
        if (v1.is_zero()) return 1;
        if (v2.is_zero()) return 2;
        if (v3.is_zero()) return 3;
        throw std::domain_error("SimplexState: no empty tank");
    }

    friend bool operator==(const SimplexState& a, const SimplexState& b) {
        return a.v1 == b.v1 && a.v2 == b.v2 && a.v3 == b.v3;
    }
    friend bool operator<(const SimplexState& a, const SimplexState& b) {
        if (a.v1 != b.v1) return a.v1 < b.v1;
        if (a.v2 != b.v2) return a.v2 < b.v2;
        return a.v3 < b.v3;
    }

    std::string str() const {
        return "(" + v1.str() + ", " + v2.str() + ", " + v3.str() + ")";
    }
};

/// Anticlockwise arc-length chart of the simplex boundary: phi(0) is the
/// second vertex, phi(1/3) the third, phi(2/3) the first.
inline SimplexState phi(const Rational& t) {
    if (t < Rational(0) || t >= Rational(1))
        throw std::domain_error("phi: parameter outside [0,1)");
    Rational s = Rational(3) * t;
    if (t < Rational(1, 3)) return {Rational(0), Rational(1) - s, s};
    if (t < Rational(2, 3)) return {s - Rational(1), Rational(0), Rational(2) - s};
    return {Rational(3) - s, s - Rational(2), Rational(0)};
}

/// Exact inverse chart on the boundary; vertices resolve through the lowest
/// vanishing coordinate, matching the half-open parametrisation.
inline Rational phi_inv(const SimplexState& v) {
    if (v.v1.is_zero()) return v.v3 / Rational(3);
    if (v.v2.is_zero()) return (Rational(1) + v.v1) / Rational(3);
    if (v.v3.is_zero()) return (Rational(3) - v.v1) / Rational(3);
    throw std::domain_error("phi_inv: state not on the simplex boundary");
}

}  // namespace paclab
