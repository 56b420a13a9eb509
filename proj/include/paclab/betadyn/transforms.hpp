#pragma once

#include "paclab/exact/rational.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace paclab {

namespace detail {

inline void require_unit_interval(const Rational& x, const char* who) {
    if (x < Rational(0) || x >= Rational(1))
        throw std::domain_error(std::string(who) + ": argument outside [0,1)");
}

inline void require_beta(const BigInt& beta, const char* who) {
    if (beta < 2) throw std::invalid_argument(std::string(who) + ": beta must be >= 2");
}

}  // namespace detail

/// Expanding beta-map with right-open branches: x in [(r-1)/beta, r/beta)
/// goes to beta*x + 1 - r. Returns the value and the branch index r.
inline std::pair<Rational, BigInt> t_beta_with_branch(const Rational& x, const BigInt& beta) {
    detail::require_unit_interval(x, "t_beta");
    detail::require_beta(beta, "t_beta");
    Rational bx = Rational(beta) * x;
    BigInt r = bx.floor() + 1;
    return {bx - Rational(BigInt(r - 1)), r};
}

inline Rational t_beta(const Rational& x, const BigInt& beta) {
    return t_beta_with_branch(x, beta).first;
}

/// Expanding negative-beta map with left-open branches: x in ((r-1)/beta,
/// r/beta] goes to r - beta*x, and 0 goes to 0.
inline std::pair<Rational, BigInt> t_neg_beta_with_branch(const Rational& x, const BigInt& beta) {
    detail::require_unit_interval(x, "t_neg_beta");
    detail::require_beta(beta, "t_neg_beta");
    if (x.is_zero()) return {Rational(0), BigInt(0)};
    Rational bx = Rational(beta) * x;
    BigInt r = bx.floor();
    if (Rational(r) != bx) ++r;  // ceiling: the branch interval is closed on the right
    return {Rational(r) - bx, r};
}

inline Rational t_neg_beta(const Rational& x, const BigInt& beta) {
    return t_neg_beta_with_branch(x, beta).first;
}

/// Squaring the negative-beta map gives the plain beta-squared map pointwise.
inline bool square_identity_check(const Rational& x, const BigInt& beta) {
    return t_neg_beta(t_neg_beta(x, beta), beta) == t_beta(x, beta * beta);
}

namespace detail {

/// Smallest j >= 0 with (beta-1)*beta^j > bound. Pure integer search.
inline std::size_t minimal_power_exceeding(const BigInt& beta, const BigInt& bound) {
    BigInt value = beta - 1;
    std::size_t j = 0;
    while (value <= bound) {
        value *= beta;
        ++j;
    }
    return j;
}

}  // namespace detail

/// Smallest k with 2*beta^-k < (1 - 1/beta)/(n+1), by direct search on the
/// integer form (beta-1)*beta^k > 2*beta*(n+1).
inline std::size_t ell(const BigInt& beta, const BigInt& n) {
    detail::require_beta(beta, "ell");
    if (n < 2) throw std::invalid_argument("ell: n must be >= 2");
    return detail::minimal_power_exceeding(beta, 2 * beta * (n + 1));
}

/// Smallest k with 2*beta^-2k < (1 - 1/beta)/(n+1).
inline std::size_t ell_prime(const BigInt& beta, const BigInt& n) {
    detail::require_beta(beta, "ell_prime");
    if (n < 2) throw std::invalid_argument("ell_prime: n must be >= 2");
    const BigInt bound = 2 * beta * (n + 1);
    BigInt value = beta - 1;
    std::size_t k = 0;
    while (value <= bound) {
        value *= beta * beta;
        ++k;
    }
    return k;
}

/// Closed-form counterparts via the strict integer logarithm, used as a
/// cross-check on the direct searches: with j0 = min{j : (beta-1)*beta^j >
/// 2(n+1)}, both indices are arithmetic in j0.
inline std::size_t ell_closed_form(const BigInt& beta, const BigInt& n) {
    return detail::minimal_power_exceeding(beta, 2 * (n + 1)) + 1;
}

inline std::size_t ell_prime_closed_form(const BigInt& beta, const BigInt& n) {
    return (detail::minimal_power_exceeding(beta, 2 * (n + 1)) + 2) / 2;
}

enum class BetaVariant { Plus, Minus, Squared };

enum class BetaOrbitEnd { Cycle, LeftImage, BoundExceeded };

/// Exact eventually-periodic decomposition of an expanding-map orbit. When a
/// membership predicate is supplied, the orbit stops at the first point
/// falling outside it (that point closes the preperiod).
struct BetaOrbitReport {
    Rational seed;
    BetaVariant variant = BetaVariant::Plus;
    std::vector<Rational> preperiod;
    std::vector<Rational> cycle;  // orbit order, first-entered point first
    BetaOrbitEnd terminated_reason = BetaOrbitEnd::BoundExceeded;
};

inline BetaOrbitReport beta_orbit(const Rational& x, const BigInt& beta, BetaVariant variant,
                                  std::size_t max_steps,
                                  const std::function<bool(const Rational&)>& member = {}) {
    detail::require_unit_interval(x, "beta_orbit");
    detail::require_beta(beta, "beta_orbit");
    auto apply = [&](const Rational& v) {
        switch (variant) {
            case BetaVariant::Plus: return t_beta(v, beta);
            case BetaVariant::Minus: return t_neg_beta(v, beta);
            default: return t_beta(v, beta * beta);
        }
    };

    BetaOrbitReport report;
    report.seed = x;
    report.variant = variant;

    std::vector<Rational> points{x};
    std::map<Rational, std::size_t> seen;
    for (std::size_t k = 0;; ++k) {
        const Rational& cur = points.back();
        if (member && !member(cur)) {
            report.preperiod = std::move(points);
            report.terminated_reason = BetaOrbitEnd::LeftImage;
            return report;
        }
        auto [it, fresh] = seen.emplace(cur, k);
        if (!fresh) {
            auto entry = points.begin() + static_cast<std::ptrdiff_t>(it->second);
            report.preperiod.assign(points.begin(), entry);
            report.cycle.assign(entry, points.end() - 1);
            report.terminated_reason = BetaOrbitEnd::Cycle;
            return report;
        }
        if (k >= max_steps) {
            report.preperiod = std::move(points);
            report.terminated_reason = BetaOrbitEnd::BoundExceeded;
            return report;
        }
        points.push_back(apply(cur));
    }
}

}  // namespace paclab
