#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace paclab {

using BigInt = boost::multiprecision::cpp_int;

/// Exact reduced fraction. Invariants: denominator > 0, gcd(|num|, den) = 1.
/// The heavy lifting (reduction, sign normalization, exact field ops) is
/// delegated to boost::multiprecision::cpp_rational; this facade pins the
/// domain contract and keeps call sites independent of the backend.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long long n) : v_(n) {}                 // NOLINT: implicit by design
    Rational(const BigInt& n) : v_(n) {}             // NOLINT
    Rational(long long p, long long q) : Rational(BigInt(p), BigInt(q)) {}

    Rational(const BigInt& p, const BigInt& q) {
        if (q == 0) throw std::domain_error("Rational: zero denominator");
        // The backend insists on a positive denominator, so absorb the sign.
        v_ = q < 0 ? Backend(-p, -q) : Backend(p, q);
    }

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_integer() const { return denominator() == 1; }
    bool is_zero() const { return v_ == 0; }
    int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(a.v_ / b.v_);
    }
    Rational operator-() const { return Rational(-v_); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (a.v_ < b.v_) return std::strong_ordering::less;
        if (a.v_ > b.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Rational abs() const { return v_ < 0 ? Rational(-v_) : *this; }

    /// Largest integer <= value (true floor, not truncation).
    BigInt floor() const {
        BigInt q = numerator() / denominator();
        if (numerator() < 0 && q * denominator() != numerator()) --q;
        return q;
    }

    /// floor(value * scale), exact. The workhorse of digit extraction.
    BigInt floor_scaled(const BigInt& scale) const {
        return Rational(numerator() * scale, denominator()).floor();
    }

    /// Canonical "p/q" form, e.g. "2/9", "-1/3", "0/1".
    std::string to_fraction_string() const {
        return numerator().str() + "/" + denominator().str();
    }

    /// "p" when integral, "p/q" otherwise; for human-facing text.
    std::string str() const {
        return is_integer() ? numerator().str() : to_fraction_string();
    }

    double to_double() const { return v_.template convert_to<double>(); }

private:
    using Backend = boost::multiprecision::cpp_rational;
    explicit Rational(Backend v) : v_(std::move(v)) {}
    Backend v_;
};

/// Reduced fraction with positive denominator. Throws on q = 0.
inline Rational make_rational(const BigInt& p, const BigInt& q) { return Rational(p, q); }
inline Rational make_rational(long long p, long long q) { return Rational(p, q); }

inline BigInt pow_int(const BigInt& base, std::size_t e) {
    BigInt r = 1, b = base;
    for (std::size_t k = e; k > 0; k >>= 1) {
        if (k & 1) r *= b;
        if (k > 1) b *= b;
    }
    return r;
}

inline Rational pow_rational(const Rational& base, std::size_t e) {
    return Rational(pow_int(base.numerator(), e), pow_int(base.denominator(), e));
}

/// Parses "p/q", "p", or a decimal literal ("0.17" -> 17/100), all exact.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'"); };
    if (text.empty()) fail();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string p(text.substr(0, slash)), q(text.substr(slash + 1));
        if (p.empty() || q.empty()) fail();
        try {
            return Rational(BigInt(p), BigInt(q));
        } catch (const std::runtime_error&) { fail(); }
    }
    bool neg = false;
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') { neg = text[i] == '-'; ++i; }
    BigInt num = 0, den = 1;
    bool any_digit = false, seen_dot = false;
    for (; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '.') {
            if (seen_dot) fail();
            seen_dot = true;
            continue;
        }
        if (ch < '0' || ch > '9') fail();
        num = num * 10 + (ch - '0');
        if (seen_dot) den *= 10;
        any_digit = true;
    }
    if (!any_digit) fail();
    return Rational(neg ? -num : num, den);
}

}  // namespace paclab
