#pragma once

#include "paclab/contraction/map.hpp"
#include "paclab/exact/digit_stream.hpp"
#include "paclab/exact/rational.hpp"
#include "paclab/exact/real_value.hpp"
#include "paclab/serversim/parameters.hpp"
#include "paclab/serversim/simplex.hpp"

#include <array>
#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace paclab {

/// Result of parsing a number spec. `stream` is set when the spec names an
/// actual digit sequence (a Champernowne constant, possibly shifted by an
/// offset that terminates in its base), which the factor census requires.
struct ParsedReal {
    RealValue value;
    std::optional<DigitStream> stream;
};

namespace detail {

inline std::string strip_spaces(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

/// Matches a leading "c" or "champernowne(b)"; returns the base and the
/// number of characters consumed.
inline std::optional<std::pair<int, std::size_t>> match_champernowne(const std::string& s) {
    const std::string kw = "champernowne(";
    if (s.rfind(kw, 0) == 0) {
        std::size_t close = s.find(')', kw.size());
        if (close == std::string::npos)
            throw std::invalid_argument("number spec: unterminated champernowne(");
        std::string digits = s.substr(kw.size(), close - kw.size());
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("number spec: champernowne base must be a positive integer");
        if (digits.size() > 6) throw std::invalid_argument("number spec: champernowne base too large");
        int base = std::stoi(digits);
        if (base < 2) throw std::invalid_argument("number spec: champernowne base must be >= 2");
        return std::make_pair(base, close + 1);
    }
    if (!s.empty() && s[0] == 'c' && (s.size() == 1 || s[1] == '+' || s[1] == '-'))
        return std::make_pair(4, std::size_t{1});
    return std::nullopt;
}

}  // namespace detail

/// Number grammar: "p/q", exact decimal literals, "champernowne(b)",
/// "champernowne(b)+p/q", "champernowne(b)-p/q", and "c" as shorthand for
/// champernowne(4). Offsets keep an explicit digit stream when they
/// terminate in the stream's base and otherwise fall back to an exact affine
/// view of the unshifted stream.
inline ParsedReal parse_real_spec(std::string_view text) {
    std::string s = detail::strip_spaces(text);
    if (s.empty()) throw std::invalid_argument("number spec: empty");
    if (auto head = detail::match_champernowne(s)) {
        auto [base, consumed] = *head;
        DigitStream stream = champernowne_stream(base);
        std::string rest = s.substr(consumed);
        if (rest.empty()) return {RealValue(stream), std::move(stream)};
        if (rest[0] != '+' && rest[0] != '-')
            throw std::invalid_argument("number spec: expected +offset or -offset after stream");
        Rational offset = parse_rational(rest.substr(1));
        if (rest[0] == '-') offset = -offset;
        try {
            DigitStream shifted = offset_add(stream, offset);
            return {RealValue(shifted), std::move(shifted)};
        } catch (const UndecidableError&) {
        } catch (const std::domain_error&) {
        }
        return {RealValue(stream).affine_image(Rational(1), offset), std::nullopt};
    }
    return {RealValue(parse_rational(s)), std::nullopt};
}

inline RealValue parse_real(std::string_view text) { return parse_real_spec(text).value; }

namespace detail {

inline BigInt parse_positive_integer(const std::string& s, const char* what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument(std::string(what) + ": expected a positive integer, got '" +
                                    s + "'");
    return BigInt(s);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t from = 0;
    for (;;) {
        std::size_t at = s.find(sep, from);
        if (at == std::string::npos) {
            parts.push_back(s.substr(from));
            return parts;
        }
        parts.push_back(s.substr(from, at - from));
        from = at + 1;
    }
}

}  // namespace detail

/// Comma-separated triple of number specs, e.g. "1,1,1" or "c-1/4,c,c+1/2".
inline std::array<RealValue, 3> parse_real_triple(std::string_view text) {
    auto parts = detail::split(detail::strip_spaces(text), ',');
    if (parts.size() != 3) throw std::invalid_argument("triple: expected exactly 3 entries");
    return {parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2])};
}

/// Comma-separated exact rational state, e.g. "0.11,0,0.89"; must lie on the
/// simplex exactly.
inline SimplexState parse_state(std::string_view text) {
    auto parts = detail::split(detail::strip_spaces(text), ',');
    if (parts.size() != 3) throw std::invalid_argument("state: expected exactly 3 volumes");
    return SimplexState(parse_rational(parts[0]), parse_rational(parts[1]),
                        parse_rational(parts[2]));
}

/// Comma-separated rational list, e.g. "0,1/3,0.8".
inline std::vector<Rational> parse_rational_list(std::string_view text) {
    auto parts = detail::split(detail::strip_spaces(text), ',');
    std::vector<Rational> out;
    out.reserve(parts.size());
    for (const std::string& p : parts) out.push_back(parse_rational(p));
    return out;
}

/// Map grammar: "beta=B,sign=+|-,bp=v0:v1:...:vn,alpha=a1:...:an" for the
/// canonical slope form, or "intercepts=c1:...:cn" in place of alpha for
/// general rational intercepts. Breakpoint entries use the number grammar.
inline PiecewiseAffineContraction parse_map_spec(std::string_view text) {
    std::string s = detail::strip_spaces(text);
    std::optional<BigInt> beta;
    std::optional<int> sign;
    std::vector<RealValue> breakpoints;
    std::vector<BigInt> alphas;
    std::vector<Rational> intercepts;
    for (const std::string& field : detail::split(s, ',')) {
        std::size_t eq = field.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("map spec: expected key=value, got '" + field + "'");
        std::string key = field.substr(0, eq), value = field.substr(eq + 1);
        if (key == "beta") {
            beta = detail::parse_positive_integer(value, "map spec beta");
        } else if (key == "sign") {
            if (value == "+" || value == "+1")
                sign = 1;
            else if (value == "-" || value == "-1")
                sign = -1;
            else
                throw std::invalid_argument("map spec: sign must be + or -");
        } else if (key == "bp") {
            for (const std::string& v : detail::split(value, ':')) breakpoints.push_back(parse_real(v));
        } else if (key == "alpha") {
            for (const std::string& v : detail::split(value, ':'))
                alphas.push_back(detail::parse_positive_integer(v, "map spec alpha"));
        } else if (key == "intercepts") {
            for (const std::string& v : detail::split(value, ':'))
                intercepts.push_back(parse_rational(v));
        } else {
            throw std::invalid_argument("map spec: unknown key '" + key + "'");
        }
    }
    if (!beta || !sign || breakpoints.empty())
        throw std::invalid_argument("map spec: beta, sign and bp are required");
    if (alphas.empty() == intercepts.empty())
        throw std::invalid_argument("map spec: exactly one of alpha or intercepts is required");
    if (!alphas.empty())
        return PiecewiseAffineContraction::build_map(*beta, *sign, std::move(breakpoints), alphas);
    return PiecewiseAffineContraction::build_map_general(*beta, *sign, std::move(breakpoints),
                                                         std::move(intercepts));
}

}  // namespace paclab
