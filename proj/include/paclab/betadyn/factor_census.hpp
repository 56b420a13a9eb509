#pragma once

#include "paclab/exact/digit_stream.hpp"

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace paclab {

/// Distinct length-k factors of a digit word, with the words never observed.
/// Richness evidence for the full shift is count == base^k with no misses.
struct FactorCensus {
    std::size_t word_length = 0;
    std::size_t count = 0;
    std::uint64_t possible = 0;  // base^k
    std::vector<std::string> missing;

    bool complete() const { return missing.empty(); }
};

namespace detail {

inline std::string render_word(std::uint64_t code, std::size_t k, int base) {
    std::string out;
    std::vector<int> digits(k);
    for (std::size_t i = k; i-- > 0;) {
        digits[i] = static_cast<int>(code % static_cast<std::uint64_t>(base));
        code /= static_cast<std::uint64_t>(base);
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (base > 10 && i > 0) out += '.';
        out += std::to_string(digits[i]);
    }
    return out;
}

}  // namespace detail

inline FactorCensus factor_census(const std::vector<int>& prefix, std::size_t k, int base) {
    if (base < 2) throw std::invalid_argument("factor_census: base must be >= 2");
    if (k < 1) throw std::invalid_argument("factor_census: word length must be >= 1");
    if (prefix.size() < k)
        throw std::invalid_argument("factor_census: prefix shorter than the word length");

    constexpr std::uint64_t kEnumerationCap = std::uint64_t(1) << 24;
    std::uint64_t possible = 1;
    for (std::size_t i = 0; i < k; ++i) {
        possible *= static_cast<std::uint64_t>(base);
        if (possible > kEnumerationCap)
            throw std::invalid_argument("factor_census: base^k too large to enumerate");
    }

    // Windows encoded positionally; the rolling update keeps the scan linear.
    std::set<std::uint64_t> seen;
    std::uint64_t code = 0;
    const std::uint64_t msd = possible / static_cast<std::uint64_t>(base);
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        int d = prefix[i];
        if (d < 0 || d >= base)
            throw std::invalid_argument("factor_census: digit outside the base");
        code = (code % msd) * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(d);
        if (i + 1 >= k) seen.insert(code);
    }

    FactorCensus census;
    census.word_length = k;
    census.count = seen.size();
    census.possible = possible;
    for (std::uint64_t w = 0; w < possible; ++w)
        if (!seen.count(w)) census.missing.push_back(detail::render_word(w, k, base));
    return census;
}

/// Census over the first prefix_length digits of a stream.
inline FactorCensus factor_census(const DigitStream& s, std::size_t k,
                                  std::size_t prefix_length) {
    return factor_census(s.prefix(prefix_length), k, s.base());
}

}  // namespace paclab
