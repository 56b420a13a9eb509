#pragma once

#include "paclab/exact/rational.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace paclab {

/// Raised when a digit-level question cannot be settled within its scan budget.
struct UndecidableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Produces digits of an infinite base-b word, in order. Implementations are
/// driven only through DigitStream, which serializes access.
class DigitGenerator {
public:
    virtual ~DigitGenerator() = default;
    /// Appends exactly `count` further digits (each in [0, base)) to `out`.
    virtual void append(std::vector<int>& out, std::size_t count) = 0;
};

/// Lazy base-b digit sequence with a memoized prefix; value is
/// sum_i digit(i) * b^-(i+1), a point of [0,1].
///
/// Concurrency: the prefix cache is internally synchronized, so a stream may
/// be shared and read from multiple threads. Copies share one cache.
class DigitStream {
public:
    DigitStream(int base, std::string name, std::unique_ptr<DigitGenerator> gen)
        : impl_(std::make_shared<Impl>()) {
        if (base < 2) throw std::domain_error("DigitStream: base must be >= 2");
        impl_->base = base;
        impl_->name = std::move(name);
        impl_->gen = std::move(gen);
    }

    int base() const { return impl_->base; }
    const std::string& name() const { return impl_->name; }

    int digit(std::size_t i) const {
        std::lock_guard<std::mutex> lock(impl_->mu);
        ensure_locked(i + 1);
        return impl_->prefix[i];
    }

    std::vector<int> prefix(std::size_t n) const {
        std::lock_guard<std::mutex> lock(impl_->mu);
        ensure_locked(n);
        return {impl_->prefix.begin(), impl_->prefix.begin() + static_cast<std::ptrdiff_t>(n)};
    }

    /// First n digits as an integer P; the stream value lies in [P/b^n, (P+1)/b^n).
    BigInt prefix_integer(std::size_t n) const {
        std::lock_guard<std::mutex> lock(impl_->mu);
        ensure_locked(n);
        BigInt p = 0;
        for (std::size_t i = 0; i < n; ++i) p = p * impl_->base + impl_->prefix[i];
        return p;
    }

    Rational lower_bound(std::size_t n) const {
        return Rational(prefix_integer(n), pow_int(impl_->base, n));
    }

    /// Identity of the underlying lazy word (shared by copies and by
    /// offset views over the same source).
    bool same_object(const DigitStream& o) const { return impl_ == o.impl_; }

private:
    struct Impl {
        int base = 0;
        std::string name;
        std::unique_ptr<DigitGenerator> gen;
        std::vector<int> prefix;
        std::mutex mu;
    };

    void ensure_locked(std::size_t n) const {
        auto& im = *impl_;
        if (im.prefix.size() >= n) return;
        std::size_t need = n - im.prefix.size();
        std::size_t before = im.prefix.size();
        im.gen->append(im.prefix, need);
        if (im.prefix.size() != before + need)
            throw std::logic_error("DigitGenerator produced wrong digit count");
        for (std::size_t i = before; i < im.prefix.size(); ++i)
            if (im.prefix[i] < 0 || im.prefix[i] >= im.base)
                throw std::logic_error("DigitGenerator produced digit out of range");
    }

    std::shared_ptr<Impl> impl_;
};

namespace detail {

class ChampernowneGenerator final : public DigitGenerator {
public:
    explicit ChampernowneGenerator(int base) : base_(base) {}
    void append(std::vector<int>& out, std::size_t count) override {
        while (count > 0) {
            if (pos_ == numeral_.size()) {
                ++current_;
                numeral_.clear();
                for (BigInt m = current_; m != 0; m /= base_)
                    numeral_.insert(numeral_.begin(), static_cast<int>(m % base_));
                pos_ = 0;
            }
            out.push_back(numeral_[pos_++]);
            --count;
        }
    }

private:
    int base_;
    BigInt current_ = 0;
    std::vector<int> numeral_;
    std::size_t pos_ = 0;
};

/// First k digits replaced by a fixed block, tail read through from source.
class OffsetGenerator final : public DigitGenerator {
public:
    OffsetGenerator(DigitStream source, std::vector<int> head)
        : source_(std::move(source)), head_(std::move(head)) {}
    void append(std::vector<int>& out, std::size_t count) override {
        while (count > 0) {
            out.push_back(next_ < head_.size() ? head_[next_]
                                               : source_.digit(next_));
            ++next_;
            --count;
        }
    }

private:
    DigitStream source_;
    std::vector<int> head_;
    std::size_t next_ = 0;
};

}  // namespace detail

/// The base-b word 1 2 3 ... 10 11 ... (all positive integers' numerals
/// concatenated); its value is the base-b Champernowne constant.
inline DigitStream champernowne_stream(int base) {
    if (base < 2) throw std::domain_error("champernowne_stream: base must be >= 2");
    return DigitStream(base, "champernowne(" + std::to_string(base) + ")",
                       std::make_unique<detail::ChampernowneGenerator>(base));
}

/// Exact eventually periodic base-b expansion of r in [0,1), by long division.
/// The preperiod is minimal and the period is never empty: terminating
/// expansions are returned with period {0} (canonical form, no (b-1) tails).
struct RationalDigits {
    std::vector<int> preperiod;
    std::vector<int> period;
};

inline RationalDigits digits_of_rational(const Rational& r, int base) {
    if (base < 2) throw std::domain_error("digits_of_rational: base must be >= 2");
    if (r < Rational(0) || r >= Rational(1))
        throw std::domain_error("digits_of_rational: argument outside [0,1)");
    const BigInt q = r.denominator();
    BigInt rem = r.numerator();
    std::map<BigInt, std::size_t> seen;  // remainder -> index of digit it produces
    std::vector<int> digits;
    for (;;) {
        auto [it, fresh] = seen.emplace(rem, digits.size());
        if (!fresh) {
            std::size_t start = it->second;
            return {{digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(start)},
                    {digits.begin() + static_cast<std::ptrdiff_t>(start), digits.end()}};
        }
        rem *= base;
        digits.push_back(static_cast<int>(rem / q));
        rem %= q;
    }
}

/// Inverse of digits_of_rational: preperiod/b^s + period/(b^s (b^p - 1)).
inline Rational value_of_digits(const RationalDigits& d, int base) {
    BigInt pre = 0;
    for (int x : d.preperiod) pre = pre * base + x;
    BigInt per = 0;
    for (int x : d.period) per = per * base + x;
    const BigInt bs = pow_int(base, d.preperiod.size());
    Rational value(pre, bs);
    if (!d.period.empty()) {
        const BigInt bp = pow_int(base, d.period.size());
        value += Rational(per, bs * (bp - 1));
    }
    return value;
}

/// Expansion of r truncated/extended to exactly n digits.
inline std::vector<int> rational_digit_prefix(const Rational& r, int base, std::size_t n) {
    RationalDigits d = digits_of_rational(r, base);
    std::vector<int> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i < d.preperiod.size())
            out.push_back(d.preperiod[i]);
        else
            out.push_back(d.period[(i - d.preperiod.size()) % d.period.size()]);
    }
    return out;
}

/// Stream representing value(s) + r, where r has a terminating expansion in
/// s's base (r = m/b^k). Only the first k digits change: the tail is added to
/// zero digits of r, so no carry can ever arrive from the infinite part.
/// The scan window is consumed only to certify the result is strictly inside
/// (0,1) when the new k-digit block is all 0s or all (b-1)s.
inline DigitStream offset_add(const DigitStream& s, const Rational& r,
                              std::size_t scan_window = 10'000) {
    if (r.is_zero()) return s;
    const int b = s.base();

    // Minimal k with r * b^k integral; rejects offsets that do not terminate.
    std::size_t k = 0;
    for (BigInt q = r.denominator(); q != 1; ++k) {
        BigInt g = boost::multiprecision::gcd(q, BigInt(b));
        if (g == 1)
            throw std::domain_error("offset_add: offset has no terminating base-" +
                                    std::to_string(b) + " expansion");
        q /= g;
    }
    const BigInt bk = pow_int(b, k);
    const BigInt m = (r * Rational(bk)).numerator();  // exact integer, signed

    BigInt p = s.prefix_integer(k) + m;
    if (p < 0) throw std::domain_error("offset_add: result below 0");
    if (p >= bk) throw std::domain_error("offset_add: result at or above 1");

    if (p == 0 || p == bk - 1) {
        // All-0 head: must witness value > 0. All-(b-1) head: must witness
        // value < 1 (equivalently that the tail is not an all-(b-1) tail).
        const int blocking = (p == 0) ? 0 : b - 1;
        bool witnessed = false;
        for (std::size_t i = k; i < k + scan_window; ++i) {
            if (s.digit(i) != blocking) { witnessed = true; break; }
        }
        if (!witnessed)
            throw UndecidableError("offset_add: cannot certify result inside (0,1) within scan window");
    }

    std::vector<int> head(k);
    for (std::size_t i = k; i-- > 0;) {
        head[i] = static_cast<int>(p % b);
        p /= b;
    }
    return DigitStream(b, "offset(" + s.name() + "," + r.str() + ")",
                       std::make_unique<detail::OffsetGenerator>(s, std::move(head)));
}

}  // namespace paclab
