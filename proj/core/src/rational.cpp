#include "asymdof/rational.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace asymdof {

namespace {

using Wide = __int128;

std::int64_t narrow(Wide v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < -std::numeric_limits<std::int64_t>::max()) {
        throw std::overflow_error("rational arithmetic overflow");
    }
    return static_cast<std::int64_t>(v);
}

Wide wide_gcd(Wide a, Wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Reduces num/den (den != 0) and narrows to 64 bits.
Rational make_reduced(Wide num, Wide den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const Wide g = wide_gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational(narrow(num), narrow(den));
}

constexpr int kMaxFractionDigits = 6;

std::int64_t parse_int(std::string_view digits, std::string_view whole) {
    if (digits.empty()) {
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw std::invalid_argument("zero denominator");
    if (denominator < 0) {
        numerator = narrow(-static_cast<Wide>(numerator));
        denominator = narrow(-static_cast<Wide>(denominator));
    }
    const std::int64_t g = std::gcd(numerator, denominator);
    num_ = numerator / g;
    den_ = denominator / g;
}

Rational Rational::operator-() const { return Rational(narrow(-static_cast<Wide>(num_)), den_); }

Rational operator+(const Rational& a, const Rational& b) {
    return make_reduced(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
                        static_cast<Wide>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    return make_reduced(static_cast<Wide>(a.num_) * b.num_, static_cast<Wide>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("division by zero");
    return make_reduced(static_cast<Wide>(a.num_) * b.den_, static_cast<Wide>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<Wide>(a.num_) * b.den_ <=> static_cast<Wide>(b.num_) * a.den_;
}

Rational parse_rational(std::string_view text) {
    const std::string_view whole = text;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    // from_chars would accept a second sign; reject it here.
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }

    Rational result;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = parse_int(text.substr(0, slash), whole);
        const auto den = parse_int(text.substr(slash + 1), whole);
        if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(whole) + "'");
        result = Rational(num, den);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto int_part = text.substr(0, dot);
        const auto frac_part = text.substr(dot + 1);
        if (frac_part.size() > kMaxFractionDigits) {
            throw std::invalid_argument("more than 6 fractional digits: '" + std::string(whole) + "'");
        }
        if (int_part.empty() && frac_part.empty()) {
            throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
        }
        const std::int64_t ip = int_part.empty() ? 0 : parse_int(int_part, whole);
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
        const std::int64_t fp = frac_part.empty() ? 0 : parse_int(frac_part, whole);
        result = Rational(ip * scale + fp, scale);
    } else {
        result = Rational(parse_int(text, whole));
    }
    return negative ? -result : result;
}

std::string to_string(const Rational& value) {
    const auto num = value.numerator();
    const auto den = value.denominator();
    if (den == 1) return std::to_string(num);

    // Terminating decimal iff den = 2^a 5^b; find the smallest 10^k divisible by den.
    std::int64_t pow10 = 1;
    for (int digits = 1; digits <= kMaxFractionDigits; ++digits) {
        pow10 *= 10;
        if (pow10 % den != 0) continue;
        const std::int64_t scaled = num * (pow10 / den);
        const std::int64_t mag = scaled < 0 ? -scaled : scaled;
        std::string frac = std::to_string(mag % pow10);
        frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        return std::string(scaled < 0 ? "-" : "") + std::to_string(mag / pow10) + "." + frac;
    }
    return std::to_string(num) + "/" + std::to_string(den);
}

std::int64_t floor(const Rational& value) {
    const auto num = value.numerator();
    const auto den = value.denominator();
    auto q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
}

std::int64_t ceil(const Rational& value) { return -floor(-value); }

}  // namespace asymdof
