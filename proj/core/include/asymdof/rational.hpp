#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace asymdof {

/// Exact fraction over 64-bit integers, always in lowest terms with a
/// positive denominator. Intermediate products use 128-bit arithmetic;
/// a result that does not fit in 64 bits throws std::overflow_error.
class Rational {
   public:
    constexpr Rational() = default;
    Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t numerator, std::int64_t denominator);

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }

    Rational operator-() const;
    Rational& operator+=(const Rational& rhs) { return *this = *this + rhs; }
    Rational& operator-=(const Rational& rhs) { return *this = *this - rhs; }
    Rational& operator*=(const Rational& rhs) { return *this = *this * rhs; }
    Rational& operator/=(const Rational& rhs) { return *this = *this / rhs; }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

   private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Parses "p", "p/q" or a decimal with at most six fractional digits ("11.25").
/// Decimals are converted exactly; no binary floating point is involved.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Exact decimal when the value terminates within six fractional digits,
/// otherwise "p/q". Output always re-parses to the same value.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) {
    return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

inline bool is_integral(const Rational& value) { return value.denominator() == 1; }

/// Smallest integer >= value.
std::int64_t ceil(const Rational& value);

/// Largest integer <= value.
std::int64_t floor(const Rational& value);

}  // namespace asymdof
