#pragma once

// Exact signed rational numbers.
//
// Values that fit in 64-bit numerator/denominator are kept inline and
// combined with 128-bit intermediates; anything larger is promoted to a GMP
// rational and demoted again once it fits. Every value is in lowest terms
// with a positive denominator, so equality is field-wise.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace billiards {

namespace detail {
struct SmallRational {
    std::int64_t num = 0;
    std::int64_t den = 1;
};
}  // namespace detail

class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : rep_(Small{n, 1}) {}  // NOLINT: implicit from integers is intended
    Rational(int n) : Rational(static_cast<std::int64_t>(n)) {}  // NOLINT
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(const mpq_class& q);

    /// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input
    /// or a zero denominator.
    static Rational parse(std::string_view text);

    bool is_integer() const;
    bool is_zero() const;
    int sign() const;

    /// Numerator/denominator as decimal strings (arbitrary size).
    std::string numerator_str() const;
    std::string denominator_str() const;

    /// Always "p/q", including integers ("3/1"). Used for serialization.
    std::string to_fraction_string() const;
    /// "p" for integers, "p/q" otherwise. Used for human-readable output.
    std::string to_string() const;
    double to_double() const;

    /// Narrowing accessors; throw std::overflow_error when the value does not fit.
    std::int64_t num_i64() const;
    std::int64_t den_i64() const;
    std::int64_t to_i64() const;  // requires is_integer()

    mpq_class to_mpq() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const;

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend Rational floor(const Rational& q);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    std::size_t hash() const;

private:
    using Small = detail::SmallRational;
    std::variant<Small, mpq_class> rep_;

    bool is_small() const { return std::holds_alternative<Small>(rep_); }
    const Small& small() const { return std::get<Small>(rep_); }
    static Rational from_i128(__int128 num, __int128 den);
    static Rational from_mpq(mpq_class q);
};

Rational floor(const Rational& q);       // largest integer <= q
Rational ceil(const Rational& q);        // smallest integer >= q
Rational abs(const Rational& q);
/// Representative of q modulo m in [0, m); m > 0.
Rational mod(const Rational& q, const Rational& m);
/// gcd of two rationals: the positive generator of the subgroup aZ + bZ (0 if both are 0).
Rational gcd(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& q);

struct RationalHash {
    std::size_t operator()(const Rational& q) const { return q.hash(); }
};

}  // namespace billiards
