#include "billiards/rational.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace billiards {

namespace {

using i128 = __int128;

constexpr i128 kI64Max = std::numeric_limits<std::int64_t>::max();
constexpr i128 kI64Min = std::numeric_limits<std::int64_t>::min();

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits_i64(i128 v) { return v >= kI64Min && v <= kI64Max; }

mpz_class to_mpz(i128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

bool mpz_fits_i64(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    *this = from_i128(num, den);
}

Rational::Rational(const mpq_class& q) { *this = from_mpq(q); }

Rational Rational::from_i128(i128 num, i128 den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num == 0) return Rational{};
    const i128 g = gcd128(num, den);
    num /= g;
    den /= g;
    Rational r;
    if (fits_i64(num) && fits_i64(den)) {
        r.rep_ = Small{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
    } else {
        mpq_class q(to_mpz(num), to_mpz(den));
        q.canonicalize();
        r.rep_ = std::move(q);
    }
    return r;
}

Rational Rational::from_mpq(mpq_class q) {
    q.canonicalize();
    Rational r;
    if (mpz_fits_i64(q.get_num()) && mpz_fits_i64(q.get_den())) {
        r.rep_ = Small{q.get_num().get_si(), q.get_den().get_si()};
    } else {
        r.rep_ = std::move(q);
    }
    return r;
}

mpq_class Rational::to_mpq() const {
    if (is_small()) {
        mpq_class q(mpz_class(static_cast<long>(small().num)), mpz_class(static_cast<long>(small().den)));
        return q;
    }
    return std::get<mpq_class>(rep_);
}

Rational Rational::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    auto valid_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    text = trim(text);
    const auto slash = text.find('/');
    std::string_view num = trim(text.substr(0, slash));
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
    if (!valid_int(num) || !valid_int(den))
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    auto strip_plus = [](std::string_view s) { return !s.empty() && s.front() == '+' ? s.substr(1) : s; };
    mpz_class n(std::string(strip_plus(num)), 10);
    mpz_class d(std::string(strip_plus(den)), 10);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    return from_mpq(mpq_class(n, d));
}

bool Rational::is_integer() const {
    return is_small() ? small().den == 1 : std::get<mpq_class>(rep_).get_den() == 1;
}

bool Rational::is_zero() const { return sign() == 0; }

int Rational::sign() const {
    if (is_small()) return (small().num > 0) - (small().num < 0);
    return sgn(std::get<mpq_class>(rep_));
}

std::string Rational::numerator_str() const {
    return is_small() ? std::to_string(small().num) : std::get<mpq_class>(rep_).get_num().get_str();
}

std::string Rational::denominator_str() const {
    return is_small() ? std::to_string(small().den) : std::get<mpq_class>(rep_).get_den().get_str();
}

std::string Rational::to_fraction_string() const { return numerator_str() + "/" + denominator_str(); }

std::string Rational::to_string() const {
    return is_integer() ? numerator_str() : to_fraction_string();
}

double Rational::to_double() const {
    if (is_small()) return static_cast<double>(small().num) / static_cast<double>(small().den);
    return std::get<mpq_class>(rep_).get_d();
}

std::int64_t Rational::num_i64() const {
    if (!is_small()) throw std::overflow_error("Rational numerator exceeds 64 bits");
    return small().num;
}

std::int64_t Rational::den_i64() const {
    if (!is_small()) throw std::overflow_error("Rational denominator exceeds 64 bits");
    return small().den;
}

std::int64_t Rational::to_i64() const {
    if (!is_integer()) throw std::domain_error("Rational is not an integer: " + to_string());
    return num_i64();
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.is_small() && b.is_small()) {
        const auto& x = a.small();
        const auto& y = b.small();
        if (x.den == y.den) return Rational::from_i128(i128(x.num) + y.num, x.den);
        return Rational::from_i128(i128(x.num) * y.den + i128(y.num) * x.den, i128(x.den) * y.den);
    }
    return Rational::from_mpq(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational& a, const Rational& b) {
    if (a.is_small() && b.is_small()) {
        const auto& x = a.small();
        const auto& y = b.small();
        if (x.den == y.den) return Rational::from_i128(i128(x.num) - y.num, x.den);
        return Rational::from_i128(i128(x.num) * y.den - i128(y.num) * x.den, i128(x.den) * y.den);
    }
    return Rational::from_mpq(a.to_mpq() - b.to_mpq());
}

Rational operator*(const Rational& a, const Rational& b) {
    if (a.is_small() && b.is_small()) {
        const auto& x = a.small();
        const auto& y = b.small();
        return Rational::from_i128(i128(x.num) * y.num, i128(x.den) * y.den);
    }
    return Rational::from_mpq(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    if (a.is_small() && b.is_small()) {
        const auto& x = a.small();
        const auto& y = b.small();
        return Rational::from_i128(i128(x.num) * y.den, i128(x.den) * y.num);
    }
    return Rational::from_mpq(a.to_mpq() / b.to_mpq());
}

Rational Rational::operator-() const {
    if (is_small()) return from_i128(-i128(small().num), small().den);
    return from_mpq(-std::get<mpq_class>(rep_));
}

bool operator==(const Rational& a, const Rational& b) {
    if (a.is_small() && b.is_small()) return a.small().num == b.small().num && a.small().den == b.small().den;
    if (a.is_small() != b.is_small()) return false;  // canonical: big values never fit in Small
    return std::get<mpq_class>(a.rep_) == std::get<mpq_class>(b.rep_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.is_small() && b.is_small()) {
        const i128 l = i128(a.small().num) * b.small().den;
        const i128 r = i128(b.small().num) * a.small().den;
        return l <=> r;
    }
    const int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::size_t Rational::hash() const {
    if (is_small()) {
        std::size_t h = std::hash<std::int64_t>{}(small().num);
        return h ^ (std::hash<std::int64_t>{}(small().den) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
    return std::hash<std::string>{}(to_fraction_string());
}

Rational floor(const Rational& q) {
    if (q.is_integer()) return q;
    if (q.is_small()) {
        const std::int64_t n = q.small().num;
        const std::int64_t d = q.small().den;
        std::int64_t f = n / d;
        if ((n % d != 0) && (n < 0)) --f;
        return Rational(f);
    }
    const mpq_class v = q.to_mpq();
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return Rational(mpq_class(r));
}

Rational ceil(const Rational& q) { return -floor(-q); }

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

Rational mod(const Rational& q, const Rational& m) {
    if (m.sign() <= 0) throw std::domain_error("mod: modulus must be positive");
    return q - m * floor(q / m);
}

Rational gcd(const Rational& a, const Rational& b) {
    if (a.is_zero()) return abs(b);
    if (b.is_zero()) return abs(a);
    const mpq_class x = a.to_mpq();
    const mpq_class y = b.to_mpq();
    // gcd(p/q, r/s) = gcd(p*s, r*q) / (q*s)
    mpz_class g;
    mpz_class ps = x.get_num() * y.get_den();
    mpz_class rq = y.get_num() * x.get_den();
    mpz_gcd(g.get_mpz_t(), ps.get_mpz_t(), rq.get_mpz_t());
    return Rational(mpq_class(g, x.get_den() * y.get_den()));
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

}  // namespace billiards
