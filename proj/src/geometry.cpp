#include "billiards/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace billiards {

ScaledPoint operator+(const ScaledPoint& p, const ScaledDirection& d) { return {p.x + d.dx, p.y + d.dy}; }
ScaledPoint operator-(const ScaledPoint& p, const ScaledDirection& d) { return {p.x - d.dx, p.y - d.dy}; }
ScaledDirection operator-(const ScaledPoint& p, const ScaledPoint& q) { return {p.x - q.x, p.y - q.y}; }
ScaledDirection operator+(const ScaledDirection& a, const ScaledDirection& b) { return {a.dx + b.dx, a.dy + b.dy}; }
ScaledDirection operator-(const ScaledDirection& a) { return {-a.dx, -a.dy}; }
ScaledDirection operator*(const Rational& s, const ScaledDirection& d) { return {s * d.dx, s * d.dy}; }

Rational quadratic_form(const ScaledDirection& d) { return d.dx * d.dx + 3 * d.dy * d.dy; }

Rational true_distance_squared(const ScaledPoint& p, const ScaledPoint& q) { return quadratic_form(p - q); }

Rational cross(const ScaledDirection& a, const ScaledDirection& b) { return a.dx * b.dy - a.dy * b.dx; }

bool same_direction(const ScaledDirection& a, const ScaledDirection& b) {
    if (a.is_zero() || b.is_zero()) return false;
    return cross(a, b).is_zero() && (a.dx * b.dx + a.dy * b.dy).sign() > 0;
}

int degrees(InclineClass c) { return 30 * static_cast<int>(c); }

std::string_view name(InclineClass c) {
    switch (c) {
        case InclineClass::H0: return "H0";
        case InclineClass::D30: return "D30";
        case InclineClass::D60: return "D60";
        case InclineClass::V90: return "V90";
        case InclineClass::D120: return "D120";
        case InclineClass::D150: return "D150";
    }
    return "?";
}

std::optional<InclineClass> incline_from_name(std::string_view s) {
    for (InclineClass c : kAllInclines)
        if (name(c) == s) return c;
    return std::nullopt;
}

std::optional<Rational> scaled_slope(InclineClass c) {
    switch (c) {
        case InclineClass::H0: return Rational(0);
        case InclineClass::D30: return Rational(1, 3);
        case InclineClass::D60: return Rational(1);
        case InclineClass::V90: return std::nullopt;
        case InclineClass::D120: return Rational(-1);
        case InclineClass::D150: return Rational(-1, 3);
    }
    return std::nullopt;
}

LevelForm level_form(InclineClass c) {
    if (c == InclineClass::V90) return {1, 0};
    return {-*scaled_slope(c), 1};
}

std::optional<InclineClass> classify_direction(const ScaledDirection& d) {
    if (d.is_zero()) return std::nullopt;
    if (d.dx.is_zero()) return InclineClass::V90;
    const Rational slope = d.dy / d.dx;
    for (InclineClass c : kAllInclines) {
        auto s = scaled_slope(c);
        if (s && *s == slope) return c;
    }
    return std::nullopt;
}

InclineLine line_through(InclineClass c, const ScaledPoint& p) { return {c, level_form(c)(p)}; }

Mat2 operator*(const Mat2& l, const Mat2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}

namespace {

// [[cos 2t, sqrt3 sin 2t], [sin 2t / sqrt3, -cos 2t]] for t = 0, 30, ..., 150 degrees.
const std::array<Mat2, 6>& reflection_table() {
    static const std::array<Mat2, 6> table = {
        Mat2{1, 0, 0, -1},
        Mat2{Rational(1, 2), Rational(3, 2), Rational(1, 2), Rational(-1, 2)},
        Mat2{Rational(-1, 2), Rational(3, 2), Rational(1, 2), Rational(1, 2)},
        Mat2{-1, 0, 0, 1},
        Mat2{Rational(-1, 2), Rational(-3, 2), Rational(-1, 2), Rational(1, 2)},
        Mat2{Rational(1, 2), Rational(-3, 2), Rational(-1, 2), Rational(-1, 2)},
    };
    return table;
}

}  // namespace

const Mat2& reflection_matrix(InclineClass c) { return reflection_table()[static_cast<std::size_t>(c)]; }

Mat2 rotation60(int k) {
    const Mat2 r{Rational(1, 2), Rational(-3, 2), Rational(1, 2), Rational(1, 2)};
    k = ((k % 6) + 6) % 6;
    Mat2 out = Mat2::identity();
    for (int i = 0; i < k; ++i) out = r * out;
    return out;
}

AffineMap AffineMap::after(const AffineMap& other) const {
    return {linear * other.linear, linear(other.shift) + shift};
}

AffineMap AffineMap::inverse() const {
    const Rational det = linear.det();
    if (det.is_zero()) throw std::domain_error("AffineMap: singular linear part");
    const Mat2 inv{linear.d / det, -linear.b / det, -linear.c / det, linear.a / det};
    return {inv, -inv(shift)};
}

AffineMap reflection_across(const InclineLine& line) {
    const Mat2& m = reflection_matrix(line.cls);
    // Fix a base point q0 on the line: p -> q0 + M (p - q0).
    const ScaledDirection q0 = line.cls == InclineClass::V90 ? ScaledDirection{line.offset, 0}
                                                             : ScaledDirection{0, line.offset};
    return {m, q0 + -m(q0)};
}

AffineMap translation(const ScaledDirection& v) { return {Mat2::identity(), v}; }

ScaledPoint reflect_point(const ScaledPoint& p, const InclineLine& line) { return reflection_across(line)(p); }

ScaledDirection reflect_direction(const ScaledDirection& d, InclineClass c) { return reflection_matrix(c)(d); }

double angle_of(std::int64_t x, std::int64_t y) {
    if (x == 0) return 90.0;
    return std::atan(std::sqrt(3.0) * static_cast<double>(y) / static_cast<double>(x)) * 180.0 / std::numbers::pi;
}

std::string to_string(const ScaledPoint& p) { return "(" + p.x.to_string() + ", " + p.y.to_string() + ")"; }

std::string to_string(const ScaledDirection& d) { return "<" + d.dx.to_string() + ", " + d.dy.to_string() + ">"; }

}  // namespace billiards
