#pragma once

// Exact planar geometry in the scaled frame.
//
// A scaled point (x, y) sits at true position (x, sqrt(3) * y): the horizontal
// unit is half the base of the 120-degree triangle and the vertical unit is
// sqrt(3) times that. In this frame every incline of the tessellations has a
// rational slope and every reflection across an incline is a rational affine
// map, so no irrational number ever enters a predicate.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "billiards/rational.hpp"

namespace billiards {

struct ScaledDirection;

struct ScaledPoint {
    Rational x;
    Rational y;

    friend bool operator==(const ScaledPoint&, const ScaledPoint&) = default;
};

struct ScaledDirection {
    Rational dx;
    Rational dy;

    bool is_zero() const { return dx.is_zero() && dy.is_zero(); }
    friend bool operator==(const ScaledDirection&, const ScaledDirection&) = default;
};

ScaledPoint operator+(const ScaledPoint& p, const ScaledDirection& d);
ScaledPoint operator-(const ScaledPoint& p, const ScaledDirection& d);
ScaledDirection operator-(const ScaledPoint& p, const ScaledPoint& q);
ScaledDirection operator+(const ScaledDirection& a, const ScaledDirection& b);
ScaledDirection operator-(const ScaledDirection& a);
ScaledDirection operator*(const Rational& s, const ScaledDirection& d);

/// dx^2 + 3 dy^2: the squared true length of d (with unit u = 1).
Rational quadratic_form(const ScaledDirection& d);
/// Squared true distance between two scaled points.
Rational true_distance_squared(const ScaledPoint& p, const ScaledPoint& q);
/// a.dx * b.dy - a.dy * b.dx
Rational cross(const ScaledDirection& a, const ScaledDirection& b);
/// Equality up to positive scaling.
bool same_direction(const ScaledDirection& a, const ScaledDirection& b);

enum class InclineClass : std::uint8_t { H0, D30, D60, V90, D120, D150 };

inline constexpr std::array<InclineClass, 6> kAllInclines = {
    InclineClass::H0, InclineClass::D30, InclineClass::D60,
    InclineClass::V90, InclineClass::D120, InclineClass::D150};

int degrees(InclineClass c);
std::string_view name(InclineClass c);
std::optional<InclineClass> incline_from_name(std::string_view s);

/// Scaled slope tan(angle)/sqrt(3); empty for the vertical class.
std::optional<Rational> scaled_slope(InclineClass c);

/// Linear functional phi(x, y) = a*x + b*y whose level sets are the lines of
/// one incline class. The level value is the line's offset: the y-intercept
/// for every class except V90, where it is the x-intercept.
struct LevelForm {
    Rational a;
    Rational b;
    Rational operator()(const ScaledPoint& p) const { return a * p.x + b * p.y; }
    Rational operator()(const ScaledDirection& d) const { return a * d.dx + b * d.dy; }
};

LevelForm level_form(InclineClass c);

/// Class of the line through two distinct points, if it is one of the six.
std::optional<InclineClass> classify_direction(const ScaledDirection& d);

struct InclineLine {
    InclineClass cls = InclineClass::H0;
    Rational offset;

    bool contains(const ScaledPoint& p) const { return level_form(cls)(p) == offset; }
    friend bool operator==(const InclineLine&, const InclineLine&) = default;
};

/// The incline line of class c through p.
InclineLine line_through(InclineClass c, const ScaledPoint& p);

struct Mat2 {
    Rational a, b, c, d;  // [[a, b], [c, d]]

    static Mat2 identity() { return {1, 0, 0, 1}; }
    Rational det() const { return a * d - b * c; }
    ScaledDirection operator()(const ScaledDirection& v) const {
        return {a * v.dx + b * v.dy, c * v.dx + d * v.dy};
    }
    friend Mat2 operator*(const Mat2& l, const Mat2& r);
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Linear part of the reflection across a line of class c, in the scaled
/// frame: the true reflection conjugated by diag(1, 1/sqrt(3)).
const Mat2& reflection_matrix(InclineClass c);

/// Rotation by k * 60 degrees (counterclockwise, true metric) in the scaled frame.
Mat2 rotation60(int k);

struct AffineMap {
    Mat2 linear = Mat2::identity();
    ScaledDirection shift{0, 0};

    ScaledPoint operator()(const ScaledPoint& p) const {
        const ScaledDirection v = linear(ScaledDirection{p.x, p.y});
        return ScaledPoint{v.dx, v.dy} + shift;
    }
    ScaledDirection operator()(const ScaledDirection& d) const { return linear(d); }

    /// (this * other)(p) == this(other(p))
    AffineMap after(const AffineMap& other) const;
    AffineMap inverse() const;
    friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

AffineMap reflection_across(const InclineLine& line);
AffineMap translation(const ScaledDirection& v);

ScaledPoint reflect_point(const ScaledPoint& p, const InclineLine& line);
ScaledDirection reflect_direction(const ScaledDirection& d, InclineClass c);

/// Initial angle arctan(sqrt(3) * y / x) in degrees, for display only.
double angle_of(std::int64_t x, std::int64_t y);

std::string to_string(const ScaledPoint& p);
std::string to_string(const ScaledDirection& d);

}  // namespace billiards
