#pragma once

// Periodic-orbit engines.
//
// Two independent routes to the period of an orbit:
//  * the unfolding tracer walks the straight line (a, 0) + t (1, y/x) through
//    the tessellation, looking for the first translationally aligned endpoint
//    reached after an even number of edge crossings;
//  * the folding oracle bounces a particle inside the fundamental polygon
//    until its (position, direction) state repeats.
// The oracle never consults alignment or any closed-form count.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "billiards/geometry.hpp"
#include "billiards/tessellation.hpp"

namespace billiards {

/// Direction of an unfolding, parallel to the scaled vector (x, y).
struct DirectionPair {
    std::int64_t x = 0;
    std::int64_t y = 1;

    friend bool operator==(const DirectionPair&, const DirectionPair&) = default;
    friend auto operator<=>(const DirectionPair&, const DirectionPair&) = default;
};

/// Validates gcd(x, y) == 1, x, y >= 0 and (x, y) != (0, 0).
DirectionPair make_direction_pair(std::int64_t x, std::int64_t y);

/// Initial angle in [60, 90] degrees: x < y, or the boundary pairs (1, 1) and (0, 1).
bool in_obtuse_range(const DirectionPair& d);
/// Initial angle in (30, 60) degrees: x/3 < y < x.
bool in_hexagon_range(const DirectionPair& d);

/// The unfolding's scaled direction: (1, y/x), or (0, 1) when x == 0.
ScaledDirection unfolding_direction(const DirectionPair& d);

/// Offset of the initial point (a, 0); requires -1 < a < 1.
Rational checked_offset(const Rational& a);

enum class OrbitStatus { Periodic, Singular, Truncated };

std::string_view name(OrbitStatus s);

struct OrbitResult {
    OrbitStatus status = OrbitStatus::Truncated;
    std::int64_t period = 0;                     // Periodic only
    std::optional<std::int64_t> T;               // unfolding tracer: horizontal extent at closure
    std::optional<InclineClass> terminal_class;  // unfolding tracer: class of the final crossing
    std::vector<ScaledPoint> bounce_points;      // folding oracle: strikes, in order
    std::vector<InclineClass> struck_classes;    // folding oracle: class of each struck edge
    std::vector<ScaledDirection> directions;     // folding oracle: outgoing direction of each segment
};

// -- angle normalization ----------------------------------------------------

enum class Reduction { None, Rotate60, Reflect60 };

struct ReducedAngle {
    DirectionPair pair;
    Reduction kind = Reduction::None;
    Mat2 linear = Mat2::identity();  // maps the old direction to a positive multiple of the new one
};

/// Brings any initial angle in (0, 90] into [60, 90]:
///  * angle <= 30 (3y <= x): rotate by +60 degrees;
///  * 30 < angle < 60: reflect in a 60-degree incline (angle -> 120 - angle).
/// Throws std::invalid_argument for y == 0 or a non-coprime pair.
ReducedAngle reduce_angle(std::int64_t x, std::int64_t y);

/// The reduced unfolding of the orbit starting at (a, 0) with direction (x, y):
/// frame is a symmetry of the triangle, rhombus and kite tessellations carrying
/// the old ray from parameter t_rebase (in units of (x, y)) onto the new ray
/// starting at (offset, 0). offset is empty when the rebased start is a vertex.
struct RebasedUnfolding {
    ReducedAngle angle;
    AffineMap frame;
    Rational t_rebase;
    std::optional<Rational> offset;
};

RebasedUnfolding rebase_unfolding(const Rational& a, std::int64_t x, std::int64_t y);

// -- unfolding tracer -------------------------------------------------------

/// Least T > 0 with T and (y/x) T integral and 2 | T + (y/x) T; 2 for x == 0.
std::int64_t first_alignment(std::int64_t x, std::int64_t y);

struct UnfoldTrace {
    std::int64_t edges_cut = 0;
    bool vertex_hit = false;
    std::optional<InclineClass> terminal_class;
    std::vector<EdgeCrossing> crossings;
};

/// Edges cut by (a, 0) + t * unfolding_direction(d), 0 < t <= T.
UnfoldTrace unfold_trace(const Tessellation& tess, const Rational& a, const DirectionPair& d, const Rational& T);

/// True when (a, 0) and its image at parameter T differ by a lattice translation.
bool endpoints_aligned(const Tessellation& tess, const DirectionPair& d, const Rational& T);

/// Least T (a multiple of x, up to 4x) with aligned endpoints and an even
/// number of crossings. Not defined for the hexagon. Throws std::logic_error
/// when no such T exists up to 4x.
OrbitResult detect_period_unfolding(const Tessellation& tess, const Rational& a, const DirectionPair& d);

// -- folding oracle ---------------------------------------------------------

/// Default strike budget: 10 * (16y + 8x).
std::int64_t default_max_bounces(const DirectionPair& d);

/// Folds an arbitrary plane point (not a vertex) and direction into the
/// fundamental polygon, following the tile structure.
struct FoldedState {
    ScaledPoint point;
    ScaledDirection direction;
    bool singular = false;
};

FoldedState fold_into_polygon(const Tessellation& tess, const ScaledPoint& p, const ScaledDirection& dir);

/// Direct billiard simulation inside the fundamental polygon. `start` may be
/// any point of the plane; it is first folded into the polygon together with
/// `dir`. Periodic once (point, direction) exactly repeats. Throws
/// std::invalid_argument for a zero direction or one running along an edge.
OrbitResult fold(const Tessellation& tess, const ScaledPoint& start, const ScaledDirection& dir,
                 std::int64_t max_bounces);

// -- sampling ---------------------------------------------------------------

/// Deterministic stream of offsets k/q, q the least of 12 max(x, 1) + 1 + 12j
/// coprime to y (so coprime to 2x, 3 and y), shuffled by seed. Prefix-stable: asking for more keeps the first ones.
std::vector<Rational> sample_offsets(const DirectionPair& d, std::size_t count, std::uint64_t seed);

}  // namespace billiards
