#pragma once

// Edge tessellations generated by the four tables.
//
// A tessellation is built by reflecting the fundamental polygon across its
// edges until a neighbourhood of the origin is covered. From those tiles we
// extract the translation lattice, one lattice cell's worth of vertices and
// edge pieces, and the arithmetic progressions of line offsets per incline
// class. All queries afterwards are O(1) lattice reductions.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "billiards/geometry.hpp"

namespace billiards {

enum class ShapeId { Triangle120, Rhombus60, Kite, Hexagon };

inline constexpr std::array<ShapeId, 4> kAllShapes = {ShapeId::Triangle120, ShapeId::Rhombus60, ShapeId::Kite,
                                                      ShapeId::Hexagon};

std::string_view name(ShapeId s);
/// Accepts "triangle", "rhombus", "kite", "hexagon" (and the enum spellings).
std::optional<ShapeId> shape_from_name(std::string_view s);

/// An interval on the fence R/2Z, with representatives in [0, 2).
struct FenceInterval {
    Rational lo;
    Rational hi;
    bool lo_closed = false;
    bool hi_closed = true;

    bool contains(const Rational& c) const;
    Rational length() const { return hi - lo; }
};

struct FenceSet {
    std::vector<FenceInterval> parts;

    /// c is reduced mod 2 first.
    bool contains(const Rational& c) const;
    Rational measure() const;
};

/// Lines of one incline class carrying edges: offsets r + k*step for each residue r.
struct LineFamily {
    InclineClass cls = InclineClass::H0;
    Rational step;
    std::vector<Rational> residues;  // in [0, step)

    bool has_offset(const Rational& offset) const;
};

struct EdgeCrossing {
    Rational t;
    ScaledPoint point;
    InclineLine line;
    bool is_vertex_hit = false;
};

struct LatticeCoords {
    Rational u;
    Rational v;
    friend bool operator==(const LatticeCoords&, const LatticeCoords&) = default;
    friend auto operator<=>(const LatticeCoords&, const LatticeCoords&) = default;
};

class Tessellation {
public:
    ShapeId shape() const { return shape_; }

    /// Counterclockwise vertex list of the fundamental polygon.
    const std::vector<ScaledPoint>& fundamental_polygon() const { return polygon_; }
    /// Incline line of edge i (from vertex i to vertex i+1).
    const std::vector<InclineLine>& polygon_lines() const { return polygon_lines_; }

    const std::vector<LineFamily>& families() const { return families_; }
    const LineFamily* family(InclineClass c) const;

    /// Part of the fence whose contact points are vertical-edge crossings.
    const FenceSet& barrier() const { return barrier_; }
    /// Non-vertical edges cut per unit of vertical rise.
    int edges_per_strip() const { return edges_per_strip_; }
    /// Coefficient of y in the N_{2x} decomposition (2 * edges_per_strip).
    int strip_weight() const { return 2 * edges_per_strip_; }

    /// Basis of the translation lattice (translations mapping the tessellation to itself).
    std::pair<ScaledDirection, ScaledDirection> lattice_basis() const { return {basis_u_, basis_v_}; }
    bool is_translation(const ScaledDirection& v) const;
    LatticeCoords lattice_coords(const ScaledPoint& p) const;
    ScaledPoint from_lattice(const LatticeCoords& c) const;
    /// Lattice coordinates reduced into [0, 1)^2.
    LatticeCoords reduce(const ScaledPoint& p) const;

    bool is_vertex(const ScaledPoint& p) const;
    /// True when p lies on a (closed) edge of class c.
    bool on_edge(const ScaledPoint& p, InclineClass c) const;
    bool on_any_edge(const ScaledPoint& p) const;

    /// Every edge crossing of origin + t * dir for t in (0, t_max], ordered by t.
    /// Crossings at a common point are merged; those at vertices are flagged.
    /// Throws std::invalid_argument for a zero direction or a vertex origin.
    std::vector<EdgeCrossing> crossings(const ScaledPoint& origin, const ScaledDirection& dir,
                                        const Rational& t_max) const;

    /// Tiles generated during construction (for rendering and closure tests).
    const std::vector<std::vector<ScaledPoint>>& sample_tiles() const { return tiles_; }
    /// Vertex representatives of one lattice cell, in lattice coordinates.
    const std::vector<LatticeCoords>& vertex_representatives() const { return vertex_reps_; }

    friend Tessellation build(ShapeId shape);

private:
    struct CellPiece {
        LatticeCoords a;
        LatticeCoords b;
    };

    ShapeId shape_ = ShapeId::Triangle120;
    std::vector<ScaledPoint> polygon_;
    std::vector<InclineLine> polygon_lines_;
    std::vector<LineFamily> families_;
    FenceSet barrier_;
    int edges_per_strip_ = 0;
    ScaledDirection basis_u_;
    ScaledDirection basis_v_;
    Mat2 to_lattice_;  // inverse of [basis_u basis_v]
    std::vector<LatticeCoords> vertex_reps_;
    std::array<std::vector<CellPiece>, 6> pieces_;
    std::vector<std::vector<ScaledPoint>> tiles_;
};

/// Builds a tessellation from scratch (a few milliseconds).
Tessellation build(ShapeId shape);

/// Shared immutable instance per shape, built on first use.
const Tessellation& tessellation(ShapeId shape);

/// Fundamental polygon of a shape in the scaled frame (counterclockwise).
std::vector<ScaledPoint> fundamental_polygon(ShapeId shape);

}  // namespace billiards
