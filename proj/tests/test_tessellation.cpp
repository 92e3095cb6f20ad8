#include "doctest.h"

#include <algorithm>
#include <random>

#include "billiards/orbit.hpp"
#include "billiards/tessellation.hpp"
#include "support.hpp"

using namespace billiards;

namespace {

bool has_family(const Tessellation& t, InclineClass c) { return t.family(c) != nullptr; }

// Every edge of the polygon lies on a tessellation edge of its class.
bool edges_on_tessellation(const Tessellation& t, const std::vector<ScaledPoint>& poly) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const ScaledPoint& p = poly[i];
        const ScaledPoint& q = poly[(i + 1) % poly.size()];
        const auto cls = classify_direction(q - p);
        if (!cls) return false;
        const LineFamily* fam = t.family(*cls);
        if (!fam || !fam->has_offset(line_through(*cls, p).offset)) return false;
        const ScaledPoint mid{(p.x + q.x) / 2, (p.y + q.y) / 2};
        if (!t.on_edge(p, *cls) || !t.on_edge(q, *cls) || !t.on_edge(mid, *cls)) return false;
        if (!t.is_vertex(p)) return false;
    }
    return true;
}

std::vector<ScaledPoint> reflect_polygon(const std::vector<ScaledPoint>& poly, std::size_t edge) {
    const ScaledPoint& p = poly[edge];
    const ScaledPoint& q = poly[(edge + 1) % poly.size()];
    const InclineLine l = line_through(*classify_direction(q - p), p);
    std::vector<ScaledPoint> out;
    for (const auto& v : poly) out.push_back(reflect_point(v, l));
    return out;
}

}  // namespace

TEST_CASE("family sets per shape") {
    const auto& tri = tessellation(ShapeId::Triangle120);
    for (InclineClass c : kAllInclines) CHECK(has_family(tri, c));
    const auto& rh = tessellation(ShapeId::Rhombus60);
    CHECK_FALSE(has_family(rh, InclineClass::H0));
    CHECK_FALSE(has_family(rh, InclineClass::D60));
    CHECK_FALSE(has_family(rh, InclineClass::D120));
    CHECK(has_family(rh, InclineClass::D30));
    CHECK(has_family(rh, InclineClass::V90));
    CHECK(has_family(rh, InclineClass::D150));
    const auto& kite = tessellation(ShapeId::Kite);
    CHECK(kite.family(InclineClass::V90)->has_offset(0));
}

TEST_CASE("triangle placement and unit spacing of vertical and horizontal inclines") {
    const auto& tri = tessellation(ShapeId::Triangle120);
    const auto poly = tri.fundamental_polygon();
    CHECK(std::find(poly.begin(), poly.end(), ScaledPoint{-1, 0}) != poly.end());
    CHECK(std::find(poly.begin(), poly.end(), ScaledPoint{1, 0}) != poly.end());
    CHECK(std::find(poly.begin(), poly.end(), ScaledPoint{0, Rational(1, 3)}) != poly.end());
    CHECK(tri.family(InclineClass::V90)->step == Rational(1));
    CHECK(tri.family(InclineClass::H0)->step == Rational(1));
}

TEST_CASE("barriers, strip counts and strip weights") {
    const auto& tri = tessellation(ShapeId::Triangle120);
    CHECK(tri.barrier().contains(Rational(5, 3)));
    CHECK_FALSE(tri.barrier().contains(Rational(1, 3)));
    CHECK(tri.barrier().contains(1));
    CHECK_FALSE(tri.barrier().contains(0));
    CHECK(tri.barrier().measure() == Rational(4, 3));
    CHECK(tessellation(ShapeId::Rhombus60).barrier().measure() == Rational(4, 3));

    const auto& kite = tessellation(ShapeId::Kite);
    CHECK(kite.barrier().contains(0));
    CHECK(kite.barrier().contains(Rational(1, 3)));
    CHECK_FALSE(kite.barrier().contains(Rational(5, 3)));
    CHECK(kite.barrier().contains(Rational(11, 6)));
    CHECK_FALSE(kite.barrier().contains(1));
    CHECK(kite.barrier().measure() == Rational(2, 3));

    CHECK(tri.edges_per_strip() == 4);
    CHECK(tessellation(ShapeId::Rhombus60).edges_per_strip() == 2);
    CHECK(kite.edges_per_strip() == 3);
    CHECK(tri.strip_weight() == 8);
    CHECK(tessellation(ShapeId::Rhombus60).strip_weight() == 4);
    CHECK(kite.strip_weight() == 6);
}

TEST_CASE("is_vertex examples") {
    const auto& tri = tessellation(ShapeId::Triangle120);
    CHECK(tri.is_vertex({1, 0}));
    CHECK_FALSE(tri.is_vertex({Rational(1, 2), 0}));
    CHECK(tri.is_vertex({0, Rational(1, 3)}));
    CHECK_FALSE(tri.is_vertex({0, 0}));
    CHECK(tessellation(ShapeId::Kite).is_vertex({0, 0}));
}

TEST_CASE("crossings examples") {
    const auto& tri = tessellation(ShapeId::Triangle120);
    const auto cr = tri.crossings({Rational(1, 2), 0}, {1, 1}, 2);
    CHECK(cr.size() == 10);
    for (std::size_t i = 0; i < cr.size(); ++i) {
        CHECK(cr[i].line.contains(cr[i].point));
        CHECK(cr[i].point == ScaledPoint{Rational(1, 2) + cr[i].t, cr[i].t});
        CHECK_FALSE(cr[i].is_vertex_hit);
        if (i > 0) CHECK(cr[i - 1].t < cr[i].t);
    }
    // inside the fundamental triangle, short of its boundary
    CHECK(tri.crossings({Rational(1, 5), 0}, {0, 1}, Rational(1, 10)).empty());
    const auto at_c = tri.crossings({Rational(1, 2), 0}, {1, 0}, 1);
    REQUIRE_FALSE(at_c.empty());
    CHECK(at_c.back().point == ScaledPoint{1, 0});
    CHECK(at_c.back().is_vertex_hit);
    CHECK_THROWS_AS(tri.crossings({0, 0}, {0, 0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(tri.crossings({1, 0}, {0, 1}, 1), std::invalid_argument);
}

TEST_CASE("property: tiles reached by random reflection walks sit on the tessellation (10^4 per shape)") {
    std::mt19937_64 rng(21);
    for (ShapeId shape : kAllShapes) {
        CAPTURE(name(shape));
        const auto& t = tessellation(shape);
        auto poly = t.fundamental_polygon();
        REQUIRE(edges_on_tessellation(t, poly));
        int bad = 0;
        for (int i = 0; i < 10000; ++i) {
            if (i % 40 == 0) poly = t.fundamental_polygon();
            std::uniform_int_distribution<std::size_t> pick(0, poly.size() - 1);
            poly = reflect_polygon(poly, pick(rng));
            if (!edges_on_tessellation(t, poly)) ++bad;
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("one ring of neighbours around the fundamental polygon") {
    for (ShapeId shape : kAllShapes) {
        CAPTURE(name(shape));
        const auto& t = tessellation(shape);
        const auto poly = t.fundamental_polygon();
        for (std::size_t e = 0; e < poly.size(); ++e) CHECK(edges_on_tessellation(t, reflect_polygon(poly, e)));
    }
}

TEST_CASE("property: a steep segment between consecutive horizontal levels cuts edges_per_strip non-vertical edges") {
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<std::int64_t> coord(0, 12);
    std::uniform_int_distribution<std::int64_t> level(-4, 4);
    for (ShapeId shape : {ShapeId::Triangle120, ShapeId::Rhombus60, ShapeId::Kite}) {
        CAPTURE(name(shape));
        const auto& t = tessellation(shape);
        int checked = 0;
        for (int i = 0; i < 80000 && checked < 10000; ++i) {
            std::int64_t x = coord(rng), y = coord(rng) + 1;
            // initial angles in [60, 90] degrees, mirrored to [90, 120]
            if (std::gcd(x, y) != 1 || x > y) continue;
            if (rng() % 2) x = -x;
            const Rational a = test_support::random_rational(rng, 48, 29);
            const ScaledPoint start{a, level(rng)};
            if (t.is_vertex(start)) continue;
            // (x, y) in scaled units rises by one horizontal level at parameter 1 / y.
            const auto cr = t.crossings(start, {Rational(x, y), 1}, 1);
            if (std::any_of(cr.begin(), cr.end(), [](const EdgeCrossing& c) { return c.is_vertex_hit; })) continue;
            const auto non_vertical = std::count_if(cr.begin(), cr.end(), [](const EdgeCrossing& c) {
                return c.line.cls != InclineClass::V90;
            });
            CHECK(non_vertical == t.edges_per_strip());
            ++checked;
        }
        CHECK(checked >= 10000);
    }
}

TEST_CASE("rhombus and hexagon edges are triangle-tessellation edges") {
    const auto& tri = tessellation(ShapeId::Triangle120);
    for (ShapeId shape : {ShapeId::Rhombus60, ShapeId::Hexagon}) {
        CAPTURE(name(shape));
        const auto& t = tessellation(shape);
        CHECK(t.lattice_basis() == tri.lattice_basis());
        for (const auto& f : t.families()) {
            const LineFamily* tf = tri.family(f.cls);
            REQUIRE(tf != nullptr);
            for (const Rational& r : f.residues)
                for (int k = -3; k <= 3; ++k) CHECK(tf->has_offset(r + k * f.step));
        }
        int edges = 0;
        for (const auto& tile : t.sample_tiles())
            for (std::size_t i = 0; i < tile.size(); ++i) {
                const ScaledPoint& p = tile[i];
                const ScaledPoint& q = tile[(i + 1) % tile.size()];
                const auto cls = classify_direction(q - p);
                REQUIRE(cls.has_value());
                for (int k = 0; k <= 4; ++k) {
                    const ScaledPoint s{p.x + (q.x - p.x) * Rational(k, 4), p.y + (q.y - p.y) * Rational(k, 4)};
                    CHECK(tri.on_edge(s, *cls));
                }
                CHECK(tri.is_vertex(p));
                ++edges;
            }
        CHECK(edges > 0);
    }
}

TEST_CASE("hexagon placement") {
    const auto& hex = tessellation(ShapeId::Hexagon);
    const auto poly = hex.fundamental_polygon();
    CHECK(poly.size() == 6);
    // six equal sides in the true metric
    for (std::size_t i = 0; i < poly.size(); ++i)
        CHECK(true_distance_squared(poly[i], poly[(i + 1) % 6]) == Rational(4, 3));
    // the horizontal chord y = 0 crosses the hexagon between two vertices
    CHECK(hex.is_vertex({-1, 0}));
    CHECK(hex.is_vertex({1, 0}));
    CHECK_FALSE(hex.is_vertex({0, 0}));
    CHECK_FALSE(hex.is_vertex({0, Rational(1, 3)}));
}

TEST_CASE("shape names round trip") {
    for (ShapeId s : kAllShapes) CHECK(shape_from_name(name(s)) == s);
    CHECK_FALSE(shape_from_name("pentagon").has_value());
}
