#include "billiards/orbit.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace billiards {

DirectionPair make_direction_pair(std::int64_t x, std::int64_t y) {
    if (x < 0 || y < 0) throw std::invalid_argument("direction pair must be non-negative");
    if (x == 0 && y == 0) throw std::invalid_argument("direction pair (0, 0) is degenerate");
    if (std::gcd(x, y) != 1)
        throw std::invalid_argument("direction pair (" + std::to_string(x) + ", " + std::to_string(y) +
                                    ") is not coprime");
    return {x, y};
}

bool in_obtuse_range(const DirectionPair& d) {
    return d.x < d.y || (d.x == 1 && d.y == 1) || (d.x == 0 && d.y == 1);
}

bool in_hexagon_range(const DirectionPair& d) { return d.x < 3 * d.y && d.y < d.x; }

ScaledDirection unfolding_direction(const DirectionPair& d) {
    if (d.x == 0) return {0, 1};
    return {1, Rational(d.y, d.x)};
}

Rational checked_offset(const Rational& a) {
    if (!(a > -1 && a < 1)) throw std::invalid_argument("offset " + a.to_string() + " outside (-1, 1)");
    return a;
}

std::string_view name(OrbitStatus s) {
    switch (s) {
        case OrbitStatus::Periodic: return "periodic";
        case OrbitStatus::Singular: return "singular";
        case OrbitStatus::Truncated: return "truncated";
    }
    return "?";
}

ReducedAngle reduce_angle(std::int64_t x, std::int64_t y) {
    if (y == 0) throw std::invalid_argument("initial angle 0 runs along the edge");
    const DirectionPair d = make_direction_pair(x, y);
    ReducedAngle out;
    std::int64_t nx = d.x, ny = d.y;
    if (3 * d.y <= d.x) {
        out.kind = Reduction::Rotate60;
        out.linear = rotation60(1);
        nx = d.x - 3 * d.y;
        ny = d.x + d.y;
    } else if (d.y < d.x) {
        out.kind = Reduction::Reflect60;
        out.linear = reflection_matrix(InclineClass::D60);
        nx = 3 * d.y - d.x;
        ny = d.x + d.y;
    }
    const std::int64_t g = std::gcd(nx, ny);
    out.pair = {nx / g, ny / g};
    return out;
}

RebasedUnfolding rebase_unfolding(const Rational& a, std::int64_t x, std::int64_t y) {
    RebasedUnfolding out;
    out.angle = reduce_angle(x, y);
    if (out.angle.kind == Reduction::None) {
        out.offset = a;
        return out;
    }
    // The ray meets the 120-degree incline x + y = 1 through C = (1, 0); a
    // symmetry fixing C carries that incline onto the horizontal.
    const ScaledPoint c{1, 0};
    const ScaledDirection dir{x, y};
    out.t_rebase = (1 - a) / Rational(x + y);
    const ScaledPoint hit = ScaledPoint{a, 0} + out.t_rebase * dir;
    AffineMap g;
    if (out.angle.kind == Reduction::Rotate60) {
        const AffineMap to_c = translation(ScaledPoint{0, 0} - c);
        g = translation(c - ScaledPoint{0, 0}).after(AffineMap{rotation60(1), {0, 0}}).after(to_c);
    } else {
        g = reflection_across(line_through(InclineClass::D60, c));
    }
    const ScaledPoint image = g(hit);
    if (!image.y.is_zero()) throw std::logic_error("rebase did not land on a horizontal");
    const Rational k = floor((image.x + 1) / 2);
    out.frame = translation({-2 * k, 0}).after(g);
    const Rational na = image.x - 2 * k;
    if (na != -1) out.offset = na;  // -1 is the vertex A
    return out;
}

std::int64_t first_alignment(std::int64_t x, std::int64_t y) {
    if (x == 0) return 2;
    return (x - y) % 2 == 0 ? x : 2 * x;
}

UnfoldTrace unfold_trace(const Tessellation& tess, const Rational& a, const DirectionPair& d, const Rational& T) {
    UnfoldTrace out;
    out.crossings = tess.crossings({a, 0}, unfolding_direction(d), T);
    out.edges_cut = static_cast<std::int64_t>(out.crossings.size());
    out.vertex_hit = std::any_of(out.crossings.begin(), out.crossings.end(),
                                 [](const EdgeCrossing& c) { return c.is_vertex_hit; });
    if (!out.crossings.empty()) out.terminal_class = out.crossings.back().line.cls;
    return out;
}

bool endpoints_aligned(const Tessellation& tess, const DirectionPair& d, const Rational& T) {
    return tess.is_translation(T * unfolding_direction(d));
}

OrbitResult detect_period_unfolding(const Tessellation& tess, const Rational& a, const DirectionPair& d) {
    if (tess.shape() == ShapeId::Hexagon)
        throw std::invalid_argument("the unfolding tracer does not apply to the hexagon");
    checked_offset(a);
    OrbitResult out;
    if (tess.is_vertex({a, 0})) {
        out.status = OrbitStatus::Singular;
        return out;
    }
    const std::int64_t unit = d.x == 0 ? 1 : d.x;
    const std::int64_t limit = 4 * unit;
    const auto crossings = tess.crossings({a, 0}, unfolding_direction(d), limit);

    std::size_t seen = 0;
    for (std::int64_t T = unit; T <= limit; T += unit) {
        while (seen < crossings.size() && crossings[seen].t <= T) {
            if (crossings[seen].is_vertex_hit) {
                out.status = OrbitStatus::Singular;
                return out;
            }
            ++seen;
        }
        if (!endpoints_aligned(tess, d, T)) continue;
        if (seen % 2 != 0) continue;
        out.status = OrbitStatus::Periodic;
        out.period = static_cast<std::int64_t>(seen);
        out.T = T;
        if (seen > 0) out.terminal_class = crossings[seen - 1].line.cls;
        return out;
    }
    throw std::logic_error("no aligned even closure up to 4x for (" + std::to_string(d.x) + ", " +
                           std::to_string(d.y) + "), a = " + a.to_string());
}

std::int64_t default_max_bounces(const DirectionPair& d) { return 10 * (16 * d.y + 8 * d.x); }

namespace {

struct Wall {
    InclineClass cls;
    LevelForm form;
    Rational offset;
    int inside;  // sign of form(p) - offset for interior p
};

struct Walls {
    std::vector<Wall> walls;
    std::vector<ScaledPoint> vertices;
    ScaledPoint center;

    explicit Walls(const Tessellation& tess) : vertices(tess.fundamental_polygon()) {
        Rational sx, sy;
        for (const auto& v : vertices) {
            sx += v.x;
            sy += v.y;
        }
        const Rational n(static_cast<std::int64_t>(vertices.size()));
        center = {sx / n, sy / n};
        for (const InclineLine& l : tess.polygon_lines()) {
            const LevelForm f = level_form(l.cls);
            walls.push_back({l.cls, f, l.offset, (f(center) - l.offset).sign()});
        }
    }

    bool is_corner(const ScaledPoint& p) const { return std::find(vertices.begin(), vertices.end(), p) != vertices.end(); }

    struct Exit {
        Rational t;
        std::size_t wall;
    };

    // First wall crossed leaving pos along w (pos inside or on the boundary).
    Exit exit(const ScaledPoint& pos, const ScaledDirection& w) const {
        std::optional<Exit> best;
        for (std::size_t i = 0; i < walls.size(); ++i) {
            const Wall& wall = walls[i];
            const Rational rate = wall.form(w);
            if (rate.sign() == 0 || rate.sign() == wall.inside) continue;  // not heading out through this wall
            const Rational t = (wall.offset - wall.form(pos)) / rate;
            if (!best || t < best->t) best = Exit{t, i};
        }
        if (!best) throw std::logic_error("no exit from a bounded polygon");
        return *best;
    }
};

}  // namespace

FoldedState fold_into_polygon(const Tessellation& tess, const ScaledPoint& p, const ScaledDirection& dir) {
    if (dir.is_zero()) throw std::invalid_argument("fold: zero direction");
    const Walls walls(tess);
    if (tess.is_vertex(p)) return {p, dir, true};

    // Walk a straight segment from an interior reference point to p, reflecting at walls.
    std::vector<ScaledPoint> references{walls.center};
    const std::size_t n = walls.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& v = walls.vertices[i];
        const auto& u = walls.vertices[(i + 1) % n];
        references.push_back({(walls.center.x * 7 + v.x * 2 + u.x) / 10, (walls.center.y * 7 + v.y * 2 + u.y) / 10});
    }
    for (const ScaledPoint& ref : references) {
        ScaledPoint pos = ref;
        ScaledDirection w = p - ref;
        Mat2 linear = Mat2::identity();
        Rational remaining = 1;
        bool blocked = false;
        while (remaining.sign() > 0 && !w.is_zero()) {
            const auto e = walls.exit(pos, w);
            if (e.t >= remaining) {
                pos = pos + remaining * w;
                break;
            }
            pos = pos + e.t * w;
            if (walls.is_corner(pos)) {
                blocked = true;
                break;
            }
            const Mat2& m = reflection_matrix(walls.walls[e.wall].cls);
            w = m(w);
            linear = m * linear;
            remaining -= e.t;
        }
        if (blocked) continue;

        ScaledDirection folded = linear(dir);
        if (walls.is_corner(pos)) return {pos, folded, true};
        for (const Wall& wall : walls.walls) {
            if (wall.form(pos) != wall.offset) continue;
            const Rational rate = wall.form(folded);
            if (rate.is_zero()) throw std::invalid_argument("fold: direction runs along an edge");
            if (rate.sign() != wall.inside) folded = reflect_direction(folded, wall.cls);
        }
        return {pos, folded, false};
    }
    throw std::logic_error("fold: every reference walk hit a vertex");
}

OrbitResult fold(const Tessellation& tess, const ScaledPoint& start, const ScaledDirection& dir,
                 std::int64_t max_bounces) {
    OrbitResult out;
    const FoldedState s0 = fold_into_polygon(tess, start, dir);
    if (s0.singular) {
        out.status = OrbitStatus::Singular;
        return out;
    }
    const Walls walls(tess);
    ScaledPoint pos = s0.point;
    ScaledDirection w = s0.direction;
    std::int64_t strikes = 0;
    while (true) {
        const auto e = walls.exit(pos, w);
        if (strikes > 0 && w == s0.direction) {
            // Does this segment pass through the initial point (at parameter in [0, t))?
            const ScaledDirection gap = s0.point - pos;
            if (cross(gap, w).is_zero()) {
                const Rational s = w.dx.is_zero() ? gap.dy / w.dy : gap.dx / w.dx;
                if (s.sign() >= 0 && s < e.t) {
                    out.status = OrbitStatus::Periodic;
                    out.period = strikes;
                    return out;
                }
            }
        }
        if (strikes >= max_bounces) {
            out.status = OrbitStatus::Truncated;
            return out;
        }
        const ScaledPoint hit = pos + e.t * w;
        if (walls.is_corner(hit)) {
            out.status = OrbitStatus::Singular;
            return out;
        }
        const InclineClass cls = walls.walls[e.wall].cls;
        out.directions.push_back(w);
        out.bounce_points.push_back(hit);
        out.struck_classes.push_back(cls);
        w = reflect_direction(w, cls);
        pos = hit;
        ++strikes;
    }
}

std::vector<Rational> sample_offsets(const DirectionPair& d, std::size_t count, std::uint64_t seed) {
    std::int64_t q = 12 * std::max<std::int64_t>(d.x, 1) + 1;
    while (std::gcd(q, d.y) != 1) q += 12;
    std::vector<std::int64_t> ks;
    ks.reserve(static_cast<std::size_t>(2 * q - 1));
    for (std::int64_t k = -(q - 1); k <= q - 1; ++k) ks.push_back(k);
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL ^ (static_cast<std::uint64_t>(d.x) << 32) ^
                        static_cast<std::uint64_t>(d.y));
    for (std::size_t i = ks.size() - 1; i > 0; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i);
        std::swap(ks[i], ks[pick(rng)]);
    }
    ks.resize(std::min(count, ks.size()));
    std::vector<Rational> out;
    out.reserve(ks.size());
    for (auto k : ks) out.emplace_back(k, q);
    return out;
}

}  // namespace billiards
