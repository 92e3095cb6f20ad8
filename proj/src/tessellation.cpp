#include "billiards/tessellation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace billiards {

std::string_view name(ShapeId s) {
    switch (s) {
        case ShapeId::Triangle120: return "triangle";
        case ShapeId::Rhombus60: return "rhombus";
        case ShapeId::Kite: return "kite";
        case ShapeId::Hexagon: return "hexagon";
    }
    return "?";
}

std::optional<ShapeId> shape_from_name(std::string_view s) {
    if (s == "triangle" || s == "Triangle120") return ShapeId::Triangle120;
    if (s == "rhombus" || s == "Rhombus60") return ShapeId::Rhombus60;
    if (s == "kite" || s == "Kite") return ShapeId::Kite;
    if (s == "hexagon" || s == "Hexagon") return ShapeId::Hexagon;
    return std::nullopt;
}

bool FenceInterval::contains(const Rational& c) const {
    const bool above = lo_closed ? c >= lo : c > lo;
    const bool below = hi_closed ? c <= hi : c < hi;
    return above && below;
}

bool FenceSet::contains(const Rational& c) const {
    const Rational r = mod(c, 2);
    return std::any_of(parts.begin(), parts.end(), [&](const FenceInterval& i) { return i.contains(r); });
}

Rational FenceSet::measure() const {
    Rational total;
    for (const auto& p : parts) total += p.length();
    return total;
}

bool LineFamily::has_offset(const Rational& offset) const {
    const Rational r = mod(offset, step);
    return std::find(residues.begin(), residues.end(), r) != residues.end();
}

std::vector<ScaledPoint> fundamental_polygon(ShapeId shape) {
    const Rational third(1, 3);
    const Rational half(1, 2);
    switch (shape) {
        case ShapeId::Triangle120:
            return {{-1, 0}, {1, 0}, {0, third}};
        case ShapeId::Rhombus60:
            return {{-1, 0}, {0, -third}, {1, 0}, {0, third}};
        case ShapeId::Kite:
            return {{-1, 0}, {0, 0}, {0, third}, {-half, half}};
        case ShapeId::Hexagon:
            return {{-1, 0}, {0, -third}, {1, 0}, {1, Rational(2, 3)}, {0, 1}, {-1, Rational(2, 3)}};
    }
    throw std::invalid_argument("unknown shape");
}

namespace {

using Tile = std::vector<ScaledPoint>;

bool point_less(const ScaledPoint& a, const ScaledPoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

struct PointLess {
    bool operator()(const ScaledPoint& a, const ScaledPoint& b) const { return point_less(a, b); }
};

Tile sorted_copy(Tile t) {
    std::sort(t.begin(), t.end(), point_less);
    return t;
}

struct TileLess {
    bool operator()(const Tile& a, const Tile& b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), point_less);
    }
};

ScaledPoint centroid(const Tile& t) {
    Rational sx, sy;
    for (const auto& p : t) {
        sx += p.x;
        sy += p.y;
    }
    const Rational n(static_cast<std::int64_t>(t.size()));
    return {sx / n, sy / n};
}

InclineClass edge_class(const ScaledPoint& p, const ScaledPoint& q) {
    auto c = classify_direction(q - p);
    if (!c) throw std::logic_error("polygon edge " + to_string(p) + "-" + to_string(q) + " is not an incline");
    return *c;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

// Extended Euclid: returns g = gcd(a, b) >= 0 with s*a + t*b = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
    std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
        const std::int64_t q = a / b;
        std::tie(a, b) = std::make_pair(b, a - q * b);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    if (a < 0) {
        a = -a;
        s0 = -s0;
        t0 = -t0;
    }
    s = s0;
    t = t0;
    return a;
}

// Hermite basis {(a, b), (0, c)} of the integer lattice spanned by vecs.
std::pair<std::array<std::int64_t, 2>, std::array<std::int64_t, 2>> hermite_basis(
    const std::vector<std::array<std::int64_t, 2>>& vecs) {
    std::int64_t a = 0, b = 0, c = 0;
    for (auto [p, q] : vecs) {
        if (p != 0) {
            if (a == 0) {
                a = p;
                b = q;
                if (a < 0) {
                    a = -a;
                    b = -b;
                }
                continue;
            }
            std::int64_t s = 0, t = 0;
            const std::int64_t g = ext_gcd(a, p, s, t);
            const std::int64_t nb = s * b + t * q;
            // (p/g) * (a, b) - (a/g) * (p, q) has zero first coordinate.
            const std::int64_t rest = (p / g) * b - (a / g) * q;
            a = g;
            b = nb;
            c = std::gcd(c, rest);
        } else {
            c = std::gcd(c, q);
        }
    }
    if (a == 0 || c == 0) throw std::logic_error("translation lattice is degenerate");
    c = std::abs(c);
    b = ((b % c) + c) % c;
    return {{a, b}, {0, c}};
}

bool on_segment(const LatticeCoords& r, const LatticeCoords& a, const LatticeCoords& b) {
    const Rational du = b.u - a.u, dv = b.v - a.v;
    const Rational wu = r.u - a.u, wv = r.v - a.v;
    if (du.is_zero() && dv.is_zero()) return wu.is_zero() && wv.is_zero();
    if (!(du * wv - dv * wu).is_zero()) return false;
    const Rational dot = wu * du + wv * dv;
    return dot.sign() >= 0 && dot <= du * du + dv * dv;
}

// Clips segment a-b (lattice coordinates) to the closed unit square.
std::optional<std::pair<LatticeCoords, LatticeCoords>> clip_to_cell(const LatticeCoords& a, const LatticeCoords& b) {
    Rational s0 = 0, s1 = 1;
    const Rational du = b.u - a.u, dv = b.v - a.v;
    auto clip = [&](const Rational& start, const Rational& delta) {
        // keep 0 <= start + s * delta <= 1
        if (delta.is_zero()) return start.sign() >= 0 && start <= 1;
        Rational lo = (0 - start) / delta;
        Rational hi = (1 - start) / delta;
        if (lo > hi) std::swap(lo, hi);
        s0 = std::max(s0, lo);
        s1 = std::min(s1, hi);
        return s0 <= s1;
    };
    if (!clip(a.u, du) || !clip(a.v, dv)) return std::nullopt;
    return std::make_pair(LatticeCoords{a.u + s0 * du, a.v + s0 * dv}, LatticeCoords{a.u + s1 * du, a.v + s1 * dv});
}

}  // namespace

const LineFamily* Tessellation::family(InclineClass c) const {
    for (const auto& f : families_)
        if (f.cls == c) return &f;
    return nullptr;
}

LatticeCoords Tessellation::lattice_coords(const ScaledPoint& p) const {
    const ScaledDirection c = to_lattice_(ScaledDirection{p.x, p.y});
    return {c.dx, c.dy};
}

ScaledPoint Tessellation::from_lattice(const LatticeCoords& c) const {
    return ScaledPoint{0, 0} + (c.u * basis_u_ + c.v * basis_v_);
}

LatticeCoords Tessellation::reduce(const ScaledPoint& p) const {
    LatticeCoords c = lattice_coords(p);
    c.u -= floor(c.u);
    c.v -= floor(c.v);
    return c;
}

bool Tessellation::is_translation(const ScaledDirection& v) const {
    const ScaledDirection c = to_lattice_(v);
    return c.dx.is_integer() && c.dy.is_integer();
}

bool Tessellation::is_vertex(const ScaledPoint& p) const {
    const LatticeCoords r = reduce(p);
    return std::binary_search(vertex_reps_.begin(), vertex_reps_.end(), r);
}

bool Tessellation::on_edge(const ScaledPoint& p, InclineClass c) const {
    const auto& pieces = pieces_[static_cast<std::size_t>(c)];
    if (pieces.empty()) return false;
    const LatticeCoords r = reduce(p);
    return std::any_of(pieces.begin(), pieces.end(), [&](const CellPiece& s) { return on_segment(r, s.a, s.b); });
}

bool Tessellation::on_any_edge(const ScaledPoint& p) const {
    return std::any_of(kAllInclines.begin(), kAllInclines.end(), [&](InclineClass c) { return on_edge(p, c); });
}

std::vector<EdgeCrossing> Tessellation::crossings(const ScaledPoint& origin, const ScaledDirection& dir,
                                                  const Rational& t_max) const {
    if (dir.is_zero()) throw std::invalid_argument("crossings: zero direction");
    if (is_vertex(origin)) throw std::invalid_argument("crossings: origin " + to_string(origin) + " is a vertex");
    std::vector<EdgeCrossing> out;
    if (t_max.sign() <= 0) return out;
    for (const LineFamily& fam : families_) {
        const LevelForm phi = level_form(fam.cls);
        const Rational start = phi(origin);
        const Rational rate = phi(dir);
        if (rate.is_zero()) continue;  // parallel to the family
        const Rational end = start + t_max * rate;
        for (const Rational& r : fam.residues) {
            // Offsets r + k*step strictly after `start` and up to `end` along the ray.
            Rational k_first, k_last;
            if (rate.sign() > 0) {
                k_first = floor((start - r) / fam.step) + 1;
                k_last = floor((end - r) / fam.step);
            } else {
                k_first = ceil((end - r) / fam.step);
                k_last = ceil((start - r) / fam.step) - 1;
            }
            for (Rational k = k_first; k <= k_last; k += 1) {
                const Rational offset = r + k * fam.step;
                const Rational t = (offset - start) / rate;
                const ScaledPoint p = origin + t * dir;
                if (!on_edge(p, fam.cls)) continue;
                out.push_back({t, p, {fam.cls, offset}, false});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const EdgeCrossing& a, const EdgeCrossing& b) {
        if (a.t != b.t) return a.t < b.t;
        return a.line.cls < b.line.cls;
    });
    std::vector<EdgeCrossing> merged;
    merged.reserve(out.size());
    for (auto& c : out) {
        if (!merged.empty() && merged.back().t == c.t) {
            merged.back().is_vertex_hit = true;  // two edge classes meet only at vertices
            continue;
        }
        c.is_vertex_hit = is_vertex(c.point);
        merged.push_back(std::move(c));
    }
    return merged;
}

Tessellation build(ShapeId shape) {
    Tessellation tess;
    tess.shape_ = shape;
    tess.polygon_ = fundamental_polygon(shape);
    const std::size_t n = tess.polygon_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = tess.polygon_[i];
        const auto& q = tess.polygon_[(i + 1) % n];
        tess.polygon_lines_.push_back(line_through(edge_class(p, q), p));
    }

    // Reflection closure over a box around the origin.
    const Rational radius = 12;
    std::set<Tile, TileLess> seen;
    std::deque<Tile> queue;
    seen.insert(sorted_copy(tess.polygon_));
    queue.push_back(tess.polygon_);
    while (!queue.empty()) {
        Tile tile = std::move(queue.front());
        queue.pop_front();
        for (std::size_t i = 0; i < tile.size(); ++i) {
            const auto& p = tile[i];
            const auto& q = tile[(i + 1) % tile.size()];
            const AffineMap m = reflection_across(line_through(edge_class(p, q), p));
            Tile image;
            image.reserve(tile.size());
            for (const auto& v : tile) image.push_back(m(v));
            const ScaledPoint c = centroid(image);
            if (abs(c.x) > radius || abs(c.y) > radius) continue;
            if (seen.insert(sorted_copy(image)).second) queue.push_back(std::move(image));
        }
        tess.tiles_.push_back(std::move(tile));
    }

    // Translation lattice from tiles that are translates of the fundamental polygon.
    const Tile base = sorted_copy(tess.polygon_);
    std::vector<ScaledDirection> shifts;
    std::int64_t denom = 1;
    for (const Tile& t : seen) {
        const ScaledDirection v = t[0] - base[0];
        if (v.is_zero()) continue;
        bool translate = true;
        for (std::size_t i = 1; i < t.size() && translate; ++i) translate = (t[i] - base[i]) == v;
        if (!translate) continue;
        shifts.push_back(v);
        denom = lcm64(denom, lcm64(v.dx.den_i64(), v.dy.den_i64()));
    }
    std::vector<std::array<std::int64_t, 2>> ints;
    for (const auto& v : shifts) ints.push_back({(v.dx * denom).to_i64(), (v.dy * denom).to_i64()});
    const auto [e1, e2] = hermite_basis(ints);
    const Rational D(denom);
    tess.basis_u_ = {Rational(e1[0]) / D, Rational(e1[1]) / D};
    tess.basis_v_ = {Rational(e2[0]) / D, Rational(e2[1]) / D};
    const Mat2 cols{tess.basis_u_.dx, tess.basis_v_.dx, tess.basis_u_.dy, tess.basis_v_.dy};
    const Rational det = cols.det();
    tess.to_lattice_ = {cols.d / det, -cols.b / det, -cols.c / det, cols.a / det};

    // The closure box must contain the lattice cell with room for a tile on every side.
    for (const ScaledDirection& corner :
         {tess.basis_u_, tess.basis_v_, tess.basis_u_ + tess.basis_v_}) {
        if (abs(corner.dx) > radius - 6 || abs(corner.dy) > radius - 6)
            throw std::logic_error("lattice cell exceeds the closure box");
    }

    std::set<LatticeCoords> vertex_reps;
    std::set<std::pair<ScaledPoint, ScaledPoint>, bool (*)(const std::pair<ScaledPoint, ScaledPoint>&,
                                                           const std::pair<ScaledPoint, ScaledPoint>&)>
        edges([](const auto& a, const auto& b) {
            if (a.first != b.first) return point_less(a.first, b.first);
            return point_less(a.second, b.second);
        });
    for (const Tile& t : tess.tiles_) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            vertex_reps.insert(tess.reduce(t[i]));
            ScaledPoint p = t[i], q = t[(i + 1) % t.size()];
            if (point_less(q, p)) std::swap(p, q);
            edges.insert({p, q});
        }
    }
    tess.vertex_reps_.assign(vertex_reps.begin(), vertex_reps.end());

    std::array<std::set<std::pair<LatticeCoords, LatticeCoords>>, 6> pieces;
    for (const auto& [p, q] : edges) {
        const InclineClass c = edge_class(p, q);
        auto clipped = clip_to_cell(tess.lattice_coords(p), tess.lattice_coords(q));
        if (!clipped) continue;
        auto [a, b] = *clipped;
        if (b < a) std::swap(a, b);
        pieces[static_cast<std::size_t>(c)].insert({a, b});
    }
    for (InclineClass c : kAllInclines) {
        const auto& set = pieces[static_cast<std::size_t>(c)];
        if (set.empty()) continue;
        auto& out = tess.pieces_[static_cast<std::size_t>(c)];
        for (const auto& [a, b] : set) out.push_back({a, b});

        const LevelForm phi = level_form(c);
        LineFamily fam;
        fam.cls = c;
        fam.step = gcd(phi(tess.basis_u_), phi(tess.basis_v_));
        std::set<Rational> residues;
        for (const auto& [a, b] : set) residues.insert(mod(phi(tess.from_lattice(a)), fam.step));
        fam.residues.assign(residues.begin(), residues.end());
        tess.families_.push_back(std::move(fam));
    }

    const Rational third(1, 3);
    switch (shape) {
        case ShapeId::Triangle120:
        case ShapeId::Rhombus60:
            tess.barrier_.parts = {{third, Rational(5, 3), false, true}};
            break;
        case ShapeId::Kite:
            tess.barrier_.parts = {{0, third, true, true}, {Rational(5, 3), 2, false, false}};
            break;
        case ShapeId::Hexagon:
            break;
    }

    // Non-vertical edges cut by a generic segment rising one unit from a horizontal level.
    const auto probe = tess.crossings({Rational(1, 7), 0}, {Rational(2, 11), 1}, 1);
    for (const auto& c : probe) {
        if (c.is_vertex_hit) throw std::logic_error("strip probe hit a vertex");
        if (c.line.cls != InclineClass::V90) ++tess.edges_per_strip_;
    }
    return tess;
}

const Tessellation& tessellation(ShapeId shape) {
    static const std::array<Tessellation, 4> cache = {build(ShapeId::Triangle120), build(ShapeId::Rhombus60),
                                                      build(ShapeId::Kite), build(ShapeId::Hexagon)};
    return cache[static_cast<std::size_t>(shape)];
}

}  // namespace billiards
