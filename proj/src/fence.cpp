#include "billiards/fence.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

namespace billiards {

Rational fence_coordinate(const Rational& alpha, const Rational& beta) { return mod(alpha + beta, 2); }

namespace {

Rational contact_value(const DirectionPair& d, const Rational& a, const Rational& i) {
    return fence_coordinate(i, Rational(d.y, d.x) * (i - a));
}

void require_positive_x(const DirectionPair& d) {
    if (d.x < 1) throw std::invalid_argument("contact points need x >= 1");
}

}  // namespace

ContactProfile contact_points(const Tessellation& tess, const Rational& a, const DirectionPair& d,
                              const Rational& T) {
    require_positive_x(d);
    if (T.sign() <= 0) throw std::invalid_argument("contact_points: T must be positive");
    ContactProfile out;
    out.rise = Rational(d.y, d.x) * T;
    if (!out.rise.is_integer()) throw std::invalid_argument("contact_points: rise " + out.rise.to_string() + " is not integral");

    const Rational first = floor(a) + 1;
    const Rational last = floor(a + T);
    std::map<Rational, int> counts;
    for (Rational i = first; i <= last; i += 1) {
        const Rational c = contact_value(d, a, i);
        out.sequence.push_back(c);
        ++counts[c];
    }
    for (const auto& [value, mult] : counts) {
        const bool barrier = tess.barrier().contains(value);
        out.points.push_back({value, mult, barrier});
        if (barrier) {
            ++out.b;
            out.barrier_hits += mult;
        }
    }
    out.N = tess.edges_per_strip() * out.rise.to_i64() + out.barrier_hits;

    if (!out.points.empty()) {
        const int m = out.points.front().multiplicity;
        const bool same_mult = std::all_of(out.points.begin(), out.points.end(),
                                           [&](const ContactPoint& p) { return p.multiplicity == m; });
        const std::size_t n = out.points.size();
        const Rational gap = n == 1 ? Rational(2) : out.points[1].value - out.points[0].value;
        bool even = true;
        for (std::size_t k = 0; k < n && even; ++k) {
            const Rational next = k + 1 < n ? out.points[k + 1].value : out.points[0].value + 2;
            even = next - out.points[k].value == gap;
        }
        if (same_mult && even) {
            out.m = m;
            out.spacing = gap;
        }
    }
    return out;
}

bool contacts_periodic(const DirectionPair& d, const Rational& a, std::int64_t T) {
    require_positive_x(d);
    for (std::int64_t i = 0; i < 2 * d.x; ++i) {
        if (contact_value(d, a, Rational(i)) != contact_value(d, a, Rational(i + T))) return false;
    }
    return true;
}

MultiplicitySpacing multiplicity_and_spacing(std::int64_t x, std::int64_t y) {
    if (x < 1) throw std::invalid_argument("multiplicity_and_spacing needs x >= 1");
    if ((x - y) % 2 == 0) return {2, Rational(2, x)};
    return {1, Rational(1, x)};
}

std::vector<std::int64_t> barrier_count_range(ShapeId shape, std::int64_t x, std::int64_t y) {
    if (shape == ShapeId::Hexagon) throw std::invalid_argument("no barrier count for the hexagon");
    if (x == 0) return {0};
    const Rational ratio = tessellation(shape).barrier().measure() / multiplicity_and_spacing(x, y).s;
    const std::int64_t lo = floor(ratio).to_i64();
    if (ratio.is_integer()) return {lo};
    return {lo, lo + 1};
}

std::vector<std::int64_t> barrier_count_range(std::int64_t x, std::int64_t y) {
    return barrier_count_range(ShapeId::Triangle120, x, y);
}

std::int64_t barrier_count_at(ShapeId shape, const Rational& a, std::int64_t x, std::int64_t y) {
    if (shape == ShapeId::Hexagon) throw std::invalid_argument("no barrier count for the hexagon");
    if (x == 0) return 0;
    const Rational s = multiplicity_and_spacing(x, y).s;
    const Rational shift = a * Rational(y, x);
    const std::int64_t inside =
        (floor((Rational(5, 3) + shift) / s) - floor((Rational(1, 3) + shift) / s)).to_i64();
    if (shape == ShapeId::Kite) return (Rational(2) / s).to_i64() - inside;
    return inside;
}

std::int64_t barrier_count_at(const Rational& a, std::int64_t x, std::int64_t y) {
    return barrier_count_at(ShapeId::Triangle120, a, x, y);
}

Branch branch_of(std::int64_t x, std::int64_t y) {
    return {static_cast<int>(x % 3), (x - y) % 2 == 0 ? 0 : 1};
}

std::string to_string(const Branch& b) { return std::to_string(b.i) + "-" + std::to_string(b.j); }

std::int64_t LinearExpr::operator()(std::int64_t x, std::int64_t y) const {
    const std::int64_t top = cx * x + c;
    if (top % 3 != 0) throw std::logic_error(to_string(*this) + " is not integral here");
    return cy * y + top / 3;
}

namespace {

std::string term(std::int64_t k, const char* var) { return (k == 1 ? std::string() : std::to_string(k)) + var; }

std::string signed_constant(std::int64_t c) { return c == 0 ? "" : (c > 0 ? "+" : "") + std::to_string(c); }

}  // namespace

std::string to_string(const LinearExpr& e) {
    const std::string head = term(e.cy, "y") + "+";
    if (e.cx % 3 == 0 && e.c % 3 == 0) return head + term(e.cx / 3, "x") + signed_constant(e.c / 3);
    if (e.c == 0) return head + term(e.cx, "x") + "/3";
    return head + "(" + term(e.cx, "x") + signed_constant(e.c) + ")/3";
}

namespace {

using Rows = std::array<std::vector<LinearExpr>, 6>;

std::size_t row_index(const Branch& b) { return static_cast<std::size_t>(2 * b.i + b.j); }

// Row order: (0,0) (0,1) (1,0) (1,1) (2,0) (2,1); entries as (cy, cx, c).
const Rows& edge_rows(ShapeId shape) {
    static const auto make = [](std::int64_t w, std::int64_t k) {
        // k = 4 for the triangle and rhombus, 2 for the kite.
        if (k == 4)
            return Rows{{{{w, 4, 0}},
                         {{w, 4, 0}},
                         {{w, 4, 2}, {w, 4, -4}},
                         {{w, 4, -1}, {w, 4, 2}},
                         {{w, 4, -2}, {w, 4, 4}},
                         {{w, 4, 1}, {w, 4, -2}}}};
        return Rows{{{{w, 2, 0}},
                     {{w, 2, 0}},
                     {{w, 2, -2}, {w, 2, 4}},
                     {{w, 2, 1}, {w, 2, -2}},
                     {{w, 2, 2}, {w, 2, -4}},
                     {{w, 2, -1}, {w, 2, 2}}}};
    };
    static const Rows triangle = make(8, 4);
    static const Rows rhombus = make(4, 4);
    static const Rows kite = make(6, 2);
    switch (shape) {
        case ShapeId::Triangle120: return triangle;
        case ShapeId::Rhombus60: return rhombus;
        case ShapeId::Kite: return kite;
        case ShapeId::Hexagon: break;
    }
    throw std::invalid_argument("no edge-count table for the hexagon");
}

const Rows& period_rows(ShapeId shape) {
    static const Rows triangle{{{{4, 2, 0}},
                                {{8, 4, 0}},
                                {{4, 2, -2}, {8, 4, 2}},
                                {{16, 8, -2}, {8, 4, 2}},
                                {{4, 2, 2}, {8, 4, -2}},
                                {{16, 8, 2}, {8, 4, -2}}}};
    static const Rows rhombus{{{{2, 2, 0}},
                               {{4, 4, 0}},
                               {{2, 2, -2}, {4, 4, 2}},
                               {{4, 4, 2}, {8, 8, -2}},
                               {{2, 2, 2}, {4, 4, -2}},
                               {{4, 4, -2}, {8, 8, 2}}}};
    static const Rows kite{{{{3, 1, 0}},
                            {{6, 2, 0}},
                            {{3, 1, 2}, {6, 2, -2}},
                            {{6, 2, -2}, {12, 4, 2}},
                            {{3, 1, -2}, {6, 2, 2}},
                            {{6, 2, 2}, {12, 4, -2}}}};
    switch (shape) {
        case ShapeId::Triangle120: return triangle;
        case ShapeId::Rhombus60: return rhombus;
        case ShapeId::Kite: return kite;
        case ShapeId::Hexagon: break;
    }
    throw std::invalid_argument("no period table for the hexagon");
}

std::vector<std::int64_t> evaluate_sorted(const std::vector<LinearExpr>& rows, std::int64_t x, std::int64_t y) {
    std::vector<std::int64_t> out;
    for (const auto& e : rows) out.push_back(e(x, y));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string pair_text(std::int64_t x, std::int64_t y) {
    return "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
}

}  // namespace

const std::vector<LinearExpr>& edge_count_table(ShapeId shape, const Branch& b) {
    return edge_rows(shape)[row_index(b)];
}

const std::vector<LinearExpr>& period_table(ShapeId shape, const Branch& b) {
    return period_rows(shape)[row_index(b)];
}

std::vector<EdgeCount> edge_count_options(ShapeId shape, std::int64_t x, std::int64_t y) {
    make_direction_pair(x, y);
    const std::vector<std::int64_t> stored = evaluate_sorted(edge_count_table(shape, branch_of(x, y)), x, y);

    const std::int64_t base = tessellation(shape).strip_weight() * y;
    std::vector<std::int64_t> computed;
    if (x == 0) {
        computed.push_back(base);
    } else {
        const int m = multiplicity_and_spacing(x, y).m;
        for (std::int64_t b : barrier_count_range(shape, x, y)) computed.push_back(base + m * b);
    }
    std::sort(computed.begin(), computed.end());
    if (computed != stored)
        throw std::logic_error("edge-count table disagrees with the decomposition for " + std::string(name(shape)) +
                               " " + pair_text(x, y));

    std::vector<EdgeCount> out;
    for (std::int64_t N : stored) out.push_back({N, static_cast<int>(N % 4)});
    return out;
}

std::int64_t period_from_edge_count(std::int64_t x, std::int64_t y, std::int64_t N) {
    if ((x - y) % 2 == 0) return N % 4 == 0 ? N / 2 : N;
    return N % 2 == 0 ? N : 2 * N;
}

bool PeriodPrediction::admits(std::int64_t p) const {
    return std::find(candidates.begin(), candidates.end(), p) != candidates.end();
}

PeriodPrediction period_formula(ShapeId shape, std::int64_t x, std::int64_t y) {
    PeriodPrediction out;
    out.branch = branch_of(x, y);
    for (const EdgeCount& e : edge_count_options(shape, x, y)) {
        out.edge_counts.push_back(e.N);
        out.candidates.push_back(period_from_edge_count(x, y, e.N));
    }
    std::sort(out.candidates.begin(), out.candidates.end());
    out.candidates.erase(std::unique(out.candidates.begin(), out.candidates.end()), out.candidates.end());
    if (out.candidates != evaluate_sorted(period_table(shape, out.branch), x, y))
        throw std::logic_error("period table disagrees with the parity analysis for " + std::string(name(shape)) +
                               " " + pair_text(x, y));
    out.mono = out.candidates.size() == 1;
    return out;
}

bool doubling_relation_holds(const PeriodPrediction& p) {
    if (p.candidates.size() != 2) return true;
    const std::int64_t p1 = p.candidates[0], p2 = p.candidates[1];
    return p2 == 2 * p1 + 2 || p2 == 2 * p1 - 2;
}

}  // namespace billiards
