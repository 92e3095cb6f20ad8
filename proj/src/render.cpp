#include "billiards/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "billiards/fence.hpp"

namespace billiards {

std::optional<RenderMode> render_mode_from_name(std::string_view s) {
    if (s == "unfold") return RenderMode::Unfold;
    if (s == "fold") return RenderMode::Fold;
    if (s == "both") return RenderMode::Both;
    return std::nullopt;
}

namespace {

const double kSqrt3 = std::sqrt(3.0);

const char* class_color(InclineClass c) {
    switch (c) {
        case InclineClass::H0: return "#1f77b4";
        case InclineClass::D30: return "#2ca02c";
        case InclineClass::D60: return "#9467bd";
        case InclineClass::V90: return "#d62728";
        case InclineClass::D120: return "#8c564b";
        case InclineClass::D150: return "#e377c2";
    }
    return "#000000";
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

struct Box {
    double x0, x1, y0, y1;
};

struct Edge {
    ScaledPoint p, q;
    InclineClass cls;
};

// Tile edges whose midpoints fall in the unit lattice cell.
std::vector<Edge> cell_edges(const Tessellation& tess) {
    std::set<std::array<Rational, 4>> seen;
    std::vector<Edge> out;
    for (const auto& tile : tess.sample_tiles()) {
        for (std::size_t i = 0; i < tile.size(); ++i) {
            ScaledPoint p = tile[i], q = tile[(i + 1) % tile.size()];
            const ScaledPoint mid{(p.x + q.x) / 2, (p.y + q.y) / 2};
            const LatticeCoords c = tess.lattice_coords(mid);
            if (!floor(c.u).is_zero() || !floor(c.v).is_zero()) continue;
            if (std::make_pair(q.x, q.y) < std::make_pair(p.x, p.y)) std::swap(p, q);
            if (!seen.insert({p.x, p.y, q.x, q.y}).second) continue;
            out.push_back({p, q, *classify_direction(q - p)});
        }
    }
    return out;
}

class Panel {
public:
    Panel(std::string id, Box box, double ppu) : id_(std::move(id)), box_(box), ppu_(ppu) {}

    double width() const { return (box_.x1 - box_.x0) * ppu_; }
    double height() const { return (box_.y1 - box_.y0) * kSqrt3 * ppu_; }

    std::string X(double x) const { return num((x - box_.x0) * ppu_); }
    std::string Y(double y) const { return num((box_.y1 - y) * kSqrt3 * ppu_); }

    void line(const ScaledPoint& p, const ScaledPoint& q, const std::string& style) {
        body_ << "  <line x1=\"" << X(p.x.to_double()) << "\" y1=\"" << Y(p.y.to_double()) << "\" x2=\""
              << X(q.x.to_double()) << "\" y2=\"" << Y(q.y.to_double()) << "\" " << style << "/>\n";
    }

    void dot(const ScaledPoint& p, double r, const std::string& fill) {
        body_ << "  <circle cx=\"" << X(p.x.to_double()) << "\" cy=\"" << Y(p.y.to_double()) << "\" r=\"" << num(r)
              << "\" fill=\"" << fill << "\"/>\n";
    }

    void polyline(const std::vector<ScaledPoint>& pts, const std::string& style) {
        body_ << "  <polyline points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            body_ << (i ? " " : "") << X(pts[i].x.to_double()) << "," << Y(pts[i].y.to_double());
        body_ << "\" " << style << "/>\n";
    }

    void text(double x, double y, const std::string& s) {
        body_ << "  <text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"monospace\" font-size=\"12\">"
              << s << "</text>\n";
    }

    void tessellation_lines(const Tessellation& tess) {
        const auto edges = cell_edges(tess);
        double umin = 1e300, umax = -1e300, vmin = 1e300, vmax = -1e300;
        for (double cx : {box_.x0, box_.x1})
            for (double cy : {box_.y0, box_.y1}) {
                const LatticeCoords c = tess.lattice_coords(
                    {Rational(static_cast<std::int64_t>(std::floor(cx * 6)), 6),
                     Rational(static_cast<std::int64_t>(std::floor(cy * 6)), 6)});
                umin = std::min(umin, c.u.to_double());
                umax = std::max(umax, c.u.to_double());
                vmin = std::min(vmin, c.v.to_double());
                vmax = std::max(vmax, c.v.to_double());
            }
        std::set<std::pair<double, double>> vertices;
        for (auto i = static_cast<std::int64_t>(std::floor(umin)) - 1; i <= static_cast<std::int64_t>(std::ceil(umax)); ++i)
            for (auto j = static_cast<std::int64_t>(std::floor(vmin)) - 1; j <= static_cast<std::int64_t>(std::ceil(vmax)); ++j) {
                const ScaledPoint origin = tess.from_lattice({Rational(i), Rational(j)});
                const ScaledDirection shift = origin - ScaledPoint{0, 0};
                for (const Edge& e : edges) {
                    const ScaledPoint p = e.p + shift, q = e.q + shift;
                    if (!touches(p, q)) continue;
                    line(p, q, std::string("stroke=\"") + class_color(e.cls) + "\" stroke-width=\"1\"");
                    for (const ScaledPoint& v : {p, q})
                        if (tess.is_vertex(v)) vertices.insert({v.x.to_double(), v.y.to_double()});
                }
            }
        for (const auto& [vx, vy] : vertices)
            body_ << "  <circle cx=\"" << X(vx) << "\" cy=\"" << Y(vy) << "\" r=\"2\" fill=\"#444444\"/>\n";
    }

    std::string finish(double offset_x) const {
        std::ostringstream out;
        out << "<g transform=\"translate(" << num(offset_x) << ",0)\">\n";
        out << " <clipPath id=\"" << id_ << "\"><rect x=\"0\" y=\"0\" width=\"" << num(width()) << "\" height=\""
            << num(height()) << "\"/></clipPath>\n";
        out << " <rect x=\"0\" y=\"0\" width=\"" << num(width()) << "\" height=\"" << num(height())
            << "\" fill=\"#ffffff\" stroke=\"#999999\"/>\n";
        out << " <g clip-path=\"url(#" << id_ << ")\">\n" << body_.str() << " </g>\n</g>\n";
        return out.str();
    }

private:
    bool touches(const ScaledPoint& p, const ScaledPoint& q) const {
        const double px = p.x.to_double(), py = p.y.to_double(), qx = q.x.to_double(), qy = q.y.to_double();
        return std::max(px, qx) >= box_.x0 && std::min(px, qx) <= box_.x1 && std::max(py, qy) >= box_.y0 &&
               std::min(py, qy) <= box_.y1;
    }

    std::string id_;
    Box box_;
    double ppu_;
    std::ostringstream body_;
};

Rational default_length(const Tessellation& tess, const DirectionPair& d, const Rational& a) {
    if (tess.shape() != ShapeId::Hexagon) {
        const OrbitResult r = detect_period_unfolding(tess, a, d);
        if (r.status == OrbitStatus::Periodic) return Rational(*r.T);
        return Rational(first_alignment(d.x, d.y));
    }
    return Rational(2 * std::max<std::int64_t>(d.x, 1));
}

}  // namespace

RenderSummary render_svg(const RenderOptions& options) {
    const Tessellation& tess = tessellation(options.shape);
    const DirectionPair d = make_direction_pair(options.d.x, options.d.y);
    checked_offset(options.a);
    RenderSummary summary;
    std::vector<std::string> groups;
    std::vector<double> widths;
    double height = 0;

    if (options.mode != RenderMode::Fold) {
        const Rational T = options.t_max ? *options.t_max : default_length(tess, d, options.a);
        if (T.sign() <= 0) throw std::invalid_argument("render: unfolding length must be positive");
        summary.unfold_length = T;
        const ScaledPoint start{options.a, 0};
        const ScaledPoint end = start + T * unfolding_direction(d);
        Box box{std::min(start.x, end.x).to_double() - 1, std::max(start.x, end.x).to_double() + 1, -2.0 / 3,
                end.y.to_double() + 2.0 / 3};
        Panel panel("unfold", box, options.pixels_per_unit);
        panel.tessellation_lines(tess);
        panel.line(start, end, "stroke=\"#000000\" stroke-width=\"2.5\"");
        if (d.x >= 1) {
            for (Rational i = floor(options.a) + 1; i <= floor(options.a + T); i += 1) {
                const ScaledPoint p{i, Rational(d.y, d.x) * (i - options.a)};
                const bool barrier = tess.barrier().contains(fence_coordinate(p.x, p.y));
                panel.dot(p, 4, barrier ? "#e41a1c" : "#4daf4a");
            }
        }
        panel.dot(start, 4, "#000000");
        groups.push_back(panel.finish(0));
        widths.push_back(panel.width());
        height = std::max(height, panel.height());
    }

    if (options.mode != RenderMode::Unfold) {
        const auto& poly = tess.fundamental_polygon();
        double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
        for (const auto& v : poly) {
            x0 = std::min(x0, v.x.to_double());
            x1 = std::max(x1, v.x.to_double());
            y0 = std::min(y0, v.y.to_double());
            y1 = std::max(y1, v.y.to_double());
        }
        const double pad = 0.15;
        Panel panel("fold", Box{x0 - pad, x1 + pad, y0 - pad, y1 + pad}, options.pixels_per_unit * 2);
        std::vector<ScaledPoint> outline(poly.begin(), poly.end());
        outline.push_back(poly.front());
        panel.polyline(outline, "fill=\"#f4f4f4\" stroke=\"#333333\" stroke-width=\"2\"");

        const FoldedState s0 = fold_into_polygon(tess, {options.a, 0}, {d.x, d.y});
        const OrbitResult r = fold(tess, {options.a, 0}, {d.x, d.y}, default_max_bounces(d));
        summary.fold_status = r.status;
        std::vector<ScaledPoint> path{s0.point};
        path.insert(path.end(), r.bounce_points.begin(), r.bounce_points.end());
        if (r.status == OrbitStatus::Periodic) path.push_back(s0.point);
        summary.fold_strikes = static_cast<std::int64_t>(r.bounce_points.size());
        panel.polyline(path, "fill=\"none\" stroke=\"#000000\" stroke-width=\"1.2\"");
        for (const auto& v : poly) panel.dot(v, 3, "#444444");
        panel.dot(s0.point, 4, "#ff7f00");
        panel.text(6, 16, std::string(name(r.status)) + (r.status == OrbitStatus::Periodic ? " period " + std::to_string(r.period) : ""));
        groups.push_back(panel.finish(widths.empty() ? 0 : widths.back() + 20));
        widths.push_back(panel.width() + (widths.empty() ? 0 : widths.back() + 20));
        height = std::max(height, panel.height());
    }

    const double total = widths.back();
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<!-- billiards render v1 -->\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(total) << "\" height=\""
        << num(height) << "\" viewBox=\"0 0 " << num(total) << " " << num(height) << "\">\n";
    svg << "<title>" << name(options.shape) << " (" << d.x << ", " << d.y << ") a=" << options.a.to_fraction_string()
        << "</title>\n";
    for (const auto& g : groups) svg << g;
    svg << "</svg>\n";
    summary.svg = svg.str();
    return summary;
}

}  // namespace billiards
