#pragma once

// Standalone SVG pictures of tessellations, unfoldings and folded orbits.
// Scaled points (x, y) are drawn at (x, y * sqrt(3)) so angles are true.

#include <optional>
#include <string>

#include "billiards/orbit.hpp"
#include "billiards/tessellation.hpp"

namespace billiards {

enum class RenderMode { Unfold, Fold, Both };

std::optional<RenderMode> render_mode_from_name(std::string_view s);

struct RenderOptions {
    ShapeId shape = ShapeId::Triangle120;
    DirectionPair d;
    Rational a;
    RenderMode mode = RenderMode::Both;
    std::optional<Rational> t_max;  // unfolding length; default is the closing T when one exists
    double pixels_per_unit = 60.0;
};

struct RenderSummary {
    std::string svg;
    OrbitStatus fold_status = OrbitStatus::Truncated;
    std::int64_t fold_strikes = 0;  // segments drawn in the folded panel
    Rational unfold_length;         // T used for the unfolding panel
};

RenderSummary render_svg(const RenderOptions& options);

}  // namespace billiards
