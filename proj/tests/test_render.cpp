#include "doctest.h"

#include <algorithm>
#include <string>

#include "billiards/hexlab.hpp"
#include "billiards/render.hpp"

using namespace billiards;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("fold panel of the period-4 orbit closes after four strikes") {
    RenderOptions opt;
    opt.d = {1, 1};
    opt.a = 0;
    opt.mode = RenderMode::Fold;
    const RenderSummary r = render_svg(opt);
    CHECK(r.fold_status == OrbitStatus::Periodic);
    CHECK(r.fold_strikes == 4);
    CHECK(r.svg.find("periodic period 4") != std::string::npos);
    CHECK(count(r.svg, "<polyline") == 2);
}

TEST_CASE("vertical orbit renders eight strikes") {
    RenderOptions opt;
    opt.d = {0, 1};
    opt.a = Rational(1, 5);
    opt.mode = RenderMode::Fold;
    CHECK(render_svg(opt).fold_strikes == 8);
}

TEST_CASE("hexagon fold panel uses hexagon_period's orbit") {
    RenderOptions opt;
    opt.shape = ShapeId::Hexagon;
    opt.d = {4, 3};
    opt.a = Rational(1, 49);
    opt.mode = RenderMode::Both;
    const RenderSummary r = render_svg(opt);
    CHECK(r.fold_status == OrbitStatus::Periodic);
    CHECK(r.fold_strikes == hexagon_period(opt.a, 4, 3).period);
}

TEST_CASE("unfold panel draws contacts and is deterministic") {
    RenderOptions opt;
    opt.d = {2, 3};
    opt.a = Rational(1, 7);
    opt.mode = RenderMode::Unfold;
    const RenderSummary a = render_svg(opt);
    const RenderSummary b = render_svg(opt);
    CHECK(a.svg == b.svg);
    // closes at the first alignment T = 4
    CHECK(a.unfold_length == Rational(4));
    CHECK(a.svg.rfind("<?xml", 0) == 0);
    CHECK(a.svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"") != std::string::npos);
    // one contact dot per vertical incline crossed
    const std::size_t barrier = count(a.svg, "fill=\"#e41a1c\""), gate = count(a.svg, "fill=\"#4daf4a\"");
    CHECK(barrier + gate == 4);
    CHECK(a.svg.find("</svg>") != std::string::npos);
}

TEST_CASE("explicit length and invalid input") {
    RenderOptions opt;
    opt.d = {1, 3};
    opt.a = Rational(1, 7);
    opt.mode = RenderMode::Unfold;
    opt.t_max = Rational(5, 2);
    CHECK(render_svg(opt).unfold_length == Rational(5, 2));
    opt.t_max = Rational(0);
    CHECK_THROWS_AS(render_svg(opt), std::invalid_argument);
    opt.t_max.reset();
    opt.a = Rational(3, 2);
    CHECK_THROWS_AS(render_svg(opt), std::invalid_argument);
    CHECK(render_mode_from_name("both") == RenderMode::Both);
    CHECK_FALSE(render_mode_from_name("spin").has_value());
}
