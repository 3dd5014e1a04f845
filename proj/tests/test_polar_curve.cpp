#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epsnbhd/errors.hpp"
#include "epsnbhd/polar_curve.hpp"

#include <cmath>
#include <numbers>
#include <regex>

using namespace epsnbhd;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const ProfileConfig& reference()
{
    static const ProfileConfig cfg;
    return cfg;
}

std::size_t count_of(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1))
        ++n;
    return n;
}

// Signed angle from the backward to the forward secant direction at x.
double secant_turn(const RadialFunction& r, double x, double before, double after)
{
    const Point v = polar_map(x, r(x).value);
    const Point a = polar_map(before, r(before).value);
    const Point b = polar_map(after, r(after).value);
    const Point in = v - a, out = b - v;
    return std::atan2(cross(in, out), dot(in, out));
}

} // namespace

TEST_CASE("polar map")
{
    const Point p = polar_map(std::numbers::pi / 2, 2.0);
    CHECK(p.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(p.y == 2.0);
    CHECK_THROWS_AS(polar_map(0.0, -1.0), OutOfDomain);
}

TEST_CASE("sampling the reference curve")
{
    const auto& cfg = reference();
    const CurveSample s = sample_curve(jump_profile(cfg), 4096, cfg.enumeration().values());
    // 0 is already on the uniform grid.
    CHECK(s.size() == 4096 + cfg.truncation() - 1);
    CHECK(s.closed);
    CHECK(std::is_sorted(s.parameters.begin(), s.parameters.end()));
    CHECK(std::find(s.parameters.begin(), s.parameters.end(), 0.5) != s.parameters.end());
    for (std::size_t i = 0; i < s.size(); i += 97)
        CHECK(s.radius_at(s.parameters[i]) == s.radii[i]);
    CHECK(s.radius_at(kTwoPi - 1e-12) == doctest::Approx(s.end_radius));
    CHECK(s.sampling_step() < 0.01);

    const StarShapeReport star = star_shape_check(s);
    CHECK(star.kernel_contains_origin_ball);
    CHECK(star.min_radius >= cfg.certified_min() - 1e-9);
}

TEST_CASE("sampling errors")
{
    const auto bad = [](double x) { return ProfileValue{1.0 - x, 0.0}; };
    CHECK_THROWS_AS(sample_curve(bad, 64), NonPositiveRadius);
    const auto open = [](double x) { return ProfileValue{1.0 + x, 0.0}; };
    const CurveSample s = sample_curve(open, 64);
    CHECK_FALSE(s.closed);
    CHECK_THROWS_AS(star_shape_check(s), CurveNotClosed);
    CHECK_THROWS_AS(sample_curve(open, 8), ConfigError);
    CHECK_THROWS_AS(export_csv(CurveSample{}), EmptySample);
    CHECK_THROWS_AS(export_svg(CurveSample{}, {}), EmptySample);
}

TEST_CASE("wedge turn angles agree with secant directions")
{
    const auto& cfg = reference();
    const auto wedges = wedge_turn_angles(cfg, 18);
    REQUIRE(wedges.size() == 18);
    const RadialFunction r = jump_profile(cfg);
    for (std::size_t i = 0; i < wedges.size(); ++i) {
        const WedgeRecord& w = wedges[i];
        CHECK(w.turn_angle > 0.0);
        CHECK(w.turn_angle < std::numbers::pi);
        if (i > 0)
            CHECK(w.turn_angle <= wedges[i - 1].turn_angle);
        const double x = w.location.to_double();
        if (x == 0.0)
            continue;
        // The tangent direction x + atan2(r, r') turns clockwise by the
        // turn angle; secants add an O(delta) smooth part.
        const double delta = 1e-6;
        const double turn = secant_turn(r, x, x - delta, x + delta);
        CHECK(std::abs(turn + w.turn_angle) <= 5e-6);
    }
    CHECK(wedges[0].location == RationalAngle(0, 1));
    CHECK(wedges[0].left_slope == doctest::Approx(one_sided_derivatives(Angle::two_pi(), cfg).left.value));
}

TEST_CASE("Cantor wedges shift both slopes alike")
{
    const auto& cfg = reference();
    const auto plain = wedge_turn_angles(cfg, 18);
    const auto cantor = wedge_turn_angles(cfg, 18, CantorConfig{});
    REQUIRE(cantor.size() == 18);
    for (const WedgeRecord& w : cantor) {
        if (w.location.numerator() == 0)
            continue;
        const auto match = std::find_if(plain.begin(), plain.end(), [&](const WedgeRecord& p) { return p.index == w.index; });
        REQUIRE(match != plain.end());
        CHECK(w.right_slope - w.left_slope == doctest::Approx(match->right_slope - match->left_slope).epsilon(1e-9));
        CHECK(w.radius > match->radius);
    }
}

TEST_CASE("CSV and SVG export")
{
    const auto& cfg = reference();
    const CurveSample s = sample_curve(jump_profile(cfg), 4096, cfg.enumeration().values());
    const std::string csv = export_csv(s);
    CHECK(csv.rfind("x,radius,px,py,err\n", 0) == 0);
    CHECK(count_of(csv, "\n") == s.size() + 2);
    CHECK(export_csv(s) == csv);

    const auto wedges = wedge_turn_angles(cfg, 18);
    const std::string svg = export_svg(s, wedges);
    CHECK(count_of(svg, "<circle") == 18);
    CHECK(count_of(svg, "<path") == 1);
    CHECK(svg.find("width=\"1024\"") != std::string::npos);
    CHECK(export_svg(s, wedges) == svg);
    const auto one = wedge_turn_angles(cfg, 1);
    CHECK(count_of(export_svg(s, one), "<circle") == 1);

    // Canvas coordinates stay inside the 5% margin.
    const std::regex num("cx=\"([0-9.]+)\" cy=\"([0-9.]+)\"");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), num); it != std::sregex_iterator(); ++it) {
        const double cx = std::stod((*it)[1]), cy = std::stod((*it)[2]);
        CHECK(cx >= 0.04 * 1024);
        CHECK(cx <= 0.96 * 1024);
        CHECK(cy >= 0.04 * 1024);
        CHECK(cy <= 0.96 * 1024);
    }
}
