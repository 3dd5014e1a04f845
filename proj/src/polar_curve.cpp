#include "epsnbhd/polar_curve.hpp"

#include "epsnbhd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace epsnbhd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void append_format(std::string& out, const char* fmt, auto... args)
{
    char buf[256];
    const int n = std::snprintf(buf, sizeof buf, fmt, args...);
    out.append(buf, static_cast<std::size_t>(std::max(n, 0)));
}

} // namespace

Point polar_map(double angle, double radius)
{
    if (!(radius >= 0.0))
        throw OutOfDomain("polar_map: radius must be nonnegative");
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

double CurveSample::radius_at(double angle) const
{
    if (empty())
        throw EmptySample("radius_at on an empty sample");
    double x = std::fmod(angle, kTwoPi);
    if (x < 0.0)
        x += kTwoPi;
    const auto it = std::upper_bound(parameters.begin(), parameters.end(), x);
    if (it == parameters.begin())
        return radii.front();
    const std::size_t hi = static_cast<std::size_t>(it - parameters.begin());
    const std::size_t lo = hi - 1;
    const double x0 = parameters[lo];
    const double r0 = radii[lo];
    const double x1 = hi < parameters.size() ? parameters[hi] : kTwoPi;
    const double r1 = hi < parameters.size() ? radii[hi] : end_radius;
    if (x1 <= x0)
        return r0;
    const double t = (x - x0) / (x1 - x0);
    return r0 + t * (r1 - r0);
}

double CurveSample::sampling_step() const
{
    if (empty())
        throw EmptySample("sampling_step on an empty sample");
    double step = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i)
        step = std::max(step, distance(points[i - 1], points[i]));
    step = std::max(step, distance(points.back(), polar_map(kTwoPi, end_radius)));
    return step;
}

CurveSample sample_curve(const RadialFunction& profile, std::size_t n_samples, std::span<const RationalAngle> rationals)
{
    if (n_samples < 16)
        throw ConfigError("sample_curve needs at least 16 samples");
    std::vector<double> params;
    params.reserve(n_samples + 2 * rationals.size());
    for (std::size_t i = 0; i < n_samples; ++i)
        params.push_back(kTwoPi * static_cast<double>(i) / static_cast<double>(n_samples));
    // The curve is smooth between singularities, so the corner itself is
    // the only extra point a wedge needs.
    for (const RationalAngle& q : rationals)
        params.push_back(q.to_double());
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());
    while (!params.empty() && params.back() >= kTwoPi)
        params.pop_back();

    CurveSample s;
    s.parameters = std::move(params);
    s.radii.resize(s.parameters.size());
    s.errors.resize(s.parameters.size());
    s.points.resize(s.parameters.size());
    for (std::size_t i = 0; i < s.parameters.size(); ++i) {
        const ProfileValue r = profile(s.parameters[i]);
        if (!(r.value > 0.0))
            throw NonPositiveRadius("profile radius " + std::to_string(r.value) + " at x = "
                                    + std::to_string(s.parameters[i]));
        s.radii[i] = r.value;
        s.errors[i] = r.error_radius;
        s.points[i] = polar_map(s.parameters[i], r.value);
    }
    const ProfileValue end = profile(kTwoPi);
    if (!(end.value > 0.0))
        throw NonPositiveRadius("profile radius at 2pi is not positive");
    s.end_radius = end.value;
    s.end_error = end.error_radius;
    // A few ulps of slack so that periodic formulas with zero stated error close.
    const double slack = 16.0 * std::numeric_limits<double>::epsilon() * std::max(s.radii.front(), s.end_radius);
    s.closed = std::abs(s.radii.front() - s.end_radius) <= s.errors.front() + s.end_error + slack;
    return s;
}

RadialFunction jump_profile(const ProfileConfig& cfg)
{
    return [&cfg](double x) { return sum_eval(x, cfg); };
}

RadialFunction combined_profile(const ProfileConfig& profile, const CantorConfig& cantor)
{
    return [&profile, cantor](double x) { return combined_eval(x, profile, cantor); };
}

double turn_angle(double radius, double left_slope, double right_slope)
{
    return std::atan2(radius, left_slope) - std::atan2(radius, right_slope);
}

std::vector<WedgeRecord> wedge_turn_angles(const ProfileConfig& cfg, std::size_t top_k,
                                           const std::optional<CantorConfig>& cantor)
{
    const auto table = singularity_table(top_k, cfg);
    std::vector<WedgeRecord> out;
    out.reserve(table.size());
    for (const Singularity& s : table) {
        const Angle at = Angle::exactly(s.location);
        const bool seam = s.location.numerator() == 0;
        const auto here = one_sided_derivatives(at, cfg);
        double left = seam ? one_sided_derivatives(Angle::two_pi(), cfg).left.value : here.left.value;
        double right = here.right.value;
        const double x = s.location.to_double();
        double radius = sum_eval(x, cfg).value;
        if (cantor) {
            // S_g' = g - x / (2 pi) is continuous, so it shifts both slopes alike.
            radius += cantor_sum_eval(x, *cantor).value;
            right += scaled_eval(x, *cantor).value - x / kTwoPi;
            left += seam ? (scaled_eval(kTwoPi, *cantor).value - 1.0) : (scaled_eval(x, *cantor).value - x / kTwoPi);
        }
        const double angle = turn_angle(radius, left, right);
        if (!(angle > 0.0))
            continue;
        out.push_back({s.location, s.index, s.jump, radius, left, right, angle, polar_map(x, radius)});
    }
    std::stable_sort(out.begin(), out.end(), [](const WedgeRecord& a, const WedgeRecord& b) {
        if (a.turn_angle != b.turn_angle)
            return a.turn_angle > b.turn_angle;
        return a.index < b.index;
    });
    return out;
}

StarShapeReport star_shape_check(const CurveSample& sample)
{
    if (sample.empty())
        throw EmptySample("star_shape_check on an empty sample");
    if (!sample.closed)
        throw CurveNotClosed("star_shape_check needs a closed curve");
    double lowest = sample.end_radius - sample.end_error;
    for (std::size_t i = 0; i < sample.size(); ++i)
        lowest = std::min(lowest, sample.radii[i] - sample.errors[i]);
    return {lowest, lowest > 0.0};
}

std::string export_csv(const CurveSample& sample)
{
    if (sample.empty())
        throw EmptySample("export_csv on an empty sample");
    std::string out = "x,radius,px,py,err\n";
    for (std::size_t i = 0; i < sample.size(); ++i) {
        append_format(out, "%.17g,%.17g,%.17g,%.17g,%.17g\n", sample.parameters[i], sample.radii[i],
                      sample.points[i].x, sample.points[i].y, sample.errors[i]);
    }
    const Point end = polar_map(kTwoPi, sample.end_radius);
    append_format(out, "%.17g,%.17g,%.17g,%.17g,%.17g\n", kTwoPi, sample.end_radius, end.x, end.y, sample.end_error);
    return out;
}

std::string export_svg(const CurveSample& sample, std::span<const WedgeRecord> wedges, const SvgStyle& style)
{
    if (sample.empty())
        throw EmptySample("export_svg on an empty sample");
    const BoundingBox box = bounding_box(sample.points);
    const double span_x = std::max(box.max.x - box.min.x, 1e-12);
    const double span_y = std::max(box.max.y - box.min.y, 1e-12);
    const double scale = std::min(style.width / (1.1 * span_x), style.height / (1.1 * span_y));
    const double mid_x = 0.5 * (box.min.x + box.max.x);
    const double mid_y = 0.5 * (box.min.y + box.max.y);
    const auto to_canvas = [&](Point p) -> Point {
        return {0.5 * style.width + scale * (p.x - mid_x), 0.5 * style.height - scale * (p.y - mid_y)};
    };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    append_format(out,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%d\" height=\"%d\" "
                  "viewBox=\"0 0 %d %d\">\n",
                  style.width, style.height, style.width, style.height);
    append_format(out, "<rect width=\"100%%\" height=\"100%%\" fill=\"%s\"/>\n", style.background.c_str());
    append_format(out, "<path fill=\"%s\" stroke=\"%s\" stroke-width=\"%.3f\" stroke-linejoin=\"miter\" d=\"",
                  style.fill.c_str(), style.stroke.c_str(), style.stroke_width);
    for (std::size_t i = 0; i < sample.points.size(); ++i) {
        const Point c = to_canvas(sample.points[i]);
        append_format(out, "%s%.4f %.4f", i == 0 ? "M" : " L", c.x, c.y);
    }
    if (sample.closed)
        out += " Z";
    out += "\"/>\n";
    for (const WedgeRecord& w : wedges) {
        const Point c = to_canvas(w.point);
        append_format(out, "<circle class=\"wedge\" cx=\"%.4f\" cy=\"%.4f\" r=\"%.3f\" fill=\"%s\"/>\n", c.x, c.y,
                      style.marker_radius, style.marker_fill.c_str());
    }
    out += "</svg>\n";
    return out;
}

} // namespace epsnbhd
