#pragma once

#include "epsnbhd/cantor_profile.hpp"
#include "epsnbhd/geometry.hpp"
#include "epsnbhd/radial_profile.hpp"
#include "epsnbhd/rational_enum.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace epsnbhd {

/// alpha(x, r) = r (cos x, sin x). Throws OutOfDomain for r < 0.
Point polar_map(double angle, double radius);

/// A radial profile x -> r(x) on [0, 2pi]; must be pure.
using RadialFunction = std::function<ProfileValue(double)>;

/// Sampled Jordan curve alpha(graph r) over parameters in [0, 2pi).
struct CurveSample {
    std::vector<double> parameters;
    std::vector<double> radii;
    std::vector<double> errors;
    std::vector<Point> points;
    /// r(2pi), used to close the seam.
    double end_radius = 0.0;
    double end_error = 0.0;
    bool closed = false;

    std::size_t size() const { return parameters.size(); }
    bool empty() const { return parameters.empty(); }

    /// Radius at angle x by linear interpolation in the parameter, wrapping
    /// from the last sample to r(2pi) at the seam.
    double radius_at(double angle) const;

    /// Largest planar distance between consecutive points, seam included.
    double sampling_step() const;
};

/// Uniform grid of n_samples parameters 2pi i / n plus every given rational
/// below 2pi (duplicates merged). Throws
/// NonPositiveRadius if some r(x) <= 0 and ConfigError for n_samples < 16.
CurveSample sample_curve(const RadialFunction& profile, std::size_t n_samples,
                         std::span<const RationalAngle> rationals = {});

RadialFunction jump_profile(const ProfileConfig& cfg);
RadialFunction combined_profile(const ProfileConfig& profile, const CantorConfig& cantor);

struct WedgeRecord {
    RationalAngle location;
    std::size_t index;
    double jump;
    double radius;
    double left_slope;
    double right_slope;
    /// atan2(r, left) - atan2(r, right), in (0, pi).
    double turn_angle;
    Point point;
};

/// Corner census of the top_k singularities of S (or of T = S + S_g when a
/// Cantor config is given), sorted by descending turn angle, ties by index.
/// The seam wedge at 0 pairs the right slope at 0 with the left slope at 2pi.
std::vector<WedgeRecord> wedge_turn_angles(const ProfileConfig& cfg, std::size_t top_k,
                                           const std::optional<CantorConfig>& cantor = std::nullopt);

/// Turn angle of a polar corner with radius r and one-sided slopes.
double turn_angle(double radius, double left_slope, double right_slope);

struct StarShapeReport {
    double min_radius = 0.0;
    bool kernel_contains_origin_ball = false;
};

/// Throws CurveNotClosed for an open sample.
StarShapeReport star_shape_check(const CurveSample& sample);

struct SvgStyle {
    int width = 1024;
    int height = 1024;
    std::string stroke = "#1b5e20";
    double stroke_width = 1.5;
    std::string fill = "none";
    std::string marker_fill = "#000000";
    double marker_radius = 4.0;
    std::string background = "#ffffff";
};

/// CSV with header `x,radius,px,py,err`, %.17g numbers, one row per sample
/// and a closing row at 2pi. Throws EmptySample.
std::string export_csv(const CurveSample& sample);

/// SVG 1.1 with the curve as one path and a filled dot per wedge, fitted
/// to the bounding box with a 5% margin. Throws EmptySample.
std::string export_svg(const CurveSample& sample, std::span<const WedgeRecord> wedges, const SvgStyle& style = {});

} // namespace epsnbhd
