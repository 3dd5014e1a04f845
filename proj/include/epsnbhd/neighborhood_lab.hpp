#pragma once

#include "epsnbhd/geometry.hpp"
#include "epsnbhd/polar_curve.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace epsnbhd {

/// Square cells of side `spacing`; origin is the lower-left corner of cell
/// (0, 0), so cell (i, j) is centered at origin + (i + 1/2, j + 1/2) h.
struct GridSpec {
    Point origin;
    double spacing = 1.0;
    int width = 1;
    int height = 1;

    std::size_t size() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * width + i; }
    Point center(int i, int j) const
    {
        return {origin.x + (i + 0.5) * spacing, origin.y + (j + 0.5) * spacing};
    }
    Point center(std::size_t k) const { return center(static_cast<int>(k % width), static_cast<int>(k / width)); }

    /// Throws ConfigError unless spacing > 0 and both dimensions are positive.
    void validate() const;

    /// n x n grid centered at `mid` with cell side `spacing`.
    static GridSpec square(Point mid, double spacing, int n);
    /// n x n grid covering `box` grown by `margin` on every side.
    static GridSpec covering(const BoundingBox& box, double margin, int n);
};

struct RegionMask {
    GridSpec grid;
    std::vector<std::uint8_t> inside;

    explicit RegionMask(const GridSpec& g) : grid(g), inside(g.size(), 0) {}

    bool at(int i, int j) const { return inside[grid.index(i, j)] != 0; }
    std::size_t count() const;
    double area() const { return static_cast<double>(count()) * grid.spacing * grid.spacing; }
    std::vector<Point> centers() const;
};

struct DistanceField {
    GridSpec grid;
    std::vector<double> distance;
};

struct CellMultiplicity {
    std::uint32_t count = 0;
    /// Targets within the tolerance band, before clustering.
    std::uint32_t raw = 0;
    std::uint8_t stored = 0;
    std::array<std::uint32_t, 4> witnesses{};
    double distance = 0.0;
};

struct MultiplicityMap {
    GridSpec grid;
    std::vector<CellMultiplicity> cells;
};

struct MultiplicityOptions {
    /// Band above the minimal distance; 0 means 2h.
    double tolerance = 0.0;
    /// Witnesses closer than this belong to one projection; 0 means 2h.
    double link = 0.0;
};

struct ReconstructionReport {
    double epsilon = 0.0;
    double hausdorff_distance = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    double cell_spacing = 0.0;
    double curve_sampling_step = 0.0;
    std::size_t eroded_cells = 0;
};

/// Cells whose center c satisfies |c| <= r(angle of c). Throws EmptySample
/// or CurveNotClosed.
RegionMask rasterize_region(const CurveSample& sample, const GridSpec& grid);

/// Centers of inside cells with an outside 4-neighbor (off-grid is outside).
std::vector<Point> boundary_extract(const RegionMask& region);
std::vector<std::size_t> boundary_cells(const RegionMask& region);

/// Exact Euclidean distance from every cell center to the nearest target
/// cell center. Throws EmptyTargets.
DistanceField distance_transform(const RegionMask& targets);
/// Same, for arbitrary target points.
DistanceField distance_transform(std::span<const Point> targets, const GridSpec& grid);

/// Region cells at distance >= epsilon from the region's boundary cells.
/// Throws ConfigError for epsilon <= h and EmptyErosion if nothing survives.
RegionMask erode(const RegionMask& region, double epsilon);
/// Cells at distance <= epsilon from the set. Throws EmptyInput.
RegionMask dilate(const RegionMask& set, double epsilon);
/// Largest distance from an inside cell to the region's boundary cells.
double inradius(const RegionMask& region);

/// Tolerance used by verify_reconstruction: 3h + sampling step.
double reconstruction_tolerance(double spacing, double sampling_step);

/// Erode the rasterized region by epsilon, dilate back, and compare the
/// result's boundary with the sampled curve. Throws ConfigError for
/// epsilon < 4h; EmptyErosion propagates.
ReconstructionReport verify_reconstruction(const CurveSample& sample, double epsilon, const GridSpec& grid);
/// Same with a prebuilt raster of the sample.
ReconstructionReport verify_reconstruction(const CurveSample& sample, double epsilon, const RegionMask& region);

struct EpsilonSearchResult {
    double epsilon = 0.0;
    std::size_t ladder_index = 0;
    ReconstructionReport report;
    std::vector<ReconstructionReport> attempts;
};

/// First epsilon of a descending ladder that verifies. Failed attempts,
/// including empty erosions, are skipped. Throws NoneFound.
EpsilonSearchResult epsilon_search(const CurveSample& sample, const GridSpec& grid, std::span<const double> ladder);

/// Default ladder factors applied to the raster inradius.
inline constexpr std::array<double, 5> kDefaultLadder{0.4, 0.2, 0.1, 0.05, 0.025};
std::vector<double> epsilon_ladder(double inradius, std::span<const double> factors = kDefaultLadder);

/// Projection multiplicity of z onto the targets. Witnesses are targets
/// within dmin + tolerance. If they surround z (no angular gap of pi/2 or
/// more) every witness counts; otherwise the count is the number of
/// single-linkage clusters (members within `link`) whose nearest member lies
/// in the inner half of the band.
CellMultiplicity multiplicity_at(const PointIndex& targets, Point z, double spacing,
                                 const MultiplicityOptions& options = {});

/// Throws EmptyTargets; ConfigError if the tolerance is below 2h.
MultiplicityMap projection_multiplicity(std::span<const Point> targets, const GridSpec& grid,
                                        const MultiplicityOptions& options = {});

/// Per target: distance to the nearest cell of multiplicity >= 2 (or to the
/// grid edge when no cell is flagged). Throws EmptyTargets.
std::vector<double> reach_estimate(std::span<const Point> targets, const GridSpec& grid,
                                   const MultiplicityOptions& options = {});

/// Binary PGM (P5, 8 bit, 0 outside, 255 inside), top row first.
std::string write_pgm(const RegionMask& mask);
/// Any nonzero pixel counts as inside. Throws ConfigError on malformed input.
RegionMask read_pgm(const std::string& bytes, Point origin = {}, double spacing = 1.0);

/// key=value lines; keys are prefixed with `prefix.` when it is nonempty.
std::string format_report(const ReconstructionReport& report, const std::string& prefix = {});

} // namespace epsnbhd
