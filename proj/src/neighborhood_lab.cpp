#include "epsnbhd/neighborhood_lab.hpp"

#include "epsnbhd/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

namespace epsnbhd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::int64_t kFar = std::numeric_limits<std::int64_t>::max();

/// Runs body(row) for every row. Rows are independent, so the split over
/// threads does not change the result.
template <typename Body>
void for_rows(int rows, Body body)
{
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int workers = static_cast<int>(std::min<unsigned>(hw, 16u));
    if (workers <= 1 || rows < 64) {
        for (int r = 0; r < rows; ++r)
            body(r);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([=, &body] {
            for (int r = w; r < rows; r += workers)
                body(r);
        });
    }
    for (auto& t : pool)
        t.join();
}

/// Lower envelope of parabolas (k - v)^2 + f[v] over the finite sites of f
/// (Felzenszwalb and Huttenlocher). n is small enough for exact doubles.
void squared_edt_1d(const std::int64_t* f, std::int64_t* out, int n, std::ptrdiff_t stride, std::vector<int>& v,
                    std::vector<double>& z)
{
    v.clear();
    z.clear();
    for (int q = 0; q < n; ++q) {
        const std::int64_t fq = f[q * stride];
        if (fq == kFar)
            continue;
        while (!v.empty()) {
            const int p = v.back();
            const double fp = static_cast<double>(f[p * stride]);
            const double s = ((static_cast<double>(fq) + static_cast<double>(q) * q) - (fp + static_cast<double>(p) * p))
                             / (2.0 * (q - p));
            if (s <= z.back()) {
                v.pop_back();
                z.pop_back();
            } else {
                v.push_back(q);
                z.push_back(s);
                break;
            }
        }
        if (v.empty()) {
            v.push_back(q);
            z.push_back(-std::numeric_limits<double>::infinity());
        }
    }
    if (v.empty()) {
        for (int q = 0; q < n; ++q)
            out[q * stride] = kFar;
        return;
    }
    std::size_t k = 0;
    for (int q = 0; q < n; ++q) {
        while (k + 1 < v.size() && z[k + 1] < q)
            ++k;
        const std::int64_t d = q - v[k];
        out[q * stride] = d * d + f[v[k] * stride];
    }
}

/// Squared distance, in cells, from every cell to the nearest marked cell.
std::vector<std::int64_t> squared_edt(const GridSpec& g, const std::vector<std::uint8_t>& marked)
{
    const int w = g.width, h = g.height;
    std::vector<std::int64_t> f(g.size());
    for (std::size_t k = 0; k < f.size(); ++k)
        f[k] = marked[k] ? 0 : kFar;
    std::vector<std::int64_t> tmp(g.size());
    // Columns first, then rows.
    for_rows(w, [&](int i) {
        std::vector<int> v;
        std::vector<double> z;
        squared_edt_1d(f.data() + i, tmp.data() + i, h, w, v, z);
    });
    for_rows(h, [&](int j) {
        std::vector<int> v;
        std::vector<double> z;
        const std::size_t row = static_cast<std::size_t>(j) * w;
        squared_edt_1d(tmp.data() + row, f.data() + row, w, 1, v, z);
    });
    return f;
}

std::vector<std::uint8_t> boundary_flags(const RegionMask& region)
{
    const GridSpec& g = region.grid;
    std::vector<std::uint8_t> out(g.size(), 0);
    const auto outside = [&](int i, int j) {
        return i < 0 || j < 0 || i >= g.width || j >= g.height || !region.at(i, j);
    };
    for (int j = 0; j < g.height; ++j) {
        for (int i = 0; i < g.width; ++i) {
            if (region.at(i, j)
                && (outside(i - 1, j) || outside(i + 1, j) || outside(i, j - 1) || outside(i, j + 1)))
                out[g.index(i, j)] = 1;
        }
    }
    return out;
}

double cell_distance(std::int64_t d2, double spacing)
{
    return d2 == kFar ? std::numeric_limits<double>::infinity() : spacing * std::sqrt(static_cast<double>(d2));
}

} // namespace

void GridSpec::validate() const
{
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw ConfigError("grid spacing must be positive");
    if (width <= 0 || height <= 0)
        throw ConfigError("grid dimensions must be positive");
}

GridSpec GridSpec::square(Point mid, double spacing, int n)
{
    GridSpec g{{mid.x - 0.5 * n * spacing, mid.y - 0.5 * n * spacing}, spacing, n, n};
    g.validate();
    return g;
}

GridSpec GridSpec::covering(const BoundingBox& box, double margin, int n)
{
    if (n <= 0)
        throw ConfigError("grid size must be positive");
    const double extent = std::max(box.max.x - box.min.x, box.max.y - box.min.y) + 2.0 * margin;
    const Point mid{0.5 * (box.min.x + box.max.x), 0.5 * (box.min.y + box.max.y)};
    return square(mid, extent / n, n);
}

std::size_t RegionMask::count() const
{
    return static_cast<std::size_t>(std::count_if(inside.begin(), inside.end(), [](std::uint8_t c) { return c != 0; }));
}

std::vector<Point> RegionMask::centers() const
{
    std::vector<Point> out;
    for (std::size_t k = 0; k < inside.size(); ++k) {
        if (inside[k])
            out.push_back(grid.center(k));
    }
    return out;
}

RegionMask rasterize_region(const CurveSample& sample, const GridSpec& grid)
{
    if (sample.empty())
        throw EmptySample("cannot rasterize an empty sample");
    if (!sample.closed)
        throw CurveNotClosed("cannot rasterize an open curve");
    grid.validate();
    RegionMask mask(grid);
    for_rows(grid.height, [&](int j) {
        for (int i = 0; i < grid.width; ++i) {
            const Point c = grid.center(i, j);
            double angle = std::atan2(c.y, c.x);
            if (angle < 0.0)
                angle += kTwoPi;
            if (norm(c) <= sample.radius_at(angle))
                mask.inside[grid.index(i, j)] = 1;
        }
    });
    return mask;
}

std::vector<std::size_t> boundary_cells(const RegionMask& region)
{
    const auto flags = boundary_flags(region);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < flags.size(); ++k) {
        if (flags[k])
            out.push_back(k);
    }
    return out;
}

std::vector<Point> boundary_extract(const RegionMask& region)
{
    std::vector<Point> out;
    for (std::size_t k : boundary_cells(region))
        out.push_back(region.grid.center(k));
    if (out.empty())
        throw EmptyInput("region has no boundary cells");
    return out;
}

DistanceField distance_transform(const RegionMask& targets)
{
    if (targets.count() == 0)
        throw EmptyTargets("distance transform needs at least one target cell");
    const auto d2 = squared_edt(targets.grid, targets.inside);
    DistanceField out{targets.grid, std::vector<double>(d2.size())};
    for (std::size_t k = 0; k < d2.size(); ++k)
        out.distance[k] = cell_distance(d2[k], targets.grid.spacing);
    return out;
}

DistanceField distance_transform(std::span<const Point> targets, const GridSpec& grid)
{
    if (targets.empty())
        throw EmptyTargets("distance transform needs at least one target point");
    grid.validate();
    const PointIndex index(targets);
    DistanceField out{grid, std::vector<double>(grid.size())};
    for_rows(grid.height, [&](int j) {
        for (int i = 0; i < grid.width; ++i)
            out.distance[grid.index(i, j)] = index.nearest(grid.center(i, j)).distance;
    });
    return out;
}

RegionMask erode(const RegionMask& region, double epsilon)
{
    if (!(epsilon > region.grid.spacing))
        throw ConfigError("erosion radius must exceed the cell spacing");
    const auto edge = boundary_flags(region);
    RegionMask out(region.grid);
    if (std::find(edge.begin(), edge.end(), 1) == edge.end())
        throw EmptyErosion("region is empty");
    const auto d2 = squared_edt(region.grid, edge);
    std::size_t kept = 0;
    for (std::size_t k = 0; k < d2.size(); ++k) {
        if (region.inside[k] && cell_distance(d2[k], region.grid.spacing) >= epsilon) {
            out.inside[k] = 1;
            ++kept;
        }
    }
    if (kept == 0)
        throw EmptyErosion("no cell survives erosion by " + std::to_string(epsilon));
    return out;
}

RegionMask dilate(const RegionMask& set, double epsilon)
{
    if (set.count() == 0)
        throw EmptyInput("cannot dilate an empty set");
    if (!(epsilon >= 0.0))
        throw ConfigError("dilation radius must be nonnegative");
    const auto d2 = squared_edt(set.grid, set.inside);
    RegionMask out(set.grid);
    for (std::size_t k = 0; k < d2.size(); ++k)
        out.inside[k] = cell_distance(d2[k], set.grid.spacing) <= epsilon ? 1 : 0;
    return out;
}

double inradius(const RegionMask& region)
{
    const auto edge = boundary_flags(region);
    if (std::find(edge.begin(), edge.end(), 1) == edge.end())
        throw EmptyInput("inradius of an empty region");
    const auto d2 = squared_edt(region.grid, edge);
    std::int64_t best = 0;
    for (std::size_t k = 0; k < d2.size(); ++k) {
        if (region.inside[k])
            best = std::max(best, d2[k]);
    }
    return cell_distance(best, region.grid.spacing);
}

double reconstruction_tolerance(double spacing, double sampling_step)
{
    return 3.0 * spacing + sampling_step;
}

ReconstructionReport verify_reconstruction(const CurveSample& sample, double epsilon, const RegionMask& region)
{
    const double h = region.grid.spacing;
    if (!(epsilon >= 4.0 * h))
        throw ConfigError("epsilon must be at least 4h");
    const RegionMask core = erode(region, epsilon);
    const RegionMask rebuilt = dilate(core, epsilon);
    const auto edge = boundary_extract(rebuilt);

    ReconstructionReport r;
    r.epsilon = epsilon;
    r.cell_spacing = h;
    r.curve_sampling_step = sample.sampling_step();
    r.eroded_cells = core.count();
    r.hausdorff_distance = hausdorff_distance(edge, sample.points);
    r.tolerance = reconstruction_tolerance(h, r.curve_sampling_step);
    r.passed = r.hausdorff_distance <= r.tolerance;
    return r;
}

ReconstructionReport verify_reconstruction(const CurveSample& sample, double epsilon, const GridSpec& grid)
{
    return verify_reconstruction(sample, epsilon, rasterize_region(sample, grid));
}

EpsilonSearchResult epsilon_search(const CurveSample& sample, const GridSpec& grid, std::span<const double> ladder)
{
    if (ladder.empty())
        throw ConfigError("epsilon ladder is empty");
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        if (!(ladder[i] < ladder[i - 1]))
            throw ConfigError("epsilon ladder must be strictly descending");
    }
    const RegionMask region = rasterize_region(sample, grid);
    EpsilonSearchResult result;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        ReconstructionReport r;
        r.epsilon = ladder[i];
        r.cell_spacing = grid.spacing;
        try {
            r = verify_reconstruction(sample, ladder[i], region);
        } catch (const EmptyErosion&) {
        } catch (const ConfigError&) {
        }
        result.attempts.push_back(r);
        if (r.passed) {
            result.epsilon = ladder[i];
            result.ladder_index = i;
            result.report = r;
            return result;
        }
    }
    throw NoneFound("no epsilon in the ladder verifies at this resolution");
}

std::vector<double> epsilon_ladder(double inradius, std::span<const double> factors)
{
    std::vector<double> out;
    out.reserve(factors.size());
    for (double f : factors)
        out.push_back(f * inradius);
    return out;
}

CellMultiplicity multiplicity_at(const PointIndex& targets, Point z, double spacing, const MultiplicityOptions& options)
{
    const double tol = options.tolerance > 0.0 ? options.tolerance : 2.0 * spacing;
    const double link = options.link > 0.0 ? options.link : 2.0 * spacing;
    const auto hit = targets.nearest(z);

    CellMultiplicity cell;
    cell.distance = hit.distance;
    if (hit.distance <= 1e-9 * spacing) {
        cell.count = cell.raw = 1;
        cell.stored = 1;
        cell.witnesses[0] = static_cast<std::uint32_t>(hit.index);
        return cell;
    }

    thread_local std::vector<std::size_t> found;
    targets.within(z, hit.distance + tol, found);
    struct Witness {
        double angle;
        double distance;
        std::size_t index;
    };
    thread_local std::vector<Witness> ws;
    ws.clear();
    for (std::size_t k : found) {
        const Point d = targets[k] - z;
        ws.push_back({std::atan2(d.y, d.x), norm(d), k});
    }
    std::sort(ws.begin(), ws.end(), [](const Witness& a, const Witness& b) {
        return a.angle != b.angle ? a.angle < b.angle : a.index < b.index;
    });
    const std::size_t n = ws.size();
    cell.raw = static_cast<std::uint32_t>(n);

    double widest = ws.front().angle + kTwoPi - ws.back().angle;
    for (std::size_t k = 1; k < n; ++k)
        widest = std::max(widest, ws[k].angle - ws[k - 1].angle);

    if (widest < 0.5 * std::numbers::pi) {
        cell.count = static_cast<std::uint32_t>(n);
        for (std::size_t k = 0; k < n && cell.stored < 4; ++k)
            cell.witnesses[cell.stored++] = static_cast<std::uint32_t>(ws[k].index);
        return cell;
    }

    // Single-linkage clusters of witnesses closer than the link. Only
    // clusters reaching into the inner half of the band count; the fragments
    // a staircase boundary leaves near the outer edge do not.
    thread_local std::vector<std::size_t> parent;
    parent.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        parent[k] = k;
    const auto root = [&](std::size_t k) {
        while (parent[k] != k)
            k = parent[k] = parent[parent[k]];
        return k;
    };
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (distance(targets[ws[a].index], targets[ws[b].index]) <= link)
                parent[root(b)] = root(a);
        }
    }
    const double core = hit.distance + 0.5 * tol;
    std::uint32_t clusters = 0;
    // Clusters are reported in angle order of their first member.
    for (std::size_t k = 0; k < n; ++k) {
        if (root(k) != k)
            continue;
        std::size_t nearest = n;
        for (std::size_t m = 0; m < n; ++m) {
            if (root(m) == k && (nearest == n || ws[m].distance < ws[nearest].distance))
                nearest = m;
        }
        if (ws[nearest].distance <= core) {
            ++clusters;
            if (cell.stored < 4)
                cell.witnesses[cell.stored++] = static_cast<std::uint32_t>(ws[nearest].index);
        }
    }
    if (clusters == 0) {
        clusters = 1;
        cell.witnesses[cell.stored++] = static_cast<std::uint32_t>(hit.index);
    }
    cell.count = clusters;
    return cell;
}

MultiplicityMap projection_multiplicity(std::span<const Point> targets, const GridSpec& grid,
                                        const MultiplicityOptions& options)
{
    if (targets.empty())
        throw EmptyTargets("projection multiplicity needs at least one target");
    grid.validate();
    if (options.tolerance > 0.0 && options.tolerance < 2.0 * grid.spacing)
        throw ConfigError("multiplicity tolerance must be at least 2h");
    const PointIndex index(targets);
    MultiplicityMap map{grid, std::vector<CellMultiplicity>(grid.size())};
    for_rows(grid.height, [&](int j) {
        for (int i = 0; i < grid.width; ++i)
            map.cells[grid.index(i, j)] = multiplicity_at(index, grid.center(i, j), grid.spacing, options);
    });
    return map;
}

std::vector<double> reach_estimate(std::span<const Point> targets, const GridSpec& grid,
                                   const MultiplicityOptions& options)
{
    const MultiplicityMap map = projection_multiplicity(targets, grid, options);
    std::vector<Point> flagged;
    for (std::size_t k = 0; k < map.cells.size(); ++k) {
        if (map.cells[k].count >= 2)
            flagged.push_back(grid.center(k));
    }
    std::vector<double> out(targets.size());
    if (flagged.empty()) {
        const double x1 = grid.origin.x + grid.width * grid.spacing;
        const double y1 = grid.origin.y + grid.height * grid.spacing;
        for (std::size_t k = 0; k < targets.size(); ++k) {
            const Point& p = targets[k];
            out[k] = std::max(0.0, std::min({p.x - grid.origin.x, x1 - p.x, p.y - grid.origin.y, y1 - p.y}));
        }
        return out;
    }
    const PointIndex index(flagged);
    for (std::size_t k = 0; k < targets.size(); ++k)
        out[k] = index.nearest(targets[k]).distance;
    return out;
}

std::string write_pgm(const RegionMask& mask)
{
    const GridSpec& g = mask.grid;
    std::string out = "P5\n" + std::to_string(g.width) + " " + std::to_string(g.height) + "\n255\n";
    out.reserve(out.size() + g.size());
    for (int j = g.height - 1; j >= 0; --j) {
        for (int i = 0; i < g.width; ++i)
            out.push_back(mask.at(i, j) ? static_cast<char>(255) : static_cast<char>(0));
    }
    return out;
}

RegionMask read_pgm(const std::string& bytes, Point origin, double spacing)
{
    std::size_t pos = 0;
    const auto skip_space = [&] {
        while (pos < bytes.size()) {
            if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n')
                    ++pos;
            } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
                ++pos;
            } else {
                break;
            }
        }
    };
    const auto number = [&]() -> long {
        skip_space();
        long v = 0;
        std::size_t start = pos;
        while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
            v = v * 10 + (bytes[pos] - '0');
            if (v > 1'000'000)
                throw ConfigError("PGM header value too large");
            ++pos;
        }
        if (pos == start)
            throw ConfigError("malformed PGM header");
        return v;
    };
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        throw ConfigError("not a binary PGM (P5) file");
    pos = 2;
    const long w = number();
    const long h = number();
    const long maxval = number();
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255)
        throw ConfigError("unsupported PGM dimensions or depth");
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
        throw ConfigError("malformed PGM header");
    ++pos;
    const std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    if (bytes.size() - pos < need)
        throw ConfigError("truncated PGM data");

    GridSpec g{origin, spacing, static_cast<int>(w), static_cast<int>(h)};
    g.validate();
    RegionMask mask(g);
    for (int row = 0; row < g.height; ++row) {
        const int j = g.height - 1 - row;
        for (int i = 0; i < g.width; ++i)
            mask.inside[g.index(i, j)] = bytes[pos + static_cast<std::size_t>(row) * w + i] != 0 ? 1 : 0;
    }
    return mask;
}

std::string format_report(const ReconstructionReport& report, const std::string& prefix)
{
    const std::string p = prefix.empty() ? std::string{} : prefix + ".";
    char buf[128];
    std::string out;
    const auto line = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += p + key + "=" + buf + "\n";
    };
    line("epsilon", report.epsilon);
    line("hausdorff", report.hausdorff_distance);
    line("tolerance", report.tolerance);
    line("h", report.cell_spacing);
    line("sampling_step", report.curve_sampling_step);
    out += p + "eroded_cells=" + std::to_string(report.eroded_cells) + "\n";
    out += p + "passed=" + (report.passed ? "true" : "false") + "\n";
    return out;
}

} // namespace epsnbhd
