#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epsnbhd/errors.hpp"
#include "epsnbhd/neighborhood_lab.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace epsnbhd;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

RegionMask disk_mask(const GridSpec& g, Point c, double r)
{
    RegionMask m(g);
    for (std::size_t k = 0; k < g.size(); ++k)
        m.inside[k] = distance(g.center(k), c) <= r ? 1 : 0;
    return m;
}

RegionMask random_mask(std::mt19937_64& rng, int n, double density)
{
    RegionMask m(GridSpec::square({0, 0}, 1.0 / n, n));
    std::bernoulli_distribution b(density);
    for (auto& c : m.inside)
        c = b(rng) ? 1 : 0;
    return m;
}

// Radius 0.3 + smooth random bumps, positive and 2pi-periodic.
CurveSample random_star(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double a1 = 0.06 * u(rng), a2 = 0.04 * u(rng), a3 = 0.03 * u(rng), ph = kPi * u(rng);
    const auto r = [=](double x) {
        return ProfileValue{0.3 + a1 * std::cos(x + ph) + a2 * std::sin(2 * x) + a3 * std::cos(3 * x - ph), 0.0};
    };
    return sample_curve(r, 2048);
}

double brute_cell_distance(const RegionMask& targets, int i, int j)
{
    const GridSpec& g = targets.grid;
    std::int64_t best = -1;
    for (int b = 0; b < g.height; ++b) {
        for (int a = 0; a < g.width; ++a) {
            if (!targets.at(a, b))
                continue;
            const std::int64_t d2 = std::int64_t(a - i) * (a - i) + std::int64_t(b - j) * (b - j);
            if (best < 0 || d2 < best)
                best = d2;
        }
    }
    return g.spacing * std::sqrt(static_cast<double>(best));
}

// Largest distance from a cell of `a` that is not in `b` to the nearest cell of `b`.
double excess(const RegionMask& a, const RegionMask& b)
{
    const DistanceField to_b = distance_transform(b);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.inside.size(); ++k) {
        if (a.inside[k] && !b.inside[k])
            worst = std::max(worst, to_b.distance[k]);
    }
    return worst;
}

} // namespace

TEST_CASE("grid geometry")
{
    const GridSpec g = GridSpec::square({0, 0}, 0.5, 4);
    CHECK(g.origin == Point{-1.0, -1.0});
    CHECK(g.center(0, 0) == Point{-0.75, -0.75});
    CHECK(g.center(g.index(3, 2)) == Point{0.75, 0.25});
    const GridSpec c = GridSpec::covering({{0, 0}, {2, 1}}, 0.5, 30);
    CHECK(c.spacing == doctest::Approx(0.1));
    CHECK_THROWS_AS(GridSpec::square({0, 0}, 0.0, 4), ConfigError);
}

TEST_CASE("distance transform equals brute force")
{
    std::mt19937_64 rng(21);
    for (int round = 0; round < 6; ++round) {
        const RegionMask targets = random_mask(rng, round % 2 ? 64 : 37, round < 3 ? 0.01 : 0.2);
        if (targets.count() == 0)
            continue;
        const DistanceField df = distance_transform(targets);
        double deviation = 0.0;
        for (int j = 0; j < targets.grid.height; ++j) {
            for (int i = 0; i < targets.grid.width; ++i)
                deviation = std::max(deviation, std::abs(df.distance[targets.grid.index(i, j)]
                                                         - brute_cell_distance(targets, i, j)));
        }
        CHECK(deviation == 0.0);
    }

    // Non-square grid, one target.
    GridSpec g{{0, 0}, 1.0, 9, 5};
    RegionMask one(g);
    one.inside[g.index(0, 0)] = 1;
    const DistanceField df = distance_transform(one);
    CHECK(df.distance[g.index(3, 4)] == 5.0);
    CHECK(df.distance[g.index(8, 4)] == std::sqrt(80.0));
    CHECK_THROWS_AS(distance_transform(RegionMask(g)), EmptyTargets);
}

TEST_CASE("point-list distance transform")
{
    const double h = 0.1;
    const GridSpec g{{-0.05, -0.05}, h, 10, 10}; // cell (i, j) centered at (i h, j h)
    const std::vector<Point> origin{{0, 0}};
    const DistanceField df = distance_transform(origin, g);
    CHECK(df.distance[g.index(3, 4)] == doctest::Approx(5 * h));

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-0.2, 1.2);
    std::vector<Point> pts;
    for (int i = 0; i < 50; ++i)
        pts.push_back({u(rng), u(rng)});
    const DistanceField dp = distance_transform(pts, g);
    for (std::size_t k = 0; k < g.size(); ++k) {
        double best = INFINITY;
        for (const Point& p : pts)
            best = std::min(best, distance(p, g.center(k)));
        CHECK(dp.distance[k] == best);
    }
    CHECK_THROWS_AS(distance_transform(std::vector<Point>{}, g), EmptyTargets);
}

TEST_CASE("boundary extraction")
{
    RegionMask m(GridSpec{{0, 0}, 1.0, 5, 5});
    for (int j = 1; j <= 3; ++j)
        for (int i = 1; i <= 3; ++i)
            m.inside[m.grid.index(i, j)] = 1;
    CHECK(boundary_extract(m).size() == 8);
    RegionMask edge(GridSpec{{0, 0}, 1.0, 3, 3});
    edge.inside.assign(9, 1);
    CHECK(boundary_extract(edge).size() == 8); // off-grid counts as outside
    CHECK_THROWS_AS(boundary_extract(RegionMask(m.grid)), EmptyInput);
}

TEST_CASE("rasterized disk")
{
    const auto unit = [](double) { return ProfileValue{1.0, 0.0}; };
    const CurveSample s = sample_curve(unit, 1024);
    const double h = 0.01;
    const RegionMask m = rasterize_region(s, GridSpec::square({0, 0}, h, 240));
    CHECK(std::abs(m.area() - kPi) <= 4 * kPi * h);
    CHECK(m.at(120, 120));
    CHECK_THROWS_AS(rasterize_region(CurveSample{}, m.grid), EmptySample);
    const auto open = [](double x) { return ProfileValue{1.0 + x, 0.0}; };
    CHECK_THROWS_AS(rasterize_region(sample_curve(open, 64), m.grid), CurveNotClosed);
}

TEST_CASE("erosion and dilation of disks")
{
    const double h = 1.0 / 64;
    const GridSpec g = GridSpec::square({0, 0}, h, 160);
    const RegionMask disk = disk_mask(g, {0, 0}, 1.0);

    const RegionMask core = erode(disk, 0.4);
    for (const Point& p : boundary_extract(core))
        CHECK(std::abs(norm(p) - 0.6) <= 2 * h);
    CHECK_THROWS_AS(erode(disk, 1.2), EmptyErosion);
    CHECK_THROWS_AS(erode(disk, 0.5 * h), ConfigError);

    const RegionMask grown = dilate(disk_mask(g, {0, 0}, 0.5), 0.3);
    for (const Point& p : boundary_extract(grown))
        CHECK(std::abs(norm(p) - 0.8) <= 2 * h);
    CHECK_THROWS_AS(dilate(RegionMask(g), 0.1), EmptyInput);

    RegionMask cell(GridSpec{{0, 0}, 1.0, 41, 41});
    cell.inside[cell.grid.index(20, 20)] = 1;
    std::size_t lattice = 0;
    for (int a = -10; a <= 10; ++a)
        for (int b = -10; b <= 10; ++b)
            lattice += a * a + b * b <= 100;
    CHECK(dilate(cell, 10.0).count() == lattice);
}

TEST_CASE("erosion composes up to raster error")
{
    std::mt19937_64 rng(13);
    for (int round = 0; round < 4; ++round) {
        const CurveSample s = random_star(rng);
        const double h = 1.0 / 128 * 0.8;
        const RegionMask a = rasterize_region(s, GridSpec::square({0, 0}, h, 128));
        const double e1 = 0.05, e2 = 0.07;
        const RegionMask twice = erode(erode(a, e1), e2);
        const RegionMask once = erode(a, e1 + e2);
        CHECK(hausdorff_distance(boundary_extract(twice), boundary_extract(once)) <= 2 * h);
    }
}

TEST_CASE("dilation is monotone")
{
    std::mt19937_64 rng(5);
    for (int round = 0; round < 5; ++round) {
        RegionMask small = random_mask(rng, 48, 0.01);
        if (small.count() == 0)
            continue;
        RegionMask big = small;
        std::bernoulli_distribution b(0.02);
        for (auto& c : big.inside)
            c = c || b(rng);
        const RegionMask ds = dilate(small, 0.07), db = dilate(big, 0.07);
        for (std::size_t k = 0; k < ds.inside.size(); ++k)
            CHECK((!ds.inside[k] || db.inside[k]));
    }
}

TEST_CASE("opening stays inside the region up to the raster")
{
    std::mt19937_64 rng(31);
    for (int round = 0; round < 6; ++round) {
        const CurveSample s = random_star(rng);
        const double h = 0.006;
        const RegionMask a = rasterize_region(s, GridSpec::square({0, 0}, h, 128));
        const double e = 0.08;
        const RegionMask opened = dilate(erode(a, e), e);
        CHECK(excess(opened, a) <= 2 * h);

        // Cells deeper than 2e must survive the opening.
        const auto edge_cells = boundary_cells(a);
        RegionMask edge(a.grid);
        for (std::size_t k : edge_cells)
            edge.inside[k] = 1;
        const DistanceField depth = distance_transform(edge);
        RegionMask deep(a.grid);
        for (std::size_t k = 0; k < a.inside.size(); ++k)
            deep.inside[k] = a.inside[k] && depth.distance[k] >= 2 * e;
        if (deep.count() > 0)
            CHECK(excess(deep, opened) <= 2 * h);
    }
}

TEST_CASE("PGM round trip")
{
    std::mt19937_64 rng(17);
    const RegionMask m = random_mask(rng, 33, 0.4);
    const std::string bytes = write_pgm(m);
    CHECK(bytes.rfind("P5\n33 33\n255\n", 0) == 0);
    const RegionMask back = read_pgm(bytes, m.grid.origin, m.grid.spacing);
    CHECK(back.inside == m.inside);
    CHECK(back.grid.width == 33);
    const std::string commented("P5 # comment\n2 1\n255\n\x00\xff", 23);
    CHECK(read_pgm(commented, {}, 1.0).at(1, 0));
    CHECK_FALSE(read_pgm(commented, {}, 1.0).at(0, 0));
    CHECK_THROWS_AS(read_pgm("P2\n1 1\n255\n0"), ConfigError);
    CHECK_THROWS_AS(read_pgm(std::string("P5\n4 4\n255\n\x00", 12)), ConfigError);
}

TEST_CASE("reconstruction of a disk and of the reference curve")
{
    const auto unit = [](double) { return ProfileValue{1.0, 0.0}; };
    const CurveSample disk = sample_curve(unit, 4096);
    const double h = 1.0 / 128;
    const GridSpec g = GridSpec::square({0, 0}, h, 420);
    const ReconstructionReport r = verify_reconstruction(disk, 0.3, g);
    CHECK(r.passed);
    CHECK(r.hausdorff_distance <= 3 * h);
    CHECK(r.tolerance == doctest::Approx(3 * h + r.curve_sampling_step));
    CHECK_THROWS_AS(verify_reconstruction(disk, 1.5, g), EmptyErosion);
    CHECK_THROWS_AS(verify_reconstruction(disk, 2 * h, g), ConfigError);

    const std::vector<double> ladder{0.9, 0.5, 0.1};
    const auto found = epsilon_search(disk, g, ladder);
    CHECK(found.epsilon == 0.9);
    CHECK(found.ladder_index == 0);
    const std::vector<double> too_big{3.0, 2.0};
    CHECK_THROWS_AS(epsilon_search(disk, g, too_big), NoneFound);
    const std::vector<double> ascending{0.1, 0.5};
    CHECK_THROWS_AS(epsilon_search(disk, g, ascending), ConfigError);

    const std::string text = format_report(r, "disk");
    CHECK(text.find("disk.passed=true\n") != std::string::npos);
    CHECK(text.find("disk.epsilon=0.29999999999999999\n") != std::string::npos);
}

TEST_CASE("epsilon search is stable under grid refinement")
{
    const ProfileConfig cfg;
    const CurveSample s = sample_curve(jump_profile(cfg), 4096, cfg.enumeration().values());
    double outer = 0.0;
    for (double r : s.radii)
        outer = std::max(outer, r);
    const GridSpec coarse = GridSpec::covering(bounding_box(s.points), 0.8 * outer, 256);
    const GridSpec fine = GridSpec::covering(bounding_box(s.points), 0.8 * outer, 512);
    const auto ladder = epsilon_ladder(inradius(rasterize_region(s, coarse)));
    const auto a = epsilon_search(s, coarse, ladder);
    const auto b = epsilon_search(s, fine, ladder);
    CHECK(b.ladder_index <= a.ladder_index + 1);
}

TEST_CASE("projection multiplicity examples")
{
    const double h = 0.01;
    const GridSpec g = GridSpec::square({0, 0}, h, 100); // centers at odd multiples of h/2

    std::vector<Point> ring;
    for (int k = 0; k < 64; ++k)
        ring.push_back(polar_map(kTwoPi * k / 64, 0.3));
    const PointIndex ring_index(ring);
    CHECK(multiplicity_at(ring_index, {0, 0}, h).count == 64);

    const std::vector<Point> single{{0.123, -0.2}};
    const MultiplicityMap m1 = projection_multiplicity(single, g);
    for (const auto& c : m1.cells)
        CHECK(c.count == 1);

    const std::vector<Point> pair{{-0.2, 0.0}, {0.2, 0.0}};
    const PointIndex pair_index(pair);
    const CellMultiplicity bis = multiplicity_at(pair_index, {0.0, 0.1}, h);
    CHECK(bis.count == 2);
    CHECK(bis.stored == 2);

    CHECK_THROWS_AS(projection_multiplicity(std::vector<Point>{}, g), EmptyTargets);
    MultiplicityOptions narrow;
    narrow.tolerance = h;
    CHECK_THROWS_AS(projection_multiplicity(pair, g, narrow), ConfigError);

    const MultiplicityMap a = projection_multiplicity(ring, g), b = projection_multiplicity(ring, g);
    for (std::size_t k = 0; k < a.cells.size(); ++k)
        CHECK(a.cells[k].count == b.cells[k].count);
}

TEST_CASE("reach estimates")
{
    const double h = 1.0 / 256, delta = 0.5;
    const GridSpec g = GridSpec::square({0, 0}, h, 384);
    const auto circle = boundary_extract(disk_mask(g, {0, 0}, delta));
    for (double r : reach_estimate(circle, g))
        CHECK(std::abs(r - delta) <= 2 * h);

    const double d = 0.4;
    const GridSpec g2 = GridSpec::square({0, 0}, h, 200);
    const std::vector<Point> pair{{-d / 2 + h / 2, h / 2}, {d / 2 + h / 2, h / 2}};
    for (double r : reach_estimate(pair, g2))
        CHECK(std::abs(r - d / 2) <= 2 * h);

    // Square outline: finite, inradius-limited estimate.
    std::vector<Point> square;
    for (int i = 0; i <= 40; ++i) {
        const double t = -0.2 + 0.4 * i / 40;
        for (Point p : {Point{t, -0.2}, Point{t, 0.2}, Point{-0.2, t}, Point{0.2, t}})
            square.push_back(p);
    }
    const auto sq = reach_estimate(square, g2);
    CHECK(*std::min_element(sq.begin(), sq.end()) > 0.0);

    // A single point: every cell of its epsilon-ball projects uniquely.
    const std::vector<Point> point{{0.0, 0.0}};
    const auto far = reach_estimate(point, g2);
    CHECK(far[0] == doctest::Approx(100 * h));
    CHECK_THROWS_AS(reach_estimate(std::vector<Point>{}, g2), EmptyTargets);
}
