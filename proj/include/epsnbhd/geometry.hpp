#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace epsnbhd {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }

struct BoundingBox {
    Point min;
    Point max;
};

/// Throws EmptyInput on an empty span.
BoundingBox bounding_box(std::span<const Point> points);

/// Uniform bucket grid over a fixed point set for exact nearest-point and
/// fixed-radius queries.
class PointIndex {
public:
    /// bucket <= 0 picks a size from the point density.
    explicit PointIndex(std::span<const Point> points, double bucket = 0.0);

    std::size_t size() const { return points_.size(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }

    struct Hit {
        std::size_t index;
        double distance;
    };

    /// Exact nearest point.
    Hit nearest(Point p) const;

    /// Indices of all points within `radius` of p (inclusive), unordered.
    void within(Point p, double radius, std::vector<std::size_t>& out) const;

private:
    int bucket_x(double x) const;
    int bucket_y(double y) const;

    std::vector<Point> points_;
    double bucket_;
    Point origin_;
    int nx_ = 1;
    int ny_ = 1;
    std::vector<std::size_t> starts_;
    std::vector<std::size_t> order_;
};

/// Symmetric Hausdorff distance between two finite point sets. Throws
/// EmptyInput if either is empty.
double hausdorff_distance(std::span<const Point> a, std::span<const Point> b);

/// max over p in a of the distance from p to b.
double directed_hausdorff(std::span<const Point> a, const PointIndex& b);

} // namespace epsnbhd
