#include "epsnbhd/geometry.hpp"

#include "epsnbhd/errors.hpp"

#include <algorithm>
#include <limits>

namespace epsnbhd {

BoundingBox bounding_box(std::span<const Point> points)
{
    if (points.empty())
        throw EmptyInput("bounding box of an empty point set");
    BoundingBox box{points.front(), points.front()};
    for (const Point& p : points) {
        box.min.x = std::min(box.min.x, p.x);
        box.min.y = std::min(box.min.y, p.y);
        box.max.x = std::max(box.max.x, p.x);
        box.max.y = std::max(box.max.y, p.y);
    }
    return box;
}

PointIndex::PointIndex(std::span<const Point> points, double bucket)
    : points_(points.begin(), points.end()), bucket_(bucket)
{
    if (points_.empty())
        throw EmptyInput("point index needs at least one point");
    const BoundingBox box = bounding_box(points_);
    const double w = box.max.x - box.min.x;
    const double h = box.max.y - box.min.y;
    if (!(bucket_ > 0.0)) {
        // About two points per bucket for curve-like sets.
        const double extent = std::max(w, h);
        bucket_ = extent > 0.0 ? std::max(extent / std::sqrt(static_cast<double>(points_.size())), extent * 1e-6)
                               : 1.0;
    }
    origin_ = box.min;
    nx_ = std::max(1, static_cast<int>(std::floor(w / bucket_)) + 1);
    ny_ = std::max(1, static_cast<int>(std::floor(h / bucket_)) + 1);
    if (static_cast<double>(nx_) * ny_ > 4.0 * points_.size() + 1024.0) {
        // Keep the bucket table proportional to the point count.
        const double scale = std::sqrt(static_cast<double>(nx_) * ny_ / (4.0 * points_.size() + 1024.0));
        bucket_ *= scale;
        nx_ = std::max(1, static_cast<int>(std::floor(w / bucket_)) + 1);
        ny_ = std::max(1, static_cast<int>(std::floor(h / bucket_)) + 1);
    }

    const std::size_t buckets = static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
    std::vector<std::size_t> counts(buckets + 1, 0);
    std::vector<std::size_t> slot(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        slot[i] = static_cast<std::size_t>(bucket_y(points_[i].y)) * nx_ + bucket_x(points_[i].x);
        ++counts[slot[i] + 1];
    }
    for (std::size_t b = 0; b < buckets; ++b)
        counts[b + 1] += counts[b];
    starts_ = counts;
    order_.resize(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i)
        order_[counts[slot[i]]++] = i;
}

int PointIndex::bucket_x(double x) const
{
    return std::clamp(static_cast<int>(std::floor((x - origin_.x) / bucket_)), 0, nx_ - 1);
}

int PointIndex::bucket_y(double y) const
{
    return std::clamp(static_cast<int>(std::floor((y - origin_.y) / bucket_)), 0, ny_ - 1);
}

PointIndex::Hit PointIndex::nearest(Point p) const
{
    const int cx = bucket_x(p.x);
    const int cy = bucket_y(p.y);
    Hit best{0, std::numeric_limits<double>::infinity()};
    const auto scan = [&](int bx, int by) {
        const std::size_t b = static_cast<std::size_t>(by) * nx_ + bx;
        for (std::size_t k = starts_[b]; k < starts_[b + 1]; ++k) {
            const double d = distance(p, points_[order_[k]]);
            if (d < best.distance || (d == best.distance && order_[k] < best.index))
                best = {order_[k], d};
        }
    };
    for (int r = 0;; ++r) {
        const int x0 = cx - r, x1 = cx + r, y0 = cy - r, y1 = cy + r;
        for (int by = std::max(y0, 0); by <= std::min(y1, ny_ - 1); ++by) {
            for (int bx = std::max(x0, 0); bx <= std::min(x1, nx_ - 1); ++bx) {
                if (by != y0 && by != y1 && bx != x0 && bx != x1)
                    continue;
                scan(bx, by);
            }
        }
        const bool covers_all = x0 <= 0 && y0 <= 0 && x1 >= nx_ - 1 && y1 >= ny_ - 1;
        if (covers_all)
            break;
        // Every unscanned point lies outside the scanned box [lo, hi].
        const double lo_x = origin_.x + x0 * bucket_;
        const double hi_x = origin_.x + (x1 + 1) * bucket_;
        const double lo_y = origin_.y + y0 * bucket_;
        const double hi_y = origin_.y + (y1 + 1) * bucket_;
        if (p.x >= lo_x && p.x <= hi_x && p.y >= lo_y && p.y <= hi_y) {
            double margin = std::min({p.x - lo_x, hi_x - p.x, p.y - lo_y, hi_y - p.y});
            // Sides clamped at the table edge have no points beyond them.
            if (x0 <= 0 && x1 >= nx_ - 1)
                margin = std::min(p.y - lo_y, hi_y - p.y);
            if (y0 <= 0 && y1 >= ny_ - 1)
                margin = std::min(p.x - lo_x, hi_x - p.x);
            if (best.distance < margin)
                break;
        }
    }
    return best;
}

void PointIndex::within(Point p, double radius, std::vector<std::size_t>& out) const
{
    out.clear();
    if (radius < 0.0)
        return;
    const int x0 = bucket_x(p.x - radius), x1 = bucket_x(p.x + radius);
    const int y0 = bucket_y(p.y - radius), y1 = bucket_y(p.y + radius);
    for (int by = y0; by <= y1; ++by) {
        for (int bx = x0; bx <= x1; ++bx) {
            const std::size_t b = static_cast<std::size_t>(by) * nx_ + bx;
            for (std::size_t k = starts_[b]; k < starts_[b + 1]; ++k) {
                if (distance(p, points_[order_[k]]) <= radius)
                    out.push_back(order_[k]);
            }
        }
    }
}

double directed_hausdorff(std::span<const Point> a, const PointIndex& b)
{
    double worst = 0.0;
    for (const Point& p : a)
        worst = std::max(worst, b.nearest(p).distance);
    return worst;
}

double hausdorff_distance(std::span<const Point> a, std::span<const Point> b)
{
    if (a.empty() || b.empty())
        throw EmptyInput("Hausdorff distance needs two nonempty sets");
    const PointIndex ia(a);
    const PointIndex ib(b);
    return std::max(directed_hausdorff(a, ib), directed_hausdorff(b, ia));
}

} // namespace epsnbhd
