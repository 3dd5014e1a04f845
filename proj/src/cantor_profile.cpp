#include "epsnbhd/cantor_profile.hpp"

#include "epsnbhd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace epsnbhd {

namespace {

using u128 = unsigned __int128;

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxDyadicShift = 125;

TernaryExpansion expand_fraction(u128 num, u128 den, int depth)
{
    TernaryExpansion e;
    e.digits.reserve(static_cast<std::size_t>(depth));
    if (num == den) {
        // 1 = 0.222..._3; x 3^D is an integer.
        e.digits.assign(static_cast<std::size_t>(depth), 2);
        e.exact = true;
        e.twos_tail = true;
        return e;
    }
    u128 r = num;
    for (int i = 0; i < depth; ++i) {
        r *= 3;
        e.digits.push_back(static_cast<std::uint8_t>(r / den));
        r %= den;
    }
    e.exact = (r == 0);
    return e;
}

void require_unit(double x, const char* op)
{
    if (!(x >= 0.0 && x <= 1.0))
        throw OutOfDomain(std::string(op) + ": x = " + std::to_string(x) + " outside [0, 1]");
}

void require_circle(double x, const char* op)
{
    if (!(x >= 0.0 && x <= kTwoPi))
        throw OutOfDomain(std::string(op) + ": x = " + std::to_string(x) + " outside [0, 2pi]");
}

std::int64_t pow3(int k)
{
    std::int64_t p = 1;
    for (int i = 0; i < k; ++i)
        p *= 3;
    return p;
}

double regression_slope(std::span<const int> depths, const std::vector<double>& log_counts)
{
    const double log2_3 = std::log2(3.0);
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < depths.size(); ++i) {
        mean_x += depths[i] * log2_3;
        mean_y += log_counts[i];
    }
    mean_x /= static_cast<double>(depths.size());
    mean_y /= static_cast<double>(depths.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < depths.size(); ++i) {
        const double dx = depths[i] * log2_3 - mean_x;
        sxy += dx * (log_counts[i] - mean_y);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

void require_scales(std::span<const int> depths)
{
    std::set<int> distinct(depths.begin(), depths.end());
    if (distinct.size() < 3)
        throw InsufficientScales("box counting needs at least three distinct depths");
    for (int d : depths) {
        if (d < 0 || d > 38)
            throw ConfigError("box depth " + std::to_string(d) + " outside [0, 38]");
    }
}

// Snap a box coordinate to the nearest integer when it sits within rounding noise of it.
double snap(double v)
{
    const double r = std::round(v);
    return std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v)) ? r : v;
}

} // namespace

void CantorConfig::validate() const
{
    if (depth < 8 || depth > 1000)
        throw ConfigError("cantor depth D must lie in [8, 1000]");
    if (recursion < 8 || recursion > 1000)
        throw ConfigError("cantor recursion R must lie in [8, 1000]");
}

double TernaryExpansion::reconstruct() const
{
    double x = 0.0;
    double scale = 1.0;
    for (std::uint8_t d : digits) {
        scale /= 3.0;
        x += d * scale;
    }
    return x;
}

TernaryExpansion ternary_expand(double x, int depth)
{
    require_unit(x, "ternary_expand");
    if (depth < 1)
        throw ConfigError("ternary depth must be positive");
    if (x == 0.0)
        return expand_fraction(0, 1, depth);
    int exponent = 0;
    const double mantissa = std::frexp(x, &exponent);
    u128 num = static_cast<u128>(std::ldexp(mantissa, 53));
    int shift = 53 - exponent;
    bool truncated = false;
    if (shift > kMaxDyadicShift) {
        const int drop = shift - kMaxDyadicShift;
        truncated = drop >= 128 || (num & ((u128{1} << drop) - 1)) != 0;
        num = drop >= 128 ? 0 : num >> drop;
        shift = kMaxDyadicShift;
    }
    TernaryExpansion e = expand_fraction(num, u128{1} << shift, depth);
    e.exact = e.exact && !truncated;
    return e;
}

TernaryExpansion ternary_expand(const RationalAngle& x, int depth)
{
    if (x.numerator() > x.denominator())
        throw OutOfDomain("ternary_expand: x = " + x.str() + " outside [0, 1]");
    if (depth < 1)
        throw ConfigError("ternary depth must be positive");
    return expand_fraction(static_cast<u128>(x.numerator()), static_cast<u128>(x.denominator()), depth);
}

ProfileValue cantor_from_expansion(const TernaryExpansion& e)
{
    const int depth = static_cast<int>(e.digits.size());
    const double radius = std::ldexp(1.0, -depth);
    double sum = 0.0;
    for (int n = 1; n <= depth; ++n) {
        const std::uint8_t a = e.digits[static_cast<std::size_t>(n - 1)];
        if (a == 1)
            return {std::ldexp(1.0, -n) + 0.5 * sum, radius};
        sum += std::ldexp(static_cast<double>(a), -n);
    }
    // An all-2 tail past digit D contributes exactly 2^-D.
    return {0.5 * sum + (e.twos_tail ? radius : 0.0), radius};
}

ProfileValue cantor_eval(double x, const CantorConfig& cfg)
{
    cfg.validate();
    return cantor_from_expansion(ternary_expand(x, cfg.depth));
}

ProfileValue cantor_eval(const RationalAngle& x, const CantorConfig& cfg)
{
    cfg.validate();
    return cantor_from_expansion(ternary_expand(x, cfg.depth));
}

ProfileValue scaled_eval(double x, const CantorConfig& cfg)
{
    require_circle(x, "scaled_eval");
    return cantor_eval(std::min(1.0, x / kTwoPi), cfg);
}

ProfileValue cantor_integral(double x, const CantorConfig& cfg)
{
    cfg.validate();
    require_unit(x, "cantor_integral");
    const double error = std::pow(3.0, -cfg.recursion);
    // F(x) = coef * F(y) + acc, unrolled along the self-similar recursion.
    double coef = 1.0;
    double acc = 0.0;
    double y = x;
    int level = 0;
    while (true) {
        if (y <= 0.0)
            break;
        if (y >= 1.0) {
            acc += coef * 0.5;
            break;
        }
        if (y <= 1.0 / 3.0) {
            if (level == cfg.recursion) {
                // F(y) lies in [0, 1/12] on the first third.
                acc += coef / 24.0;
                break;
            }
            coef /= 6.0;
            y *= 3.0;
            ++level;
        } else if (y <= 2.0 / 3.0) {
            acc += coef * (1.0 / 12.0 + 0.5 * (y - 1.0 / 3.0));
            break;
        } else {
            // Point symmetry of G about (1/2, 1/2).
            acc += coef * (y - 0.5);
            y = 1.0 - y;
        }
    }
    return {acc, error};
}

ProfileValue scaled_integral(double x, const CantorConfig& cfg)
{
    require_circle(x, "scaled_integral");
    const ProfileValue unit = cantor_integral(std::min(1.0, x / kTwoPi), cfg);
    return {kTwoPi * unit.value, kTwoPi * unit.error_radius};
}

double cantor_parabola(double x)
{
    return -x * x / (4.0 * kPi) + kPi;
}

ProfileValue cantor_sum_eval(double x, const CantorConfig& cfg)
{
    const ProfileValue integral = scaled_integral(x, cfg);
    return {integral.value + cantor_parabola(x), integral.error_radius};
}

ProfileValue combined_eval(double x, const ProfileConfig& profile, const CantorConfig& cantor)
{
    return sum_eval(x, profile) + cantor_sum_eval(x, cantor);
}

double combined_semiconvexity_constant(const ProfileConfig& profile)
{
    // P_g'' = -1 / (2 pi) everywhere; I and I_g are convex.
    return semiconvexity_constant(profile) + 1.0 / kTwoPi;
}

CurvatureFailureSet::CurvatureFailureSet(int depth) : depth_(depth)
{
    if (depth < 1 || depth > 30)
        throw ConfigError("curvature failure depth must lie in [1, 30]");
}

std::int64_t CurvatureFailureSet::triadic_index(std::uint64_t i) const
{
    if (i >= size())
        throw OutOfDomain("curvature failure interval index out of range");
    std::int64_t k = 0;
    for (int j = depth_ - 1; j >= 0; --j)
        k = 3 * k + (((i >> j) & 1U) ? 2 : 0);
    return k;
}

Interval CurvatureFailureSet::operator[](std::uint64_t i) const
{
    const double scale = kTwoPi / static_cast<double>(pow3(depth_));
    const auto k = static_cast<double>(triadic_index(i));
    return {k * scale, (k + 1.0) * scale};
}

std::vector<Interval> CurvatureFailureSet::intervals() const
{
    if (depth_ > 24)
        throw ConfigError("refusing to materialize more than 2^24 intervals");
    std::vector<Interval> out;
    out.reserve(size());
    for (std::uint64_t i = 0; i < size(); ++i)
        out.push_back((*this)[i]);
    return out;
}

std::uint64_t box_count(const CurvatureFailureSet& set, int depth)
{
    if (depth < 0 || depth > 38)
        throw ConfigError("box depth outside [0, 38]");
    const int d = set.depth();
    if (depth >= d) {
        // Each construction interval covers 3^(depth - d) boxes; they never share a box.
        std::uint64_t per = 1;
        for (int i = d; i < depth; ++i)
            per *= 3;
        return set.size() * per;
    }
    const std::int64_t coarsen = pow3(d - depth);
    std::uint64_t count = 0;
    std::int64_t last = -1;
    // Triadic indices ascend with i, so distinct boxes appear in runs.
    for (std::uint64_t i = 0; i < set.size(); ++i) {
        const std::int64_t box = set.triadic_index(i) / coarsen;
        if (box != last) {
            ++count;
            last = box;
        }
    }
    return count;
}

std::uint64_t box_count(std::span<const Interval> set, int depth)
{
    if (set.empty())
        throw EmptyInput("box counting needs a nonempty set");
    if (depth < 0 || depth > 38)
        throw ConfigError("box depth outside [0, 38]");
    const double boxes = std::pow(3.0, depth);
    const double side = kTwoPi / boxes;
    std::vector<std::pair<double, double>> ranges;
    ranges.reserve(set.size());
    for (const Interval& iv : set) {
        if (!(iv.lo <= iv.hi) || iv.lo < 0.0 || iv.hi > kTwoPi * (1.0 + 1e-15))
            throw OutOfDomain("box counting interval outside [0, 2pi]");
        double first = std::floor(snap(iv.lo / side));
        double last = std::ceil(snap(iv.hi / side)) - 1.0;
        last = std::max(first, last);
        first = std::min(first, boxes - 1.0);
        last = std::min(last, boxes - 1.0);
        ranges.emplace_back(first, last);
    }
    std::sort(ranges.begin(), ranges.end());
    double count = 0.0;
    double cur_lo = ranges.front().first;
    double cur_hi = ranges.front().second;
    for (std::size_t i = 1; i < ranges.size(); ++i) {
        if (ranges[i].first <= cur_hi) {
            cur_hi = std::max(cur_hi, ranges[i].second);
        } else {
            count += cur_hi - cur_lo + 1.0;
            cur_lo = ranges[i].first;
            cur_hi = ranges[i].second;
        }
    }
    count += cur_hi - cur_lo + 1.0;
    return static_cast<std::uint64_t>(count);
}

double box_counting_dimension(const CurvatureFailureSet& set, std::span<const int> depths)
{
    require_scales(depths);
    std::vector<double> logs;
    for (int d : depths)
        logs.push_back(std::log2(static_cast<double>(box_count(set, d))));
    return regression_slope(depths, logs);
}

double box_counting_dimension(std::span<const Interval> set, std::span<const int> depths)
{
    require_scales(depths);
    std::vector<double> logs;
    for (int d : depths)
        logs.push_back(std::log2(static_cast<double>(box_count(set, d))));
    return regression_slope(depths, logs);
}

} // namespace epsnbhd
