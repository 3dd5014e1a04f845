#include "epsnbhd/radial_profile.hpp"

#include "epsnbhd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace epsnbhd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_unit_circle(double x, const char* op)
{
    if (!(x >= 0.0 && x <= kTwoPi))
        throw OutOfDomain(std::string(op) + ": x = " + std::to_string(x) + " outside [0, 2pi]");
}

void require_unit_circle(const Angle& x, const char* op)
{
    if (!x.in_zero_two_pi())
        throw OutOfDomain(std::string(op) + ": x = " + std::to_string(x.value()) + " outside [0, 2pi]");
}

double max_abs_on_interval(const Cubic& p)
{
    // P' is a quadratic; its extrema on [0, 2pi] sit at the endpoints or at the vertex.
    double best = std::max(std::abs(p.derivative(0.0)), std::abs(p.derivative(kTwoPi)));
    if (p.a3 != 0.0) {
        const double vertex = -p.a2 / (3.0 * p.a3);
        if (vertex > 0.0 && vertex < kTwoPi)
            best = std::max(best, std::abs(p.derivative(vertex)));
    }
    return best;
}

} // namespace

WeightSequence WeightSequence::geometric(double ratio)
{
    if (!(ratio > 0.0 && ratio < 1.0))
        throw ConfigError("geometric weight ratio must lie in (0, 1)");
    return {WeightRule::Geometric, ratio};
}

double WeightSequence::term(std::size_t n) const
{
    return std::pow(ratio_, static_cast<double>(n) + 1.0);
}

double WeightSequence::total() const
{
    return ratio_ / (1.0 - ratio_);
}

double WeightSequence::tail(std::size_t K) const
{
    return std::pow(ratio_, static_cast<double>(K) + 1.0) / (1.0 - ratio_);
}

ProfileConfig::ProfileConfig(WeightSequence weights, std::size_t truncation, EnumerationScheme scheme,
                             std::size_t positivity_samples)
    : weights_(weights), enumeration_(std::max<std::size_t>(truncation, 1), scheme)
{
    if (truncation < 2)
        throw ConfigError("truncation K must be at least 2");
    if (positivity_samples < 2)
        throw ConfigError("positivity check needs at least 2 samples");

    terms_.resize(truncation);
    locations_.resize(truncation);
    for (std::size_t n = 0; n < truncation; ++n) {
        terms_[n] = weights_.term(n);
        locations_[n] = enumeration_[n].to_double();
    }
    tail_ = weights_.tail(truncation);

    L_ = integral_eval(kTwoPi, *this).value;
    if (!(L_ > 0.0))
        throw NonPositiveProfile("L = I(2pi) must be positive");

    const double V = weights_.total();
    const double pi2 = kPi * kPi;
    cubic_.a3 = (L_ - kPi * V) / (4.0 * pi2 * kPi);
    cubic_.a2 = (2.0 * V * kPi - 3.0 * L_) / (4.0 * pi2);
    cubic_.a0 = L_;

    // min S > 0: the sampled minimum less the Lipschitz slack between nodes.
    const double lipschitz = V + max_abs_on_interval(cubic_);
    const double spacing = kTwoPi / static_cast<double>(positivity_samples - 1);
    double sampled_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < positivity_samples; ++i) {
        const double x = (i + 1 == positivity_samples) ? kTwoPi : spacing * static_cast<double>(i);
        sampled_min = std::min(sampled_min, sum_eval(x, *this).lower());
    }
    certified_min_ = sampled_min - 0.5 * spacing * lipschitz;
    if (!(certified_min_ > 0.0))
        throw NonPositiveProfile("radial profile S is not certified positive (bound "
                                 + std::to_string(certified_min_) + ")");
}

ProfileValue jump_eval(const Angle& x, const ProfileConfig& cfg)
{
    require_unit_circle(x, "jump_eval");
    const auto& rationals = cfg.enumeration();
    double sum = 0.0;
    for (std::size_t n = 0; n < cfg.truncation(); ++n) {
        if (less_equal(rationals[n], x))
            sum += cfg.term(n);
    }
    return {sum, cfg.tail()};
}

ProfileValue integral_eval(double x, const ProfileConfig& cfg)
{
    require_unit_circle(x, "integral_eval");
    double sum = 0.0;
    for (std::size_t n = 0; n < cfg.truncation(); ++n) {
        const double run = x - cfg.location(n);
        if (run > 0.0)
            sum += cfg.term(n) * run;
    }
    return {sum, x * cfg.tail()};
}

double cubic_eval(double x, const ProfileConfig& cfg)
{
    return cfg.cubic()(x);
}

double cubic_derivative(double x, const ProfileConfig& cfg)
{
    return cfg.cubic().derivative(x);
}

double cubic_second_derivative(double x, const ProfileConfig& cfg)
{
    return cfg.cubic().second_derivative(x);
}

ProfileValue sum_eval(double x, const ProfileConfig& cfg)
{
    const ProfileValue integral = integral_eval(x, cfg);
    return {integral.value + cubic_eval(x, cfg), integral.error_radius};
}

OneSidedDerivatives one_sided_derivatives(const Angle& x, const ProfileConfig& cfg)
{
    require_unit_circle(x, "one_sided_derivatives");
    const auto& rationals = cfg.enumeration();
    double below = 0.0;
    double at = 0.0;
    for (std::size_t n = 0; n < cfg.truncation(); ++n) {
        // Order of q_n relative to x.
        const auto order = x.compare(rationals[n]);
        if (order == std::strong_ordering::greater)
            continue;
        if (order == std::strong_ordering::less)
            below += cfg.term(n);
        else
            at += cfg.term(n);
    }
    const double slope = cubic_derivative(x.value(), cfg);
    OneSidedDerivatives d;
    d.left = {below + slope, cfg.tail()};
    d.right = {(below + at) + slope, cfg.tail()};
    d.jump = at;
    return d;
}

std::vector<Singularity> singularity_table(std::size_t top_k, const ProfileConfig& cfg)
{
    if (top_k > cfg.truncation())
        throw ConfigError("top_k = " + std::to_string(top_k) + " exceeds K = " + std::to_string(cfg.truncation()));
    std::vector<Singularity> all;
    all.reserve(cfg.truncation());
    for (std::size_t n = 0; n < cfg.truncation(); ++n)
        all.push_back({cfg.enumeration()[n], cfg.term(n), n});
    std::stable_sort(all.begin(), all.end(), [](const Singularity& a, const Singularity& b) {
        if (a.jump != b.jump)
            return a.jump > b.jump;
        return a.index < b.index;
    });
    all.erase(all.begin() + static_cast<std::ptrdiff_t>(top_k), all.end());
    return all;
}

double semiconvexity_constant(const ProfileConfig& cfg)
{
    // P'' is affine, so its minimum over [0, 2pi] is at an endpoint.
    const double lowest = std::min(cubic_second_derivative(0.0, cfg), cubic_second_derivative(kTwoPi, cfg));
    return std::max(0.0, -lowest);
}

} // namespace epsnbhd
