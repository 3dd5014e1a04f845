#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epsnbhd/errors.hpp"
#include "epsnbhd/radial_profile.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace epsnbhd;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const ProfileConfig& reference()
{
    static const ProfileConfig cfg;
    return cfg;
}

double distance_to_singularity(double x, const ProfileConfig& cfg)
{
    double d = INFINITY;
    for (std::size_t n = 0; n < cfg.truncation(); ++n)
        d = std::min(d, std::abs(x - cfg.location(n)));
    return d;
}

// Midpoint rule for the step function f on [0, x], with f from a direct scan.
long double midpoint_integral(double x, const ProfileConfig& cfg, int nodes)
{
    const long double h = static_cast<long double>(x) / nodes;
    long double sum = 0.0L;
    for (int i = 0; i < nodes; ++i) {
        const long double t = (i + 0.5L) * h;
        long double f = 0.0L;
        for (std::size_t n = 0; n < cfg.truncation(); ++n) {
            if (static_cast<long double>(cfg.location(n)) <= t)
                f += cfg.term(n);
        }
        sum += f;
    }
    return sum * h;
}

} // namespace

TEST_CASE("geometric weights")
{
    const auto w = WeightSequence::geometric();
    CHECK(w.term(0) == 0.5);
    CHECK(w.term(9) == std::ldexp(1.0, -10));
    CHECK(w.total() == 1.0);
    CHECK(w.tail(40) == std::ldexp(1.0, -40));
    CHECK(WeightSequence::geometric(0.25).total() == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(WeightSequence::geometric(1.0), ConfigError);
    CHECK_THROWS_AS(WeightSequence::geometric(0.0), ConfigError);
}

TEST_CASE("cubic meets its boundary conditions")
{
    const auto& cfg = reference();
    const double V = cfg.total();
    CHECK(std::abs(cubic_eval(0.0, cfg) - cfg.L()) <= 1e-12);
    CHECK(std::abs(cubic_derivative(0.0, cfg)) <= 1e-12);
    CHECK(std::abs(cubic_eval(kTwoPi, cfg)) <= 1e-12);
    CHECK(std::abs(cubic_derivative(kTwoPi, cfg) + V) <= 1e-12);
    // S(0) = S(2pi) closes the curve.
    CHECK(std::abs(sum_eval(0.0, cfg).value - sum_eval(kTwoPi, cfg).value) <= 1e-12);
}

TEST_CASE("L equals a long double recomputation of I(2pi)")
{
    const auto& cfg = reference();
    long double L = 0.0L;
    const long double two_pi = 6.283185307179586476925286766559L;
    for (std::size_t n = 0; n < cfg.truncation(); ++n) {
        const auto& q = cfg.enumeration()[n];
        L += std::ldexp(1.0L, -static_cast<int>(n) - 1)
             * (two_pi - static_cast<long double>(q.numerator()) / q.denominator());
    }
    CHECK(std::abs(static_cast<long double>(cfg.L()) - L) <= 1e-14L);
}

TEST_CASE("integral agrees with midpoint quadrature within its error bound")
{
    const auto& cfg = reference();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int t = 0; t < 20; ++t) {
        const double x = u(rng);
        const int nodes = 20000;
        const long double q = midpoint_integral(x, cfg, nodes);
        // A step of height m shifts the midpoint sum by at most m h / 2.
        const double bound = cfg.total() * x / nodes / 2.0 + integral_eval(x, cfg).error_radius + 1e-12;
        CHECK(std::abs(static_cast<double>(q) - integral_eval(x, cfg).value) <= bound);
    }
}

TEST_CASE("jump function is upper semi-continuous at the rationals")
{
    const auto& cfg = reference();
    for (std::size_t n = 1; n < cfg.truncation(); ++n) {
        const RationalAngle q = cfg.enumeration()[n];
        const double below = jump_eval(Angle(std::nextafter(q.to_double(), 0.0)), cfg).value;
        const double at = jump_eval(Angle::exactly(q), cfg).value;
        CHECK(at - below >= cfg.term(n));
    }
    CHECK(jump_eval(Angle(0.0), cfg).value == 0.5);
    CHECK(jump_eval(Angle::two_pi(), cfg).value == doctest::Approx(1.0 - std::ldexp(1.0, -40)).epsilon(1e-15));
    CHECK_THROWS_AS(jump_eval(Angle(7.0), cfg), OutOfDomain);
    CHECK_THROWS_AS(integral_eval(-0.5, cfg), OutOfDomain);
}

TEST_CASE("one-sided derivatives: exact jumps and centered differences")
{
    const auto& cfg = reference();
    for (std::size_t n = 0; n < cfg.truncation(); ++n) {
        const auto d = one_sided_derivatives(Angle::exactly(cfg.enumeration()[n]), cfg);
        CHECK(d.jump == cfg.term(n));
    }

    // Away from the singularities S is C^1 and a centered difference must
    // match both one-sided derivatives.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.01, kTwoPi - 0.01);
    const double delta = 1e-5;
    int checked = 0;
    while (checked < 200) {
        const double x = u(rng);
        if (distance_to_singularity(x, cfg) < 10 * delta)
            continue;
        ++checked;
        const auto d = one_sided_derivatives(Angle(x), cfg);
        const double fd = (sum_eval(x + delta, cfg).value - sum_eval(x - delta, cfg).value) / (2 * delta);
        CHECK(d.jump == 0.0);
        CHECK(d.left.value == d.right.value);
        CHECK(std::abs(fd - d.left.value) <= 1e-7);
    }
}

TEST_CASE("singularity table")
{
    const auto& cfg = reference();
    const auto t = singularity_table(18, cfg);
    REQUIRE(t.size() == 18);
    CHECK(t[0].location == RationalAngle(0, 1));
    double total = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        total += t[i].jump;
        if (i > 0)
            CHECK(t[i].jump < t[i - 1].jump);
    }
    CHECK(total <= cfg.total());
    CHECK(singularity_table(1, cfg).size() == 1);
    CHECK_THROWS_AS(singularity_table(41, cfg), ConfigError);
}

TEST_CASE("positivity certificate")
{
    const auto& cfg = reference();
    CHECK(cfg.certified_min() > 0.0);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int t = 0; t < 5000; ++t)
        CHECK(sum_eval(u(rng), cfg).lower() >= cfg.certified_min());
    // Two samples leave a Lipschitz slack larger than min S.
    CHECK_THROWS_AS(ProfileConfig(WeightSequence::geometric(), 40, EnumerationScheme::DenominatorMajor, 2),
                    NonPositiveProfile);
    CHECK_THROWS_AS(ProfileConfig(WeightSequence::geometric(), 1), ConfigError);
}

TEST_CASE("semiconvexity: S + (C/2) x^2 is midpoint convex")
{
    const auto& cfg = reference();
    const double C = semiconvexity_constant(cfg);
    CHECK(C >= 0.0);
    CHECK(C >= -cubic_second_derivative(0.0, cfg) - 1e-12);
    CHECK(C >= -cubic_second_derivative(kTwoPi, cfg) - 1e-12);
    const auto F = [&](double x) { return sum_eval(x, cfg).value + 0.5 * C * x * x; };
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int t = 0; t < 10000; ++t) {
        const double a = u(rng), b = u(rng);
        const double m = 0.5 * (a + b);
        const double err = 2.0 * kTwoPi * cfg.tail() + 1e-12;
        CHECK(F(m) <= 0.5 * (F(a) + F(b)) + 4.0 * err);
    }
}
