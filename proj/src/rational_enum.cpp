#include "epsnbhd/rational_enum.hpp"

#include "epsnbhd/errors.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace epsnbhd {

namespace {

using i128 = __int128;

constexpr std::int64_t kOperandLimit = std::int64_t{1} << 31;
constexpr int kDyadicBits = 80;

// 2pi = 6.28318530717958647692528676655900576839...
constexpr i128 kPow19 = static_cast<i128>(10'000'000'000'000'000'000ULL);
constexpr i128 kTwoPiLo = static_cast<i128>(6'283'185'307'179'586'476ULL) * 10 + 9;
constexpr i128 kTwoPiHi = kTwoPiLo + 1;

// sign(a/b - c/d) for positive denominators; callers keep products < 2^127.
std::strong_ordering cross_compare(i128 a, i128 b, i128 c, i128 d)
{
    const i128 lhs = a * d;
    const i128 rhs = c * b;
    if (lhs < rhs)
        return std::strong_ordering::less;
    if (lhs > rhs)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

bool within_two_pi(std::int64_t p, std::int64_t d)
{
    // p/d <= lo certifies; p/d > hi refutes. No p/d with d < 2^31 falls in between.
    if (cross_compare(p, d, kTwoPiLo, kPow19) != std::strong_ordering::greater)
        return true;
    if (cross_compare(p, d, kTwoPiHi, kPow19) == std::strong_ordering::greater)
        return false;
    throw AmbiguousComparison("cannot order " + std::to_string(p) + "/" + std::to_string(d) + " against 2pi");
}

} // namespace

RationalAngle::RationalAngle(std::int64_t numerator, std::int64_t denominator)
{
    if (denominator <= 0)
        throw ConfigError("rational angle denominator must be positive");
    if (numerator < 0)
        throw ConfigError("rational angle must be nonnegative");
    if (numerator >= kOperandLimit || denominator >= kOperandLimit)
        throw ConfigError("rational angle operands exceed 2^31");
    const std::int64_t g = std::gcd(numerator, denominator);
    num_ = numerator / g;
    den_ = denominator / g;
    if (!within_two_pi(num_, den_))
        throw ConfigError("rational angle " + str() + " exceeds 2pi");
}

std::string RationalAngle::str() const
{
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const RationalAngle& a, const RationalAngle& b)
{
    return cross_compare(a.num_, a.den_, b.num_, b.den_);
}

Angle::Angle(Endpoint lo, Endpoint hi, double approx, bool point)
    : lo_(lo), hi_(hi), approx_(approx), point_(point)
{
}

Angle::Angle(double x) : approx_(x)
{
    if (!std::isfinite(x) || x < 0.0 || x > 16.0)
        throw OutOfDomain("angle must be finite and in [0, 16]");
    const i128 den = static_cast<i128>(1) << kDyadicBits;
    const double scaled = std::ldexp(x, kDyadicBits);
    const double floor_scaled = std::floor(scaled);
    const i128 lo = static_cast<i128>(floor_scaled);
    lo_ = {lo, den};
    if (floor_scaled == scaled) {
        hi_ = lo_;
        point_ = true;
    } else {
        hi_ = {lo + 1, den};
        point_ = false;
    }
}

Angle Angle::exactly(const RationalAngle& q)
{
    const Endpoint e{q.numerator(), q.denominator()};
    return Angle(e, e, q.to_double(), true);
}

Angle Angle::two_pi()
{
    return Angle({kTwoPiLo, kPow19}, {kTwoPiHi, kPow19}, 2.0 * std::numbers::pi, false);
}

std::strong_ordering Angle::compare(const RationalAngle& q) const
{
    const auto vs_lo = cross_compare(q.numerator(), q.denominator(), lo_.num, lo_.den);
    if (point_)
        return vs_lo;
    if (vs_lo == std::strong_ordering::less)
        return std::strong_ordering::less;
    if (cross_compare(q.numerator(), q.denominator(), hi_.num, hi_.den) == std::strong_ordering::greater)
        return std::strong_ordering::greater;
    throw AmbiguousComparison("rational " + q.str() + " lies inside the enclosure of x = " + std::to_string(approx_));
}

bool Angle::in_zero_two_pi() const
{
    if (lo_.num < 0)
        return false;
    // Enclosure of 2pi itself.
    if (!point_ && lo_.num == kTwoPiLo && lo_.den == kPow19)
        return true;
    if (point_ && lo_.den != (static_cast<i128>(1) << kDyadicBits)) {
        // Rational point: RationalAngle construction already certified it.
        return true;
    }
    // Dyadic: every double <= double(2pi) is below 2pi and every larger double is above.
    return approx_ <= 2.0 * std::numbers::pi;
}

bool less_equal(const RationalAngle& q, const Angle& x)
{
    return x.compare(q) != std::strong_ordering::greater;
}

bool less(const RationalAngle& q, const Angle& x)
{
    return x.compare(q) == std::strong_ordering::less;
}

std::string to_string(EnumerationScheme scheme)
{
    switch (scheme) {
    case EnumerationScheme::DenominatorMajor:
        return "denominator-major";
    }
    return "unknown";
}

EnumerationScheme parse_enumeration_scheme(const std::string& text)
{
    if (text == "denominator-major")
        return EnumerationScheme::DenominatorMajor;
    throw ConfigError("unknown enumeration scheme '" + text + "'");
}

Enumeration::Enumeration(std::size_t count, EnumerationScheme scheme) : scheme_(scheme)
{
    if (count == 0)
        throw ConfigError("enumeration count must be positive");
    if (count > kMaxEnumeration)
        throw ConfigError("enumeration count " + std::to_string(count) + " exceeds the limit of "
                          + std::to_string(kMaxEnumeration));
    values_.reserve(count);
    for (std::int64_t d = 1; values_.size() < count; ++d) {
        for (std::int64_t p = 0; values_.size() < count && within_two_pi(p, d); ++p) {
            if (std::gcd(p, d) == 1)
                values_.emplace_back(p, d);
        }
    }
}

std::size_t Enumeration::index_set_size(const Angle& x, std::size_t count) const
{
    if (count > values_.size())
        throw ConfigError("index_set_size count exceeds the enumeration size");
    if (!x.in_zero_two_pi())
        throw OutOfDomain("x must lie in [0, 2pi]");
    std::size_t n = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (less_equal(values_[i], x))
            ++n;
    }
    return n;
}

std::vector<RationalAngle> enumerate(std::size_t count)
{
    const Enumeration e(count);
    return {e.values().begin(), e.values().end()};
}

std::size_t index_set_size(const Angle& x, std::size_t count)
{
    return Enumeration(count).index_set_size(x, count);
}

} // namespace epsnbhd
