#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace epsnbhd {

/// A rational angle p/d in radians, reduced, with 0 <= p/d <= 2pi.
class RationalAngle {
public:
    /// Throws ConfigError when d == 0, when p/d lies outside [0, 2pi], or
    /// when the operands exceed the 2^31 range used for exact comparisons.
    RationalAngle(std::int64_t numerator, std::int64_t denominator);

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }

    /// Correctly rounded double value.
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const;

    friend bool operator==(const RationalAngle&, const RationalAngle&) = default;
    friend std::strong_ordering operator<=>(const RationalAngle& a, const RationalAngle& b);

private:
    std::int64_t num_;
    std::int64_t den_;
};

/// A certified enclosure [lo, hi] of a real angle. Endpoints are exact
/// fractions with 128-bit numerator and denominator; the enclosure of a
/// double or a rational is a single point, the enclosure of 2pi has width
/// 1e-19 < 2^-60.
class Angle {
public:
    /// Exact enclosure of a double (rounded outward to 2^-80 if the double
    /// has bits below that).
    Angle(double x); // NOLINT: implicit by intent, doubles are angles

    static Angle exactly(const RationalAngle& q);
    static Angle two_pi();

    /// Nearest double to the enclosed real.
    double value() const { return approx_; }
    bool is_point() const { return point_; }

    /// Three-way order of q against the enclosed real. Throws
    /// AmbiguousComparison when q lies inside a non-degenerate enclosure.
    std::strong_ordering compare(const RationalAngle& q) const;

    /// True if 0 <= x <= 2pi can be certified.
    bool in_zero_two_pi() const;

private:
    struct Endpoint {
        __int128 num;
        __int128 den;
    };

    Angle(Endpoint lo, Endpoint hi, double approx, bool point);

    Endpoint lo_;
    Endpoint hi_;
    double approx_;
    bool point_;
};

/// q <= x with the rules of Angle::compare.
bool less_equal(const RationalAngle& q, const Angle& x);
/// q < x with the rules of Angle::compare.
bool less(const RationalAngle& q, const Angle& x);

enum class EnumerationScheme { DenominatorMajor };

std::string to_string(EnumerationScheme scheme);
EnumerationScheme parse_enumeration_scheme(const std::string& text);

/// Largest enumeration accepted; larger requests are configuration errors.
inline constexpr std::size_t kMaxEnumeration = 10'000'000;

/// A deterministic injective prefix of an enumeration of Q n [0, 2pi].
///
/// DenominatorMajor lists denominators d = 1, 2, 3, ... and, for each d, the
/// numerators 0 <= p <= floor(2pi d) coprime to d in ascending order, so the
/// first entry is 0/1.
class Enumeration {
public:
    explicit Enumeration(std::size_t count, EnumerationScheme scheme = EnumerationScheme::DenominatorMajor);

    EnumerationScheme scheme() const { return scheme_; }
    std::size_t size() const { return values_.size(); }
    const RationalAngle& operator[](std::size_t n) const { return values_[n]; }
    std::span<const RationalAngle> values() const { return values_; }

    /// |{n < count : q_n <= x}|. Requires count <= size().
    std::size_t index_set_size(const Angle& x, std::size_t count) const;
    std::size_t index_set_size(const Angle& x) const { return index_set_size(x, size()); }

private:
    EnumerationScheme scheme_;
    std::vector<RationalAngle> values_;
};

/// The first `count` rationals in DenominatorMajor order.
std::vector<RationalAngle> enumerate(std::size_t count);

/// |{n < count : q_n <= x}| for the DenominatorMajor order.
std::size_t index_set_size(const Angle& x, std::size_t count);

} // namespace epsnbhd
