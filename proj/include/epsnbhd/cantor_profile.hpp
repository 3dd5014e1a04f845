#pragma once

#include "epsnbhd/radial_profile.hpp"
#include "epsnbhd/rational_enum.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace epsnbhd {

struct CantorConfig {
    /// Ternary digits used by the Cantor function.
    int depth = 48;
    /// Self-similar recursion levels used by the integral.
    int recursion = 32;

    /// Throws ConfigError unless depth >= 8, recursion >= 8 and both fit the
    /// 128-bit digit arithmetic.
    void validate() const;
};

/// First D ternary digits of x in [0, 1]. `exact` is true when x 3^D is an
/// integer; terminating expansions are emitted in their terminating form
/// (1/3 = 0.1), except x = 1 which has only the form 0.222...
struct TernaryExpansion {
    std::vector<std::uint8_t> digits;
    bool exact = false;
    /// Digits beyond D are all 2 (only for x = 1).
    bool twos_tail = false;

    double reconstruct() const;
};

TernaryExpansion ternary_expand(double x, int depth);
TernaryExpansion ternary_expand(const RationalAngle& x, int depth);

/// Cantor function G from a truncated expansion; error 2^-D.
ProfileValue cantor_from_expansion(const TernaryExpansion& e);

ProfileValue cantor_eval(double x, const CantorConfig& cfg = {});
/// Exact-argument overload; G(1/3) = 1/2 needs x = 1/3 exactly.
ProfileValue cantor_eval(const RationalAngle& x, const CantorConfig& cfg = {});

/// g(x) = G(x / 2pi) for x in [0, 2pi].
ProfileValue scaled_eval(double x, const CantorConfig& cfg = {});

/// Integral of G over [0, x] for x in [0, 1], error 3^-R.
ProfileValue cantor_integral(double x, const CantorConfig& cfg = {});

/// I_g(x) = 2pi * cantor_integral(x / 2pi), error 2pi 3^-R.
ProfileValue scaled_integral(double x, const CantorConfig& cfg = {});

/// P_g(x) = -x^2 / (4 pi) + pi.
double cantor_parabola(double x);

/// S_g(x) = I_g(x) + P_g(x); min over [0, 2pi] is pi, attained at both ends.
ProfileValue cantor_sum_eval(double x, const CantorConfig& cfg = {});

/// T(x) = S(x) + S_g(x).
ProfileValue combined_eval(double x, const ProfileConfig& profile, const CantorConfig& cantor = {});

/// Semiconvexity constant of T: C(S) + 1 / (2 pi).
double combined_semiconvexity_constant(const ProfileConfig& profile);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// The 2^d level-d Cantor construction intervals of [0, 1], scaled to
/// [0, 2pi]. Intervals are produced on demand so depths up to 30 are cheap.
class CurvatureFailureSet {
public:
    explicit CurvatureFailureSet(int depth);

    int depth() const { return depth_; }
    std::uint64_t size() const { return std::uint64_t{1} << depth_; }

    /// Left endpoint of interval i in units of 3^-depth on [0, 1].
    std::int64_t triadic_index(std::uint64_t i) const;
    Interval operator[](std::uint64_t i) const;

    /// Materialized intervals; throws ConfigError above 2^24 intervals.
    std::vector<Interval> intervals() const;

private:
    int depth_;
};

/// Slope of log2 N(3^-d) against d log2 3 over the given box depths, where
/// N counts boxes of side 2pi 3^-d meeting the set. Throws
/// InsufficientScales for fewer than three distinct depths.
double box_counting_dimension(const CurvatureFailureSet& set, std::span<const int> depths);
double box_counting_dimension(std::span<const Interval> set, std::span<const int> depths);

/// Number of boxes of side 2pi 3^-depth meeting the set.
std::uint64_t box_count(const CurvatureFailureSet& set, int depth);
std::uint64_t box_count(std::span<const Interval> set, int depth);

} // namespace epsnbhd
