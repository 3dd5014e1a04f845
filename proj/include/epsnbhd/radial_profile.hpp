#pragma once

#include "epsnbhd/rational_enum.hpp"

#include <cstddef>
#include <vector>

namespace epsnbhd {

/// A value with a rigorous bound |value - true| <= error_radius.
struct ProfileValue {
    double value = 0.0;
    double error_radius = 0.0;

    double lower() const { return value - error_radius; }
    double upper() const { return value + error_radius; }
};

inline ProfileValue operator+(ProfileValue a, ProfileValue b)
{
    return {a.value + b.value, a.error_radius + b.error_radius};
}

enum class WeightRule { Geometric };

/// Summable positive weights m_n with an analytic tail bound.
///
/// Geometric(r): m_n = r^(n+1), V = r / (1 - r), tail(K) = r^(K+1) / (1 - r).
/// The default r = 1/2 gives m_n = 2^-(n+1), V = 1 and tail(K) = 2^-K.
class WeightSequence {
public:
    static WeightSequence geometric(double ratio = 0.5);

    WeightRule rule() const { return rule_; }
    double ratio() const { return ratio_; }
    double term(std::size_t n) const;
    double total() const;
    /// Upper bound on sum_{n >= K} term(n); exact for Geometric.
    double tail(std::size_t K) const;

private:
    WeightSequence(WeightRule rule, double ratio) : rule_(rule), ratio_(ratio) {}

    WeightRule rule_;
    double ratio_;
};

/// Coefficients of P(x) = a3 x^3 + a2 x^2 + L.
struct Cubic {
    double a3 = 0.0;
    double a2 = 0.0;
    double a0 = 0.0;

    double operator()(double x) const { return ((a3 * x + a2) * x) * x + a0; }
    double derivative(double x) const { return (3.0 * a3 * x + 2.0 * a2) * x; }
    double second_derivative(double x) const { return 6.0 * a3 * x + 2.0 * a2; }
};

/// Immutable configuration of the jump profile.
///
/// Construction enumerates K rationals, freezes L = I(2pi) from the truncated
/// closed form, fits the cubic to the boundary conditions, and certifies
/// min S > 0 by dense sampling plus a Lipschitz bracket. Throws
/// NonPositiveProfile if the certificate fails.
class ProfileConfig {
public:
    explicit ProfileConfig(WeightSequence weights = WeightSequence::geometric(),
                           std::size_t truncation = 40,
                           EnumerationScheme scheme = EnumerationScheme::DenominatorMajor,
                           std::size_t positivity_samples = 10'000);

    const WeightSequence& weights() const { return weights_; }
    const Enumeration& enumeration() const { return enumeration_; }
    std::size_t truncation() const { return enumeration_.size(); }

    /// m_n for n < K.
    double term(std::size_t n) const { return terms_[n]; }
    /// Cached doubles of q_n for n < K.
    double location(std::size_t n) const { return locations_[n]; }
    double tail() const { return tail_; }
    double total() const { return weights_.total(); }

    double L() const { return L_; }
    const Cubic& cubic() const { return cubic_; }
    /// Certified lower bound on min S over [0, 2pi].
    double certified_min() const { return certified_min_; }

private:
    WeightSequence weights_;
    Enumeration enumeration_;
    std::vector<double> terms_;
    std::vector<double> locations_;
    double tail_ = 0.0;
    double L_ = 0.0;
    Cubic cubic_;
    double certified_min_ = 0.0;
};

/// f(x) = sum_{n<K, q_n <= x} m_n, error tail(K). Upper semi-continuous.
ProfileValue jump_eval(const Angle& x, const ProfileConfig& cfg);

/// I(x) = sum_{n<K} m_n max(0, x - q_n), error x tail(K).
ProfileValue integral_eval(double x, const ProfileConfig& cfg);

double cubic_eval(double x, const ProfileConfig& cfg);
double cubic_derivative(double x, const ProfileConfig& cfg);
double cubic_second_derivative(double x, const ProfileConfig& cfg);

/// S(x) = I(x) + P(x).
ProfileValue sum_eval(double x, const ProfileConfig& cfg);

struct OneSidedDerivatives {
    ProfileValue left;
    ProfileValue right;
    /// Exact sum of the weights located at x; equals right - left in exact arithmetic.
    double jump = 0.0;
};

/// Left and right derivatives of S at x. Left sums q_n < x, right sums q_n <= x.
OneSidedDerivatives one_sided_derivatives(const Angle& x, const ProfileConfig& cfg);

struct Singularity {
    RationalAngle location;
    double jump;
    std::size_t index;
};

/// The top_k enumerated singularities ordered by descending jump, ties by index.
std::vector<Singularity> singularity_table(std::size_t top_k, const ProfileConfig& cfg);

/// C = max(0, -min P'') over [0, 2pi]; S + (C/2) x^2 is convex.
double semiconvexity_constant(const ProfileConfig& cfg);

} // namespace epsnbhd
