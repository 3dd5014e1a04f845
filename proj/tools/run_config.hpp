#pragma once

#include "epsnbhd/cantor_profile.hpp"
#include "epsnbhd/radial_profile.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace epsnbhd::cli {

/// Flat key=value run configuration. Defaults reproduce the reference
/// profile: geometric weights 2^-(n+1), 40 singularities.
struct RunConfig {
    std::string weights = "geometric";
    double ratio = 0.5;
    std::size_t truncation = 40;
    EnumerationScheme enumeration = EnumerationScheme::DenominatorMajor;
    int cantor_depth = 48;
    int cantor_recursion = 32;
    std::size_t samples = 4096;
    std::size_t top = 18;
    int grid = 2048;
    /// Multiples of the raster inradius, strictly descending.
    std::vector<double> epsilon_ladder{0.4, 0.2, 0.1, 0.05, 0.025};
    std::vector<int> box_depths{4, 5, 6, 7, 8, 9, 10, 11, 12};
    std::string output = ".";
    std::uint64_t seed = 0;

    /// Throws ConfigError on any invalid field.
    void validate() const;

    ProfileConfig profile() const;
    CantorConfig cantor() const;
};

/// Parses `key = value` lines; `#` starts a comment. Unknown keys, repeated
/// keys and malformed values throw ConfigError. The result is validated.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// The configuration in the format parse_config reads.
std::string format_config(const RunConfig& config);

} // namespace epsnbhd::cli
