#pragma once

#include "run_config.hpp"

#include "epsnbhd/neighborhood_lab.hpp"
#include "epsnbhd/polar_curve.hpp"

#include <functional>
#include <ostream>
#include <string>

namespace epsnbhd::cli {

enum ExitCode : int {
    kOk = 0,
    kProfileInvalid = 2,
    kConfigInvalid = 3,
    kNotAchievable = 4,
};

/// samples + K points: the uniform grid plus every enumerated singularity.
CurveSample build_curve(const RunConfig& config, const ProfileConfig& profile, bool with_cantor);

/// Square grid of config.grid cells around the curve. The margin is 0.8 of
/// the largest radius, which exceeds 2 epsilon for every ladder entry.
GridSpec verification_grid(const CurveSample& sample, int cells);

struct CaseResult {
    std::string name;
    bool found = false;
    double inradius = 0.0;
    EpsilonSearchResult search;
    RegionMask core{GridSpec{}};
};

/// epsilon_search with the ladder factors scaled by the raster inradius.
CaseResult verify_case(const std::string& name, const CurveSample& sample, int cells,
                       std::span<const double> ladder_factors);

int cmd_curve(const RunConfig& config, std::ostream& log);
int cmd_cantor_curve(const RunConfig& config, std::ostream& log);
int cmd_verify(const RunConfig& config, std::ostream& log);
int cmd_singularities(const RunConfig& config, std::ostream& out);

/// Runs a command and maps library errors to exit codes, reporting the
/// message on `err`.
int run_guarded(const std::function<int()>& command, std::ostream& err);

} // namespace epsnbhd::cli
