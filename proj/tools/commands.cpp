#include "commands.hpp"

#include "epsnbhd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

namespace epsnbhd::cli {

namespace {

namespace fs = std::filesystem;

void write_file(const RunConfig& config, const std::string& name, const std::string& content)
{
    const fs::path dir(config.output);
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + (dir / name).string());
    out << content;
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int write_curve(const RunConfig& config, bool with_cantor, const std::string& stem, std::ostream& log)
{
    const ProfileConfig profile = config.profile();
    const CurveSample sample = build_curve(config, profile, with_cantor);
    std::optional<CantorConfig> cantor;
    if (with_cantor)
        cantor = config.cantor();
    const auto wedges = wedge_turn_angles(profile, std::min(config.top, profile.truncation()), cantor);
    write_file(config, stem + ".csv", export_csv(sample));
    write_file(config, stem + ".svg", export_svg(sample, wedges));
    const StarShapeReport star = star_shape_check(sample);
    log << stem << ": " << sample.size() + 1 << " points, " << wedges.size() << " wedge markers, min radius "
        << fmt(star.min_radius) << "\n";
    return kOk;
}

} // namespace

CurveSample build_curve(const RunConfig& config, const ProfileConfig& profile, bool with_cantor)
{
    const auto rationals = profile.enumeration().values();
    if (with_cantor)
        return sample_curve(combined_profile(profile, config.cantor()), config.samples, rationals);
    return sample_curve(jump_profile(profile), config.samples, rationals);
}

GridSpec verification_grid(const CurveSample& sample, int cells)
{
    double outer = sample.end_radius;
    for (double r : sample.radii)
        outer = std::max(outer, r);
    return GridSpec::covering(bounding_box(sample.points), 0.8 * outer, cells);
}

CaseResult verify_case(const std::string& name, const CurveSample& sample, int cells,
                       std::span<const double> ladder_factors)
{
    CaseResult result;
    result.name = name;
    const GridSpec grid = verification_grid(sample, cells);
    result.inradius = inradius(rasterize_region(sample, grid));
    const auto ladder = epsilon_ladder(result.inradius, ladder_factors);
    try {
        result.search = epsilon_search(sample, grid, ladder);
        result.found = true;
        result.core = erode(rasterize_region(sample, grid), result.search.epsilon);
    } catch (const NoneFound&) {
        result.found = false;
    }
    return result;
}

int cmd_curve(const RunConfig& config, std::ostream& log)
{
    return write_curve(config, false, "curve", log);
}

int cmd_cantor_curve(const RunConfig& config, std::ostream& log)
{
    const CurvatureFailureSet set(*std::max_element(config.box_depths.begin(), config.box_depths.end()));
    const double dimension = box_counting_dimension(set, config.box_depths);
    const int code = write_curve(config, true, "cantor_curve", log);

    const ProfileConfig profile = config.profile();
    const CurveSample sample = build_curve(config, profile, true);
    const StarShapeReport star = star_shape_check(sample);
    std::string text = "dimension=" + fmt(dimension) + "\n";
    text += "reference=" + fmt(std::log(2.0) / std::log(3.0)) + "\n";
    text += "depths=";
    for (std::size_t i = 0; i < config.box_depths.size(); ++i)
        text += (i ? "," : "") + std::to_string(config.box_depths[i]);
    text += "\nmin_radius=" + fmt(star.min_radius) + "\n";
    write_file(config, "dimension.txt", text);
    log << "box-counting dimension " << fmt(dimension) << "\n";
    return code;
}

int cmd_verify(const RunConfig& config, std::ostream& log)
{
    const ProfileConfig profile = config.profile();
    const auto unit = [](double) { return ProfileValue{1.0, 0.0}; };

    std::vector<std::pair<std::string, CurveSample>> cases;
    cases.emplace_back("disk", sample_curve(unit, config.samples));
    cases.emplace_back("curve", build_curve(config, profile, false));
    cases.emplace_back("cantor_curve", build_curve(config, profile, true));

    std::string report = "grid=" + std::to_string(config.grid) + "\n";
    bool all_found = true;
    for (const auto& [name, sample] : cases) {
        const CaseResult r = verify_case(name, sample, config.grid, config.epsilon_ladder);
        report += name + ".inradius=" + fmt(r.inradius) + "\n";
        if (!r.found) {
            all_found = false;
            report += name + ".passed=false\n" + name + ".error=no epsilon on the ladder verifies\n";
            log << name << ": no epsilon found\n";
            continue;
        }
        report += name + ".ladder_index=" + std::to_string(r.search.ladder_index) + "\n";
        report += format_report(r.search.report, name);
        write_file(config, name + "_core.pgm", write_pgm(r.core));
        log << name << ": epsilon " << fmt(r.search.epsilon) << ", hausdorff "
            << fmt(r.search.report.hausdorff_distance) << ", passed\n";
    }
    report += std::string("all_passed=") + (all_found ? "true" : "false") + "\n";
    write_file(config, "report.txt", report);
    return all_found ? kOk : kNotAchievable;
}

int cmd_singularities(const RunConfig& config, std::ostream& out)
{
    const ProfileConfig profile = config.profile();
    const auto table = singularity_table(config.top, profile);
    std::map<std::size_t, double> turns;
    for (const WedgeRecord& w : wedge_turn_angles(profile, config.top))
        turns[w.index] = w.turn_angle;
    for (const Singularity& s : table) {
        out << s.index << '\t' << s.location.str() << '\t' << fmt(s.location.to_double()) << '\t' << fmt(s.jump)
            << '\t' << fmt(turns.at(s.index)) << '\n';
    }
    return kOk;
}

int run_guarded(const std::function<int()>& command, std::ostream& err)
{
    try {
        return command();
    } catch (const NonPositiveProfile& e) {
        err << "error: " << e.what() << "\n";
        return kProfileInvalid;
    } catch (const NonPositiveRadius& e) {
        err << "error: " << e.what() << "\n";
        return kProfileInvalid;
    } catch (const NoneFound& e) {
        err << "error: " << e.what() << "\n";
        return kNotAchievable;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigInvalid;
    } catch (const InsufficientScales& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigInvalid;
    } catch (const OutOfDomain& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigInvalid;
    }
}

} // namespace epsnbhd::cli
