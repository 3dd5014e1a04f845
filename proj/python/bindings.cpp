#include "epsnbhd/cantor_profile.hpp"
#include "epsnbhd/errors.hpp"
#include "epsnbhd/geometry.hpp"
#include "epsnbhd/neighborhood_lab.hpp"
#include "epsnbhd/polar_curve.hpp"
#include "epsnbhd/radial_profile.hpp"
#include "epsnbhd/rational_enum.hpp"

#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace epsnbhd;

namespace {

py::array_t<double> points_array(const std::vector<Point>& pts)
{
    py::array_t<double> out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
    auto v = out.mutable_unchecked<2>();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        v(k, 0) = pts[k].x;
        v(k, 1) = pts[k].y;
    }
    return out;
}

std::vector<Point> to_points(const py::array_t<double, py::array::c_style | py::array::forcecast>& a)
{
    if (a.ndim() != 2 || a.shape(1) != 2)
        throw ConfigError("expected an (n, 2) array of points");
    auto v = a.unchecked<2>();
    std::vector<Point> out(a.shape(0));
    for (py::ssize_t k = 0; k < a.shape(0); ++k)
        out[k] = {v(k, 0), v(k, 1)};
    return out;
}

py::array_t<std::uint8_t> mask_array(const RegionMask& m)
{
    // Row j of the array is grid row j, counted from the bottom.
    py::array_t<std::uint8_t> out({m.grid.height, m.grid.width});
    std::copy(m.inside.begin(), m.inside.end(), out.mutable_data());
    return out;
}

RegionMask to_mask(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a, const GridSpec& g)
{
    if (a.ndim() != 2 || a.shape(0) != g.height || a.shape(1) != g.width)
        throw ConfigError("mask shape does not match the grid");
    RegionMask m(g);
    std::copy(a.data(), a.data() + g.size(), m.inside.begin());
    return m;
}

ProfileConfig make_profile(double ratio, std::size_t truncation)
{
    return ProfileConfig(WeightSequence::geometric(ratio), truncation);
}

CurveSample sample(const ProfileConfig& cfg, std::size_t n, bool cantor)
{
    const RadialFunction r = cantor ? combined_profile(cfg, CantorConfig{}) : jump_profile(cfg);
    return sample_curve(r, n, cfg.enumeration().values());
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Nowhere-smooth epsilon-neighbourhood boundaries and raster verification";

    static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
    static py::exception<ConfigError> config_error(m, "ConfigError", base.ptr());
    static py::exception<OutOfDomain> out_of_domain(m, "OutOfDomain", base.ptr());
    static py::exception<NonPositiveProfile> nonpositive_profile(m, "NonPositiveProfile", base.ptr());
    static py::exception<NonPositiveRadius> nonpositive_radius(m, "NonPositiveRadius", base.ptr());
    static py::exception<InsufficientScales> insufficient(m, "InsufficientScales", base.ptr());
    static py::exception<NoneFound> none_found(m, "NoneFound", base.ptr());
    static py::exception<EmptyErosion> empty_erosion(m, "EmptyErosion", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const ConfigError& e) {
            config_error(e.what());
        } catch (const OutOfDomain& e) {
            out_of_domain(e.what());
        } catch (const NonPositiveProfile& e) {
            nonpositive_profile(e.what());
        } catch (const NonPositiveRadius& e) {
            nonpositive_radius(e.what());
        } catch (const InsufficientScales& e) {
            insufficient(e.what());
        } catch (const NoneFound& e) {
            none_found(e.what());
        } catch (const EmptyErosion& e) {
            empty_erosion(e.what());
        } catch (const Error& e) {
            base(e.what());
        }
    });

    py::class_<ProfileValue>(m, "ProfileValue")
        .def_readonly("value", &ProfileValue::value)
        .def_readonly("error_radius", &ProfileValue::error_radius)
        .def("__float__", [](const ProfileValue& v) { return v.value; })
        .def("__repr__", [](const ProfileValue& v) {
            return "ProfileValue(" + py::repr(py::float_(v.value)).cast<std::string>() + " +- "
                + py::repr(py::float_(v.error_radius)).cast<std::string>() + ")";
        });

    py::class_<RationalAngle>(m, "RationalAngle")
        .def(py::init<std::int64_t, std::int64_t>(), py::arg("numerator"), py::arg("denominator"))
        .def_property_readonly("numerator", &RationalAngle::numerator)
        .def_property_readonly("denominator", &RationalAngle::denominator)
        .def("__float__", &RationalAngle::to_double)
        .def("__str__", &RationalAngle::str)
        .def("__repr__", [](const RationalAngle& q) { return "RationalAngle(" + q.str() + ")"; })
        .def(py::self == py::self)
        .def("__lt__", [](const RationalAngle& a, const RationalAngle& b) { return a < b; })
        .def("__hash__", [](const RationalAngle& q) { return py::hash(py::make_tuple(q.numerator(), q.denominator())); });

    m.def("enumerate_rationals", &enumerate, py::arg("count"),
          "The first `count` rationals of [0, 2pi], denominators ascending.");

    py::class_<ProfileConfig>(m, "ProfileConfig")
        .def(py::init(&make_profile), py::arg("ratio") = 0.5, py::arg("truncation") = 40)
        .def_property_readonly("truncation", &ProfileConfig::truncation)
        .def_property_readonly("L", &ProfileConfig::L)
        .def_property_readonly("total", &ProfileConfig::total)
        .def_property_readonly("tail", &ProfileConfig::tail)
        .def_property_readonly("certified_min", &ProfileConfig::certified_min)
        .def_property_readonly("cubic", [](const ProfileConfig& c) {
            return py::make_tuple(c.cubic().a3, c.cubic().a2, c.cubic().a0);
        })
        .def("term", &ProfileConfig::term)
        .def("location", [](const ProfileConfig& c, std::size_t n) { return c.enumeration()[n]; });

    m.def("jump_eval", [](double x, const ProfileConfig& c) { return jump_eval(Angle(x), c); }, py::arg("x"), py::arg("cfg"));
    m.def("jump_eval", [](const RationalAngle& q, const ProfileConfig& c) { return jump_eval(Angle::exactly(q), c); },
          py::arg("q"), py::arg("cfg"));
    m.def("integral_eval", &integral_eval, py::arg("x"), py::arg("cfg"));
    m.def("sum_eval", &sum_eval, py::arg("x"), py::arg("cfg"));
    m.def("cubic_eval", &cubic_eval, py::arg("x"), py::arg("cfg"));
    m.def("cubic_derivative", &cubic_derivative, py::arg("x"), py::arg("cfg"));
    m.def("semiconvexity_constant", &semiconvexity_constant, py::arg("cfg"));

    const auto derivatives = [](const OneSidedDerivatives& d) {
        return py::dict(py::arg("left") = d.left, py::arg("right") = d.right, py::arg("jump") = d.jump);
    };
    m.def("one_sided_derivatives",
          [derivatives](double x, const ProfileConfig& c) { return derivatives(one_sided_derivatives(Angle(x), c)); },
          py::arg("x"), py::arg("cfg"));
    m.def("one_sided_derivatives",
          [derivatives](const RationalAngle& q, const ProfileConfig& c) {
              return derivatives(one_sided_derivatives(Angle::exactly(q), c));
          },
          py::arg("q"), py::arg("cfg"));
    m.def("one_sided_derivatives_at_two_pi",
          [derivatives](const ProfileConfig& c) { return derivatives(one_sided_derivatives(Angle::two_pi(), c)); },
          py::arg("cfg"));

    m.def("singularity_table",
          [](std::size_t top_k, const ProfileConfig& c) {
              py::list out;
              for (const Singularity& s : singularity_table(top_k, c))
                  out.append(py::make_tuple(s.index, s.location, s.jump));
              return out;
          },
          py::arg("top_k"), py::arg("cfg"), "(index, location, jump) rows by descending jump.");

    m.def("cantor_eval", [](double x) { return cantor_eval(x); }, py::arg("x"));
    m.def("cantor_eval", [](const RationalAngle& q) { return cantor_eval(q); }, py::arg("q"));
    m.def("cantor_integral", [](double x) { return cantor_integral(x); }, py::arg("x"));
    m.def("scaled_integral", [](double x) { return scaled_integral(x); }, py::arg("x"));
    m.def("cantor_sum_eval", [](double x) { return cantor_sum_eval(x); }, py::arg("x"));
    m.def("combined_eval", [](double x, const ProfileConfig& c) { return combined_eval(x, c); }, py::arg("x"),
          py::arg("cfg"));
    m.def("combined_semiconvexity_constant", &combined_semiconvexity_constant, py::arg("cfg"));
    m.def("box_counting_dimension",
          [](int level, const std::vector<int>& depths) {
              return box_counting_dimension(CurvatureFailureSet(level), depths);
          },
          py::arg("level"), py::arg("depths"));

    py::class_<CurveSample>(m, "CurveSample")
        .def_property_readonly("parameters", [](const CurveSample& s) { return py::array(py::cast(s.parameters)); })
        .def_property_readonly("radii", [](const CurveSample& s) { return py::array(py::cast(s.radii)); })
        .def_property_readonly("errors", [](const CurveSample& s) { return py::array(py::cast(s.errors)); })
        .def_property_readonly("points", [](const CurveSample& s) { return points_array(s.points); })
        .def_readonly("closed", &CurveSample::closed)
        .def("__len__", &CurveSample::size)
        .def("radius_at", &CurveSample::radius_at)
        .def("sampling_step", &CurveSample::sampling_step);

    m.def("sample_curve", &sample, py::arg("cfg"), py::arg("samples") = 4096, py::arg("cantor") = false,
          "Uniform samples plus every enumerated singularity.");
    m.def("sample_radius",
          [](double radius, std::size_t n) {
              return sample_curve([radius](double) { return ProfileValue{radius, 0.0}; }, n);
          },
          py::arg("radius"), py::arg("samples") = 4096, "A sampled circle.");
    m.def("export_csv", &export_csv, py::arg("sample"));

    py::class_<WedgeRecord>(m, "WedgeRecord")
        .def_readonly("location", &WedgeRecord::location)
        .def_readonly("index", &WedgeRecord::index)
        .def_readonly("jump", &WedgeRecord::jump)
        .def_readonly("radius", &WedgeRecord::radius)
        .def_readonly("left_slope", &WedgeRecord::left_slope)
        .def_readonly("right_slope", &WedgeRecord::right_slope)
        .def_readonly("turn_angle", &WedgeRecord::turn_angle)
        .def_property_readonly("point", [](const WedgeRecord& w) { return py::make_tuple(w.point.x, w.point.y); });

    m.def("wedge_turn_angles",
          [](const ProfileConfig& c, std::size_t top_k, bool cantor) {
              return wedge_turn_angles(c, top_k, cantor ? std::optional<CantorConfig>(CantorConfig{}) : std::nullopt);
          },
          py::arg("cfg"), py::arg("top_k") = 18, py::arg("cantor") = false);
    m.def("export_svg",
          [](const CurveSample& s, const std::vector<WedgeRecord>& w) { return export_svg(s, w); }, py::arg("sample"),
          py::arg("wedges") = std::vector<WedgeRecord>{});

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](double x0, double y0, double spacing, int width, int height) {
                 GridSpec g{{x0, y0}, spacing, width, height};
                 g.validate();
                 return g;
             }),
             py::arg("x0"), py::arg("y0"), py::arg("spacing"), py::arg("width"), py::arg("height"))
        .def_static("square", [](double cx, double cy, double spacing, int n) {
            return GridSpec::square({cx, cy}, spacing, n);
        }, py::arg("cx"), py::arg("cy"), py::arg("spacing"), py::arg("n"))
        .def_static("covering", [](const CurveSample& s, double margin, int n) {
            return GridSpec::covering(bounding_box(s.points), margin, n);
        }, py::arg("sample"), py::arg("margin"), py::arg("n"))
        .def_property_readonly("origin", [](const GridSpec& g) { return py::make_tuple(g.origin.x, g.origin.y); })
        .def_readonly("spacing", &GridSpec::spacing)
        .def_readonly("width", &GridSpec::width)
        .def_readonly("height", &GridSpec::height);

    py::class_<ReconstructionReport>(m, "ReconstructionReport")
        .def_readonly("epsilon", &ReconstructionReport::epsilon)
        .def_readonly("hausdorff_distance", &ReconstructionReport::hausdorff_distance)
        .def_readonly("tolerance", &ReconstructionReport::tolerance)
        .def_readonly("passed", &ReconstructionReport::passed)
        .def_readonly("cell_spacing", &ReconstructionReport::cell_spacing)
        .def_readonly("curve_sampling_step", &ReconstructionReport::curve_sampling_step)
        .def_readonly("eroded_cells", &ReconstructionReport::eroded_cells)
        .def("__str__", [](const ReconstructionReport& r) { return format_report(r); });

    m.def("rasterize_region", [](const CurveSample& s, const GridSpec& g) { return mask_array(rasterize_region(s, g)); },
          py::arg("sample"), py::arg("grid"), "Inside mask, shape (height, width), row 0 at the bottom.");
    m.def("boundary_extract",
          [](const py::array_t<std::uint8_t>& mask, const GridSpec& g) {
              return points_array(boundary_extract(to_mask(mask, g)));
          },
          py::arg("mask"), py::arg("grid"));
    m.def("erode",
          [](const py::array_t<std::uint8_t>& mask, const GridSpec& g, double eps) {
              return mask_array(erode(to_mask(mask, g), eps));
          },
          py::arg("mask"), py::arg("grid"), py::arg("epsilon"));
    m.def("dilate",
          [](const py::array_t<std::uint8_t>& mask, const GridSpec& g, double eps) {
              return mask_array(dilate(to_mask(mask, g), eps));
          },
          py::arg("mask"), py::arg("grid"), py::arg("epsilon"));
    m.def("inradius",
          [](const py::array_t<std::uint8_t>& mask, const GridSpec& g) { return inradius(to_mask(mask, g)); },
          py::arg("mask"), py::arg("grid"));
    m.def("distance_transform",
          [](const py::array_t<double>& targets, const GridSpec& g) {
              const auto pts = to_points(targets);
              const DistanceField f = distance_transform(pts, g);
              py::array_t<double> out({g.height, g.width});
              std::copy(f.distance.begin(), f.distance.end(), out.mutable_data());
              return out;
          },
          py::arg("targets"), py::arg("grid"));

    m.def("verify_reconstruction",
          [](const CurveSample& s, double eps, const GridSpec& g) { return verify_reconstruction(s, eps, g); },
          py::arg("sample"), py::arg("epsilon"), py::arg("grid"));
    m.def("epsilon_search",
          [](const CurveSample& s, const GridSpec& g, const std::vector<double>& ladder) {
              const EpsilonSearchResult r = epsilon_search(s, g, ladder);
              return py::make_tuple(r.epsilon, r.ladder_index, r.report);
          },
          py::arg("sample"), py::arg("grid"), py::arg("ladder"), "Returns (epsilon, ladder_index, report).");
    m.def("epsilon_ladder",
          [](double inradius, const std::vector<double>& factors) { return epsilon_ladder(inradius, factors); },
          py::arg("inradius"), py::arg("factors") = std::vector<double>(kDefaultLadder.begin(), kDefaultLadder.end()));

    m.def("projection_multiplicity",
          [](const py::array_t<double>& targets, const GridSpec& g, double tolerance) {
              const auto pts = to_points(targets);
              const MultiplicityMap map = projection_multiplicity(pts, g, {tolerance, 0.0});
              py::array_t<std::uint32_t> out({g.height, g.width});
              auto* p = out.mutable_data();
              for (std::size_t k = 0; k < map.cells.size(); ++k)
                  p[k] = map.cells[k].count;
              return out;
          },
          py::arg("targets"), py::arg("grid"), py::arg("tolerance") = 0.0,
          "Per-cell projection multiplicity; tolerance 0 means two cells.");
    m.def("reach_estimate",
          [](const py::array_t<double>& targets, const GridSpec& g) {
              const auto pts = to_points(targets);
              return py::array(py::cast(reach_estimate(pts, g)));
          },
          py::arg("targets"), py::arg("grid"));
    m.def("hausdorff_distance",
          [](const py::array_t<double>& a, const py::array_t<double>& b) {
              return hausdorff_distance(to_points(a), to_points(b));
          },
          py::arg("a"), py::arg("b"));
}
