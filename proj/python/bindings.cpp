#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "quermass/grassmannian.hpp"
#include "quermass/harness/corpus.hpp"
#include "quermass/harness/io.hpp"
#include "quermass/harness/suite.hpp"
#include "quermass/mixed_volumes.hpp"
#include "quermass/unit_ball.hpp"

namespace py = pybind11;
using namespace quermass;

namespace {

Vec to_vec(const std::vector<double>& x)
{
    require(!x.empty() && x.size() <= static_cast<std::size_t>(kMaxDim), "vector length must be 1..4");
    Vec v(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) v(static_cast<Eigen::Index>(i)) = x[i];
    return v;
}

std::vector<double> from_vec(const Vec& v) { return {v.data(), v.data() + v.size()}; }

Mat to_mat(const std::vector<std::vector<double>>& rows)
{
    const auto n = static_cast<Eigen::Index>(rows.size());
    require(n >= 1 && n <= kMaxDim, "matrix size must be 1..4");
    Mat m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        require(static_cast<Eigen::Index>(rows[i].size()) == n, "matrix must be square");
        for (Eigen::Index k = 0; k < n; ++k) m(i, k) = rows[i][k];
    }
    return m;
}

py::dict estimate_dict(const Estimate& e)
{
    py::dict d;
    d["value"] = e.value;
    d["stderr"] = e.std_error;
    d["samples"] = e.samples;
    d["seed"] = e.seed;
    return d;
}

} // namespace

PYBIND11_MODULE(_quermass, m)
{
    m.doc() = "Orlicz mixed volumes and affine quermassintegrals of convex bodies in dimensions 2 to 4";

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<ComputationError>(m, "ComputationError", PyExc_RuntimeError);
    py::register_exception<harness::ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<OrliczFunction>(m, "OrliczFunction")
        .def("__call__", &OrliczFunction::operator())
        .def_property_readonly("name", &OrliczFunction::name)
        .def_property_readonly("left_derivative_at_one", &OrliczFunction::left_derivative_at_one)
        .def("inverse", &OrliczFunction::inverse)
        .def("__repr__", [](const OrliczFunction& f) { return "<OrliczFunction " + f.name() + ">"; });
    m.def("power", &make_power, py::arg("p"), "phi(t) = t^p, p >= 1");
    m.def("normalized_exp", &make_normalized_exp, py::arg("alpha"), "phi(t) = (e^{alpha t} - 1) / (e^alpha - 1)");
    m.def("parse_phi", &harness::parse_phi, py::arg("text"), "JSON object or power:P / exp:ALPHA");

    py::class_<ConvexBody>(m, "ConvexBody")
        .def_static("polytope",
                    [](const std::vector<std::vector<double>>& pts) {
                        PointList p;
                        for (const auto& x : pts) p.push_back(to_vec(x));
                        return ConvexBody::polytope(p);
                    },
                    py::arg("vertices"))
        .def_static("ellipsoid", [](const std::vector<std::vector<double>>& a) { return ConvexBody::ellipsoid(to_mat(a)); },
                    py::arg("shape"), "{x : x^T shape^{-1} x <= 1}")
        .def_static("ball", &ConvexBody::ball, py::arg("radius"), py::arg("dim"))
        .def_property_readonly("dim", &ConvexBody::dim)
        .def_property_readonly("kind", &ConvexBody::kind_name)
        .def("h", [](const ConvexBody& K, const std::vector<double>& u) { return K.h(to_vec(u)); }, py::arg("u"),
             "support function at a unit vector")
        .def("vertices",
             [](const ConvexBody& K) {
                 std::vector<std::vector<double>> out;
                 for (const auto& v : K.as_polytope().vertices()) out.push_back(from_vec(v));
                 return out;
             })
        .def("__repr__", [](const ConvexBody& K) {
            return "<ConvexBody " + K.kind_name() + " n=" + std::to_string(K.dim()) + ">";
        });

    m.def("load_body", &harness::load_body, py::arg("path"));
    m.def("dilate", &dilate, py::arg("body"), py::arg("c"));
    m.def("corpus",
          [](int n) {
              std::vector<std::pair<std::string, ConvexBody>> out;
              for (auto& b : harness::bundled_corpus(n)) out.emplace_back(b.name, b.body);
              return out;
          },
          py::arg("n"), "bundled (name, body) pairs of dimension n");

    m.def("orlicz_support",
          [](double hK, double hL, double a, double b, const OrliczFunction& phi) {
              return solve_orlicz_support(hK, hL, CombinationWeights(a, b), phi);
          },
          py::arg("hK"), py::arg("hL"), py::arg("a"), py::arg("b"), py::arg("phi"));
    m.def("orlicz_sum",
          [](const ConvexBody& K, const ConvexBody& L, double a, double b, const OrliczFunction& phi) {
              return orlicz_sum(K, L, CombinationWeights(a, b), phi);
          },
          py::arg("K"), py::arg("L"), py::arg("a"), py::arg("b"), py::arg("phi"));
    m.def("outer_polytope",
          [](const ConvexBody& K, int dirs) {
              return ConvexBody::polytope(outer_polytope(K, augmented_directions(direction_set(K.dim(), dirs), {&K})));
          },
          py::arg("body"), py::arg("dirs") = 8192);

    m.def("volume", py::overload_cast<const ConvexBody&>(&volume), py::arg("body"));
    m.def("mixed_volume_v1", py::overload_cast<const ConvexBody&, const ConvexBody&>(&mixed_volume_V1),
          py::arg("K"), py::arg("L"));
    m.def("lp_mixed_volume", py::overload_cast<const ConvexBody&, const ConvexBody&, double>(&lp_mixed_volume),
          py::arg("K"), py::arg("L"), py::arg("p"));
    m.def("orlicz_mixed_volume",
          py::overload_cast<const ConvexBody&, const ConvexBody&, const OrliczFunction&>(&orlicz_mixed_volume),
          py::arg("K"), py::arg("L"), py::arg("phi"));
    m.def("omega", &omega, py::arg("k"), "volume of the unit k-ball");

    m.def("affine_quermassintegral",
          [](const ConvexBody& K, int j, std::size_t samples, std::uint64_t seed) {
              Estimate e;
              {
                  py::gil_scoped_release release;
                  e = affine_quermassintegral(K, j, samples, seed);
              }
              return estimate_dict(e);
          },
          py::arg("K"), py::arg("j"), py::arg("samples") = 10000, py::arg("seed") = 1);
    m.def("orlicz_mixed_affine_quermassintegral",
          [](const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi, int j, std::size_t samples,
             std::uint64_t seed) {
              Estimate e;
              {
                  py::gil_scoped_release release;
                  e = orlicz_mixed_affine_quermassintegral(K, L, phi, j, samples, seed);
              }
              return estimate_dict(e);
          },
          py::arg("K"), py::arg("L"), py::arg("phi"), py::arg("j"), py::arg("samples") = 10000, py::arg("seed") = 1);

    m.def("default_eps_schedule", &default_eps_schedule);
    m.def("first_variation_volume",
          [](const ConvexBody& K, const ConvexBody& L, const OrliczFunction& phi, std::vector<double> eps, int dirs) {
              if (eps.empty()) eps = default_eps_schedule();
              const VariationEstimate v = first_variation_volume(K, L, phi, eps, direction_set(K.dim(), dirs));
              py::dict d;
              d["epsilons"] = v.epsilons;
              d["quotients"] = v.quotients;
              d["extrapolated"] = v.extrapolated;
              d["value"] = v.value;
              d["monotone"] = v.monotone;
              return d;
          },
          py::arg("K"), py::arg("L"), py::arg("phi"), py::arg("eps") = std::vector<double>{}, py::arg("dirs") = 8192);

    m.def("run_suite",
          [](const std::string& config_json) {
              const auto cfg = harness::config_from_json(harness::parse_json(config_json, "<config>"), "<config>");
              harness::validate(cfg);
              std::string out;
              {
                  py::gil_scoped_release release;
                  out = harness::run_suite(cfg).json.dump(2);
              }
              return out;
          },
          py::arg("config_json") = "{}", "runs a verification suite; returns the JSON report text");
    m.attr("REPORT_SCHEMA") = harness::kReportSchema;
}
