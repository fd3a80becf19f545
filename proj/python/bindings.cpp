#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dzv/chen.hpp"
#include "dzv/errors.hpp"
#include "dzv/pipeline.hpp"

namespace py = pybind11;

namespace {

dzv::PipelineOptions make_options(const std::string& verify, unsigned verify_max_weight, unsigned d_max,
                                  const std::string& cache_dir, unsigned jobs) {
  dzv::PipelineOptions o;
  if (verify == "auto") {
    o.verify = dzv::Verification::automatic;
  } else if (verify == "always") {
    o.verify = dzv::Verification::always;
  } else if (verify == "never") {
    o.verify = dzv::Verification::never;
  } else {
    throw py::value_error("verify must be 'auto', 'always' or 'never'");
  }
  o.verify_max_weight = verify_max_weight;
  o.d_max = d_max;
  o.cache_dir = cache_dir;
  o.jobs = jobs;
  return o;
}

}  // namespace

PYBIND11_MODULE(_dzv, m) {
  m.doc() = "Dimensions of weight-n double zeta values over F_q(theta)";

  py::register_exception<dzv::MathError>(m, "MathError", PyExc_ArithmeticError);
  py::register_exception<dzv::VerificationError>(m, "VerificationError", PyExc_RuntimeError);

  py::class_<dzv::WeightReport>(m, "WeightReport")
      .def_readonly("q", &dzv::WeightReport::q)
      .def_readonly("weight", &dzv::WeightReport::weight)
      .def_readonly("v", &dzv::WeightReport::v)
      .def_readonly("rank", &dzv::WeightReport::rank)
      .def_readonly("relations", &dzv::WeightReport::relations)
      .def_readonly("dimension", &dzv::WeightReport::dimension)
      .def_readonly("fp_linear", &dzv::WeightReport::fp_linear)
      .def_readonly("zeta_like", &dzv::WeightReport::zeta_like)
      .def_readonly("zeta_like_indices", &dzv::WeightReport::zeta_like_indices)
      .def_readonly("verified", &dzv::WeightReport::verified)
      .def_readonly("seconds", &dzv::WeightReport::seconds)
      .def_property_readonly("status", [](const dzv::WeightReport& r) { return dzv::to_string(r.status); })
      .def_readonly("error", &dzv::WeightReport::error)
      .def("to_json", [](const dzv::WeightReport& r, bool telemetry) { return dzv::to_json(r, telemetry).dump(); },
           py::arg("telemetry") = false)
      .def("__repr__", [](const dzv::WeightReport& r) {
        return "<WeightReport q=" + std::to_string(r.q) + " weight=" + std::to_string(r.weight) +
               " dimension=" + std::to_string(r.dimension) + ">";
      });

  py::class_<dzv::Pipeline>(m, "Pipeline")
      .def(py::init([](std::uint32_t p, std::uint32_t e, const std::string& verify, unsigned verify_max_weight,
                       unsigned d_max, const std::string& cache_dir, unsigned jobs) {
             return std::make_unique<dzv::Pipeline>(p, e, make_options(verify, verify_max_weight, d_max, cache_dir, jobs));
           }),
           py::arg("p"), py::arg("e") = 1, py::arg("verify") = "auto", py::arg("verify_max_weight") = 12,
           py::arg("d_max") = 12, py::arg("cache_dir") = "", py::arg("jobs") = 1)
      .def_property_readonly("q", [](const dzv::Pipeline& p) { return p.context().q(); })
      .def("v_set", &dzv::Pipeline::v_set, py::arg("n"))
      .def("dimension", &dzv::Pipeline::dimension, py::arg("n"), py::call_guard<py::gil_scoped_release>())
      .def("zeta_like", &dzv::Pipeline::zeta_like, py::arg("n"), py::call_guard<py::gil_scoped_release>())
      .def("zeta_like_count", &dzv::Pipeline::zeta_like_count, py::arg("n"),
           py::call_guard<py::gil_scoped_release>())
      .def("fp_linear_count", [](const dzv::Pipeline& p, unsigned n) { return dzv::fp_linear_count(p.context(), n); },
           py::arg("n"))
      .def("table", &dzv::Pipeline::table, py::arg("n_min"), py::arg("n_max"),
           py::call_guard<py::gil_scoped_release>())
      .def("point", [](const dzv::Pipeline& p, unsigned s1, unsigned s2) {
             const auto x = p.xi(s1, s2);
             std::vector<std::string> out;
             for (const auto& c : x.xi) out.push_back(c.str());
             return py::make_tuple(x.alpha.str(), out);
           }, py::arg("s1"), py::arg("s2"));

  m.def("to_csv", &dzv::to_csv, py::arg("reports"));
}
