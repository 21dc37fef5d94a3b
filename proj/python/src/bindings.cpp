#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nomasec/channel_stats.hpp"
#include "nomasec/error.hpp"
#include "nomasec/monte_carlo.hpp"
#include "nomasec/scenario.hpp"
#include "nomasec/secrecy.hpp"
#include "nomasec/sweep.hpp"

namespace py = pybind11;
using namespace nomasec;

namespace {

SolutionId to_solution(const py::object& value) {
  if (py::isinstance<SolutionId>(value)) return value.cast<SolutionId>();
  const std::string s = py::str(value);
  if (s == "1" || s == "I") return SolutionId::SolutionI;
  if (s == "2" || s == "II") return SolutionId::SolutionII;
  throw ConfigError("solution must be 1, 2, 'I' or 'II'");
}

py::dict row_to_dict(const SweepRow& r) {
  py::dict d;
  d["axis"] = r.axis;
  d["value"] = r.value;
  d["solution"] = to_string(r.solution);
  auto put = [&d](const char* key, const std::optional<double>& v) {
    d[key] = v ? py::cast(*v) : py::none();
  };
  put("sopN_exact", r.sopN_exact);
  put("sopF_exact", r.sopF_exact);
  put("sopO_exact", r.sopO_exact);
  put("sopN_asym", r.sopN_asym);
  put("sopF_asym", r.sopF_asym);
  put("sopO_asym", r.sopO_asym);
  put("sopN_mc", r.sopN_mc);
  put("sopN_mc_stderr", r.sopN_mc_stderr);
  put("sopF_mc", r.sopF_mc);
  put("sopF_mc_stderr", r.sopF_mc_stderr);
  put("sopO_mc", r.sopO_mc);
  put("sopO_mc_stderr", r.sopO_mc_stderr);
  d["error"] = r.error;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Secrecy outage analysis for two-user downlink NOMA with antenna selection";

  auto base = py::register_exception<Error>(m, "NomasecError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SeriesError>(m, "SeriesError", base.ptr());
  py::register_exception<IntegrationError>(m, "IntegrationError", base.ptr());

  py::enum_<SolutionId>(m, "Solution")
      .value("I", SolutionId::SolutionI)
      .value("II", SolutionId::SolutionII);

  py::enum_<EavesdropperMode>(m, "EavesdropperMode")
      .value("SIC", EavesdropperMode::SicWithInterference)
      .value("WORST_CASE", EavesdropperMode::WorstCase);

  py::class_<FadingProfile>(m, "FadingProfile")
      .def(py::init<>())
      .def_readwrite("m", &FadingProfile::m)
      .def_readwrite("omega", &FadingProfile::omega);

  py::class_<Link>(m, "Link")
      .def(py::init<>())
      .def_readwrite("antennas", &Link::antennas)
      .def_readwrite("fading", &Link::fading)
      .def_readwrite("lambda_", &Link::lambda)
      .def("mean_gain", &Link::mean_gain);

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def_readwrite("source_antennas", &SystemConfig::sourceAntennas)
      .def_readwrite("near", &SystemConfig::near)
      .def_readwrite("far", &SystemConfig::far)
      .def_readwrite("eve", &SystemConfig::eve)
      .def_readwrite("alpha_f", &SystemConfig::alphaF)
      .def_readwrite("alpha_n", &SystemConfig::alphaN)
      .def_readwrite("gamma0", &SystemConfig::gamma0)
      .def_readwrite("gamma_e", &SystemConfig::gammaE)
      .def_readwrite("rate_f", &SystemConfig::rateF)
      .def_readwrite("secrecy_rate_n", &SystemConfig::secrecyRateN)
      .def_readwrite("secrecy_rate_f", &SystemConfig::secrecyRateF)
      .def_readwrite("quadrature_n", &SystemConfig::quadratureN)
      .def("validate", &SystemConfig::validate)
      .def("with_axis", [](const SystemConfig& c, const std::string& axis, double value) {
        return apply_axis(c, parse_axis(axis), value);
      }, py::arg("axis"), py::arg("value"));

  py::class_<SopBreakdown>(m, "SopBreakdown")
      .def_readonly("lambda1", &SopBreakdown::lambda1)
      .def_readonly("lambda2", &SopBreakdown::lambda2)
      .def_readonly("lambda3", &SopBreakdown::lambda3)
      .def_readonly("sop_n", &SopBreakdown::sopN)
      .def_readonly("sop_f", &SopBreakdown::sopF)
      .def_readonly("sop_o", &SopBreakdown::sopOverall)
      .def_readonly("saturated_n", &SopBreakdown::saturatedN)
      .def_property_readonly("lambda3_route",
                             [](const SopBreakdown& b) { return std::string(to_string(b.route)); });

  py::class_<AsymptoticSop>(m, "AsymptoticSop")
      .def_readonly("sop_n", &AsymptoticSop::sopN)
      .def_readonly("sop_f", &AsymptoticSop::sopF)
      .def_readonly("sop_o", &AsymptoticSop::sopO)
      .def_readonly("diversity_n", &AsymptoticSop::diversityN)
      .def_readonly("diversity_f", &AsymptoticSop::diversityF)
      .def_readonly("diversity_o", &AsymptoticSop::diversityO);

  py::class_<McEstimate>(m, "McEstimate")
      .def_readonly("mean", &McEstimate::mean)
      .def_readonly("std_error", &McEstimate::stdError)
      .def_readonly("trials", &McEstimate::trials)
      .def_readonly("seed", &McEstimate::seed);

  py::class_<SopEstimates>(m, "SopEstimates")
      .def_readonly("near", &SopEstimates::near)
      .def_readonly("far", &SopEstimates::far)
      .def_readonly("overall", &SopEstimates::overall)
      .def_readonly("near_events", &SopEstimates::nearEvents);

  m.def("sop_exact", [](const SystemConfig& c, const py::object& sol) {
    return sop_overall(Model(c), to_solution(sol));
  }, py::arg("config"), py::arg("solution"));

  m.def("sop_asymptotic", [](const SystemConfig& c, const py::object& sol) {
    return sop_asymptotic(Model(c), to_solution(sol));
  }, py::arg("config"), py::arg("solution"));

  m.def("sop_far_integral", [](const SystemConfig& c, const py::object& sol) {
    return sop_far_integral(Model(c), to_solution(sol));
  }, py::arg("config"), py::arg("solution"));

  m.def("simulate", [](const SystemConfig& c, const py::object& sol, std::uint64_t trials,
                       std::uint64_t seed, EavesdropperMode mode, unsigned workers) {
    const Model model(c);
    const SolutionId s = to_solution(sol);
    McOptions options;
    options.workers = workers;
    py::gil_scoped_release release;
    return estimate_sop(model, s, mode, trials, seed, options);
  }, py::arg("config"), py::arg("solution"), py::arg("trials") = 1'000'000,
     py::arg("seed") = 1, py::arg("mode") = EavesdropperMode::SicWithInterference,
     py::arg("workers") = 0);

  m.def("gain_cdf", [](const SystemConfig& c, const py::object& sol, const std::string& which,
                       double x) {
    const Model model(c);
    const SolutionId s = to_solution(sol);
    if (which == "near") return gain_cdf(x, near_gain(model, s));
    if (which == "far") return gain_cdf(x, far_gain(model, s));
    if (which == "eve") return gain_cdf(x, eve_gain(model));
    throw ConfigError("gain must be 'near', 'far' or 'eve'");
  }, py::arg("config"), py::arg("solution"), py::arg("which"), py::arg("x"));

  m.def("preset_names", &preset_names);
  m.def("preset_text", [](const std::string& name) { return std::string(preset_text(name)); });

  m.def("load_scenario", [](const std::string& source) {
    const SweepSpec spec = load_scenario(source);
    py::dict d;
    d["name"] = spec.name;
    d["config"] = spec.base;
    d["axis"] = to_string(spec.axis);
    d["values"] = spec.values;
    return d;
  }, py::arg("source"));

  m.def("sweep", [](const std::string& source, std::optional<std::uint64_t> trials,
                    std::optional<std::uint64_t> seed, bool csv) -> py::object {
    SweepSpec spec = load_scenario(source);
    if (trials) spec.trials = *trials;
    if (seed) spec.seed = *seed;
    std::vector<SweepRow> rows;
    {
      py::gil_scoped_release release;
      rows = run_sweep(spec);
    }
    if (csv) {
      std::ostringstream out;
      emit_csv(rows, out);
      return py::str(out.str());
    }
    py::list list;
    for (const auto& r : rows) list.append(row_to_dict(r));
    return list;
  }, py::arg("source"), py::arg("trials") = py::none(), py::arg("seed") = py::none(),
     py::arg("csv") = false);

  m.def("alpha_star", [](const SystemConfig& c, const py::object& sol, std::vector<double> grid) {
    const AlphaStar a = find_alpha_star(c, to_solution(sol), std::move(grid));
    return py::make_tuple(a.alphaF, a.sopO, a.interior);
  }, py::arg("config"), py::arg("solution"), py::arg("grid"));

  m.def("parse_values", [](const std::string& text) { return parse_values(text); });
  m.def("db_to_linear", &db_to_linear);
  m.def("linear_to_db", &linear_to_db);
}
