#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adc/bench.hpp"
#include "adc/direct.hpp"
#include "adc/solver.hpp"
#include "adc/testbed.hpp"

namespace py = pybind11;

namespace {

adc::ProblemInstance make_py_problem(std::string name, py::function f, adc::Point lower,
                                     adc::Point upper, std::vector<adc::Point> minimizers,
                                     std::optional<double> minimum) {
  adc::Objective obj = [f = std::move(f)](std::span<const double> x) {
    py::gil_scoped_acquire gil;
    return f(std::vector<double>(x.begin(), x.end())).cast<double>();
  };
  return adc::make_problem(std::move(name), std::move(obj), std::move(lower), std::move(upper),
                           std::move(minimizers), minimum);
}

adc::TargetPredicate rule_predicate(const adc::ProblemInstance& p, std::optional<double> delta) {
  const auto rule = adc::make_stop_rule(p, delta.value_or(adc::default_delta(p.dimension())), 0);
  return [rule](std::span<const double> x) { return adc::target_hit(x, rule); };
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Diagonal global optimization, DIRECT baselines and test problems";

  py::register_exception<adc::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<adc::CapacityError>(m, "CapacityError", PyExc_RuntimeError);
  py::register_exception<adc::EvaluationError>(m, "EvaluationError", PyExc_RuntimeError);
  py::register_exception<adc::GenerationError>(m, "GenerationError", PyExc_ValueError);

  py::class_<adc::ProblemInstance>(m, "Problem")
      .def(py::init(&make_py_problem), py::arg("name"), py::arg("objective"), py::arg("lower"),
           py::arg("upper"), py::arg("minimizers") = std::vector<adc::Point>{},
           py::arg("minimum") = std::nullopt)
      .def_readonly("name", &adc::ProblemInstance::name)
      .def_readonly("lower", &adc::ProblemInstance::lower)
      .def_readonly("upper", &adc::ProblemInstance::upper)
      .def_readonly("minimizers", &adc::ProblemInstance::known_minimizers)
      .def_readonly("minimum", &adc::ProblemInstance::known_minimum)
      .def_property_readonly("dimension", &adc::ProblemInstance::dimension)
      .def("__call__", [](const adc::ProblemInstance& p, const std::vector<double>& x) {
        return p.objective(x);
      });

  py::enum_<adc::StopReason>(m, "StopReason")
      .value("BUDGET", adc::StopReason::Budget)
      .value("TARGET", adc::StopReason::TargetHit)
      .value("ITERATIONS", adc::StopReason::IterationLimit);

  py::class_<adc::RunResult>(m, "RunResult")
      .def_readonly("best_value", &adc::RunResult::best_value)
      .def_readonly("best_point", &adc::RunResult::best_point)
      .def_readonly("trials", &adc::RunResult::trials)
      .def_readonly("intervals", &adc::RunResult::intervals)
      .def_readonly("db_hits", &adc::RunResult::db_hits)
      .def_readonly("iterations", &adc::RunResult::iterations)
      .def_readonly("stop_reason", &adc::RunResult::stop_reason);

  m.def("classic", [](const std::string& name) { return adc::classic(name); }, py::arg("name"));
  m.def("classic_names", &adc::classic_names);
  m.def("shift", &adc::shift, py::arg("problem"), py::arg("c"));
  m.def(
      "generate_class",
      [](std::size_t N, std::size_t M, double f_star, double rho_star, double r_star,
         std::uint64_t seed, std::size_t count) {
        adc::GklsParams p{N, M, f_star, rho_star, r_star, seed, count};
        return adc::generate_class(p).problems();
      },
      py::arg("N"), py::arg("M"), py::arg("f_star"), py::arg("rho_star"), py::arg("r_star"),
      py::arg("seed"), py::arg("count") = 100);

  m.def(
      "minimize",
      [](const adc::ProblemInstance& p, double epsilon, std::uint64_t t_max, bool stop_on_target,
         std::optional<double> delta, bool absolute_xi) {
        adc::SolverConfig c;
        c.epsilon = epsilon;
        c.t_max = t_max;
        c.xi_mode = absolute_xi ? adc::XiMode::Absolute : adc::XiMode::Relative;
        if (stop_on_target) c.target = rule_predicate(p, delta);
        return adc::run_adc(p, c);
      },
      py::arg("problem"), py::arg("epsilon") = 1e-4, py::arg("t_max") = 1'000'000,
      py::arg("stop_on_target") = false, py::arg("delta") = std::nullopt,
      py::arg("absolute_xi") = false);

  m.def(
      "direct",
      [](const adc::ProblemInstance& p, bool locally_biased, double epsilon, std::uint64_t t_max,
         bool stop_on_target, std::optional<double> delta) {
        adc::DirectConfig c;
        c.epsilon = epsilon;
        c.t_max = t_max;
        c.variant = locally_biased ? adc::DirectVariant::LocallyBiased : adc::DirectVariant::Classic;
        if (stop_on_target) c.target = rule_predicate(p, delta);
        return adc::direct_run(p, c);
      },
      py::arg("problem"), py::arg("locally_biased") = false, py::arg("epsilon") = 1e-4,
      py::arg("t_max") = 1'000'000, py::arg("stop_on_target") = false,
      py::arg("delta") = std::nullopt);

  m.def(
      "target_hit",
      [](const std::vector<double>& x, const adc::ProblemInstance& p, double delta) {
        return adc::target_hit(x, adc::make_stop_rule(p, delta, 0));
      },
      py::arg("x"), py::arg("problem"), py::arg("delta"));

  m.def(
      "criteria",
      [](const std::vector<std::uint64_t>& t, const std::vector<std::uint64_t>& mm,
         std::uint64_t t_max) {
        const auto c = adc::compute_criteria(t, mm, t_max);
        py::dict d;
        d["s_star"] = c.s_star;
        d["C1"] = c.c1;
        d["C2"] = c.c2;
        d["C3"] = c.c3;
        d["half"] = c.half;
        d["solved"] = c.solved;
        return d;
      },
      py::arg("trials"), py::arg("intervals"), py::arg("t_max"));

  m.def("group_diagonal", &adc::group_diagonal, py::arg("group"), py::arg("dimension"));

#ifdef VERSION_INFO
#define ADC_STR(x) #x
#define ADC_XSTR(x) ADC_STR(x)
  m.attr("__version__") = ADC_XSTR(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
