#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "repnet/estimation.hpp"
#include "repnet/planner.hpp"
#include "repnet/scenario.hpp"
#include "repnet/simulator.hpp"

namespace py = pybind11;
using namespace repnet;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Reputation-driven multi-agent planning and simulation";

    py::register_exception<ModelError>(m, "ModelError");
    py::register_exception<RunError>(m, "RunError");
    py::register_exception<ParseError>(m, "ScenarioParseError");

    py::enum_<UpdateScope>(m, "UpdateScope")
        .value("literal", UpdateScope::literal)
        .value("restricted", UpdateScope::restricted);

    py::class_<Hyperparameters>(m, "Hyperparameters")
        .def(py::init<>())
        .def_readwrite("depth", &Hyperparameters::depth)
        .def_readwrite("gamma", &Hyperparameters::gamma)
        .def_readwrite("eta", &Hyperparameters::eta)
        .def_readwrite("delta", &Hyperparameters::delta)
        .def_readwrite("horizon", &Hyperparameters::horizon)
        .def_readwrite("seed", &Hyperparameters::seed)
        .def_readwrite("scope", &Hyperparameters::scope);

    py::class_<PlanResult>(m, "PlanResult")
        .def_readonly("chosen_action", &PlanResult::chosen_action)
        .def_readonly("root_value", &PlanResult::root_value)
        .def_readonly("q_values", &PlanResult::q_values);

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readonly("description", &Scenario::description)
        .def_readwrite("hyper", &Scenario::hyper)
        .def_readonly("initial_state", &Scenario::initial_state)
        .def_property_readonly(
            "agent_names", [](const Scenario& s) { return s.system.agent_names; })
        .def_property_readonly(
            "state_names", [](const Scenario& s) { return s.system.state_names; })
        .def_property_readonly(
            "action_names", [](const Scenario& s) { return s.system.action_names; })
        .def("agent_index", &Scenario::agent_index)
        .def("state_index", &Scenario::state_index)
        .def("action_index", &Scenario::action_index);

    m.def("parse_scenario",
          [](const std::string& text) { return parse_scenario(text); },
          py::arg("text"));
    m.def("serialize_scenario", &serialize_scenario, py::arg("scenario"));

    m.def("validate",
          [](const Scenario& scenario) {
              ValidationReport report = validate_system(scenario.system, scenario.knowledge);
              std::vector<std::pair<std::string, std::string>> out;
              for (const auto& v : report.violations) out.emplace_back(v.location, v.message);
              return out;
          },
          py::arg("scenario"));

    m.def("image_update", &image_update, py::arg("value"), py::arg("impact"));

    m.def("reputation",
          [](const Scenario& scenario, int owner, int target) {
              return reputation(scenario.system, owner, target,
                                scenario.knowledge[owner].image);
          },
          py::arg("scenario"), py::arg("owner"), py::arg("target"));

    m.def("plan",
          [](const Scenario& scenario, int agent, int state,
             std::optional<Hyperparameters> hyper) {
              const AgentKnowledge& knowledge = scenario.knowledge[agent];
              EpistemicState theta{{state}, knowledge.action_distribution, knowledge.image};
              return plan(scenario.system, knowledge, theta,
                          hyper ? *hyper : scenario.hyper);
          },
          py::arg("scenario"), py::arg("agent"), py::arg("state"),
          py::arg("hyper") = std::nullopt);

    m.def("run",
          [](const Scenario& scenario, std::optional<Hyperparameters> hyper) {
              Trace trace = run_episode(scenario, hyper ? *hyper : scenario.hyper);
              MetricSeries metrics = derive_metrics(trace);
              std::ostringstream trace_csv;
              std::ostringstream metrics_csv;
              emit_trace_csv(trace, metrics, trace_csv);
              emit_metrics_csv(metrics, metrics_csv);
              py::dict out;
              out["trace_csv"] = trace_csv.str();
              out["metrics_csv"] = metrics_csv.str();
              py::dict per_step;
              for (const auto& [name, series] : metrics.per_step) {
                  per_step[py::str(name)] = series;
              }
              py::dict per_window;
              for (const auto& [name, series] : metrics.per_window) {
                  per_window[py::str(name)] = series;
              }
              out["per_step"] = per_step;
              out["per_window"] = per_window;
              return out;
          },
          py::arg("scenario"), py::arg("hyper") = std::nullopt);
}
