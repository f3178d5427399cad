// Copyright 2026 The confl3 Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "confl3/confl_model.hpp"
#include "confl3/error.hpp"
#include "confl3/heuristic.hpp"
#include "confl3/instance_io.hpp"
#include "confl3/solution_io.hpp"
#include "confl3/solver.hpp"

namespace py = pybind11;

namespace {

py::object* error_type = nullptr;

// Results keep their inputs so they can serialize themselves.
struct HeuristicRun {
  confl3::Instance instance;
  confl3::HeuristicParams params;
  confl3::RunResult result;
};

struct ExactRun {
  confl3::Instance instance;
  confl3::ConflModel confl;
  bool strong = false;
  confl3::MipResult result;
};

std::optional<double> IfSolved(bool solved, double v) {
  return solved ? std::optional<double>(v) : std::nullopt;
}

confl3::ConflModel Formulation(const confl3::Instance& instance, bool strong) {
  confl3::ConflModel confl = confl3::Build3Confl(instance);
  if (strong) confl = confl3::Strengthen(std::move(confl), instance);
  return confl;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Three-architecture connected facility location solver";

  // Leaked on purpose: the type must outlive interpreter teardown.
  error_type = new py::object(py::exception<confl3::Error>(m, "Error", PyExc_ValueError));
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const confl3::Error& e) {
      py::object exc = (*error_type)(e.what());
      exc.attr("code") = confl3::ErrorCodeName(e.code());
      PyErr_SetObject(error_type->ptr(), exc.ptr());
    }
  });

  py::class_<confl3::Instance>(m, "Instance")
      .def_static("from_json", &confl3::ReadInstance, py::arg("text"))
      .def_static("load", &confl3::LoadInstanceFile, py::arg("path"))
      .def("to_json", &confl3::WriteInstance)
      .def_readwrite("name", &confl3::Instance::name)
      .def_property_readonly("hash", &confl3::InstanceHash)
      .def_property_readonly("num_facilities", &confl3::Instance::num_facilities)
      .def_property_readonly("num_users", &confl3::Instance::num_users)
      .def_property_readonly("total_weight", &confl3::Instance::total_weight)
      .def_readwrite("coverage", &confl3::Instance::coverage)
      .def_property_readonly("has_wireless",
                             [](const confl3::Instance& i) { return i.wireless.has_value(); })
      .def("potential_weight", &confl3::Instance::PotentialWeight, py::arg("facility"),
           py::arg("tech"))
      .def("__eq__", [](const confl3::Instance& a, const confl3::Instance& b) { return a == b; })
      .def("__repr__", [](const confl3::Instance& i) {
        return "<Instance '" + i.name + "' facilities=" + std::to_string(i.num_facilities()) +
               " users=" + std::to_string(i.num_users()) + ">";
      });

  py::class_<confl3::GeneratorParams>(m, "GeneratorParams")
      .def(py::init<>())
      .def_readwrite("grid_width", &confl3::GeneratorParams::grid_width)
      .def_readwrite("grid_height", &confl3::GeneratorParams::grid_height)
      .def_readwrite("n_facilities", &confl3::GeneratorParams::n_facilities)
      .def_readwrite("n_central_offices", &confl3::GeneratorParams::n_central_offices)
      .def_readwrite("n_steiner", &confl3::GeneratorParams::n_steiner)
      .def_readwrite("users_per_pixel", &confl3::GeneratorParams::users_per_pixel)
      .def_readwrite("user_weight", &confl3::GeneratorParams::user_weight)
      .def_readwrite("k_nearest", &confl3::GeneratorParams::k_nearest)
      .def_readwrite("radius", &confl3::GeneratorParams::radius)
      .def_readwrite("coverage_fraction", &confl3::GeneratorParams::coverage_fraction)
      .def_readwrite("p_min", &confl3::GeneratorParams::p_min)
      .def_readwrite("p_max", &confl3::GeneratorParams::p_max)
      .def_readwrite("delta", &confl3::GeneratorParams::delta)
      .def_readwrite("noise", &confl3::GeneratorParams::noise)
      .def_readwrite("path_loss_exponent", &confl3::GeneratorParams::path_loss_exponent)
      .def_readwrite("reference_distance", &confl3::GeneratorParams::reference_distance)
      .def_readwrite("max_retries", &confl3::GeneratorParams::max_retries);

  m.def(
      "generate",
      [](const std::optional<confl3::GeneratorParams>& params, uint64_t seed) {
        return confl3::Generate(params.value_or(confl3::GeneratorParams{}), seed);
      },
      py::arg("params") = py::none(), py::arg("seed") = 1);

  py::class_<confl3::HeuristicParams>(m, "HeuristicParams")
      .def(py::init<>())
      .def_readwrite("alpha", &confl3::HeuristicParams::alpha)
      .def_readwrite("sigma_count", &confl3::HeuristicParams::sigma_count)
      .def_readwrite("vlns_radius", &confl3::HeuristicParams::vlns_radius)
      .def_readwrite("global_time_limit", &confl3::HeuristicParams::global_time_limit)
      .def_readwrite("outer_loop_limit", &confl3::HeuristicParams::outer_loop_limit)
      .def_readwrite("subproblem_time_limit",
                     &confl3::HeuristicParams::subproblem_time_limit)
      .def_readwrite("vlns_time_limit", &confl3::HeuristicParams::vlns_time_limit)
      .def_readwrite("rng_seed", &confl3::HeuristicParams::rng_seed)
      .def_readwrite("candidate_pool", &confl3::HeuristicParams::candidate_pool)
      .def_readwrite("max_outer_iterations", &confl3::HeuristicParams::max_outer_iterations)
      .def_readwrite("node_limit", &confl3::HeuristicParams::node_limit)
      .def("radius_for", &confl3::HeuristicParams::RadiusFor, py::arg("instance"));

  py::class_<HeuristicRun>(m, "HeuristicResult")
      .def_property_readonly("solved",
                             [](const HeuristicRun& r) {
                               return r.result.status == confl3::RunStatus::kSolved;
                             })
      .def_property_readonly("objective",
                             [](const HeuristicRun& r) {
                               return IfSolved(r.result.status == confl3::RunStatus::kSolved,
                                               r.result.objective);
                             })
      .def_property_readonly("gap",
                             [](const HeuristicRun& r) {
                               return IfSolved(r.result.status == confl3::RunStatus::kSolved,
                                               r.result.gap);
                             })
      .def_property_readonly("lower_bound",
                             [](const HeuristicRun& r) { return r.result.lower_bound; })
      .def_property_readonly("outer_iterations",
                             [](const HeuristicRun& r) { return r.result.outer_iterations; })
      .def_property_readonly("final_improved",
                             [](const HeuristicRun& r) { return r.result.final_improved; })
      .def("to_json", [](const HeuristicRun& r) {
        return confl3::HeuristicSolutionJson(r.instance, r.params, r.result);
      });

  m.def(
      "run",
      [](const confl3::Instance& instance, const std::optional<confl3::HeuristicParams>& p) {
        HeuristicRun r{instance, p.value_or(confl3::HeuristicParams{}), {}};
        r.params.on_trace = nullptr;
        r.result = confl3::Run(r.instance, r.params);
        return r;
      },
      py::arg("instance"), py::arg("params") = py::none(),
      py::call_guard<py::gil_scoped_release>());

  py::class_<ExactRun>(m, "ExactResult")
      .def_property_readonly(
          "status", [](const ExactRun& r) { return confl3::MipStatusName(r.result.status); })
      .def_property_readonly("objective",
                             [](const ExactRun& r) {
                               return IfSolved(r.result.has_incumbent(), r.result.objective);
                             })
      .def_property_readonly("lower_bound", [](const ExactRun& r) { return r.result.lower_bound; })
      .def_property_readonly("nodes", [](const ExactRun& r) { return r.result.nodes; })
      .def("to_json", [](const ExactRun& r) {
        return confl3::ExactSolutionJson(r.instance, r.confl, r.strong, r.result);
      });

  m.def(
      "exact",
      [](const confl3::Instance& instance, bool strong, double time_limit) {
        ExactRun r{instance, Formulation(instance, strong), strong, {}};
        confl3::MipOptions options;
        options.time_limit = time_limit;
        r.result = confl3::SolveMip(r.confl.model, options);
        return r;
      },
      py::arg("instance"), py::arg("strong") = false,
      py::arg("time_limit") = confl3::kInfinity, py::call_guard<py::gil_scoped_release>());

  m.def(
      "export_lp",
      [](const confl3::Instance& instance, bool strong) {
        return confl3::ExportLpText(Formulation(instance, strong).model);
      },
      py::arg("instance"), py::arg("strong") = false);

  m.def(
      "lp_bound",
      [](const confl3::Instance& instance, bool strong) {
        const confl3::LpResult r =
            confl3::SolveLp(confl3::LpRelaxation(Formulation(instance, strong).model));
        return IfSolved(r.status == confl3::LpStatus::kOptimal, r.objective);
      },
      py::arg("instance"), py::arg("strong") = false,
      "Objective of the LP relaxation, or None when it is infeasible.");

  m.def("ogap", &confl3::OGap, py::arg("value"), py::arg("lower_bound"));
  m.def("fixing_probabilities", &confl3::FixingProbabilities, py::arg("tau"),
        py::arg("eta"), py::arg("alpha"));
  m.def(
      "delta_gap",
      [](double reference, double heuristic) {
        return confl3::ResultRow{"", reference, heuristic}.DeltaGap();
      },
      py::arg("gap_reference"), py::arg("gap_heuristic"));

  m.def(
      "report",
      [](const std::vector<std::tuple<std::string, double, double>>& rows, bool csv) {
        std::vector<confl3::ResultRow> out;
        for (const auto& [id, ref, heu] : rows) out.push_back({id, ref, heu});
        return confl3::Report(out, csv);
      },
      py::arg("rows"), py::arg("csv") = false,
      "Gap table from (id, reference gap %, heuristic gap %) rows.");

  m.def(
      "pair_solutions",
      [](const std::vector<std::string>& documents) {
        std::vector<confl3::SolutionSummary> summaries;
        for (const std::string& d : documents) {
          summaries.push_back(confl3::ReadSolutionSummary(d));
        }
        std::vector<std::tuple<std::string, double, double>> rows;
        for (const confl3::ResultRow& r : confl3::PairSolutions(summaries)) {
          rows.emplace_back(r.id, r.gap_reference, r.gap_heuristic);
        }
        return rows;
      },
      py::arg("documents"),
      "(id, reference gap %, heuristic gap %) per instance from solution JSON texts.");
}
