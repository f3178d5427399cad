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

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "confl3/confl_model.hpp"
#include "confl3/error.hpp"
#include "confl3/heuristic.hpp"
#include "confl3/instance_io.hpp"
#include "confl3/milp.hpp"
#include "confl3/solution_io.hpp"
#include "confl3/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNoSolution = 1;
constexpr int kExitUsage = 2;

struct GenerateArgs {
  uint64_t seed = 1;
  std::optional<int> width, height, facilities, offices, steiner, users_per_pixel;
  std::vector<double> coverage, radius;
  std::optional<double> delta, noise, pmin, pmax, path_loss;
  std::string output;
};

struct SolveArgs {
  std::string instance;
  std::string output;
  uint64_t seed = 0;
  double alpha = 0.5;
  int sigma = 5;
  std::optional<int> vlns_radius;
  double time_limit = 3600.0;
  double outer_limit = 3000.0;
  double sub_limit = 300.0;
  double vlns_limit = 600.0;
  std::optional<int> iters;
  std::string backend = "bundled";
};

struct ExactArgs {
  std::string instance;
  std::string output;
  bool strong = false;
  std::string backend = "bundled";
  double time_limit = 3600.0;
};

struct ReportArgs {
  std::vector<std::string> inputs;
  bool csv = false;
};

void ConfigureLogging() {
  auto logger = spdlog::stderr_color_mt("confl3");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("CONFL3_LOG")) {
    const auto parsed = spdlog::level::from_str(level);
    // from_str maps unknown names to "off"
    if (parsed == spdlog::level::off && std::string(level) != "off") {
      spdlog::warn("CONFL3_LOG='{}' is not a level (trace, debug, info, warn, error, off)",
                   level);
    } else {
      spdlog::set_level(parsed);
    }
  }
}

void WriteOrPrint(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    confl3::SaveTextFile(path, text);
    spdlog::info("wrote {}", path);
  }
}

confl3::Instance LoadInstance(const std::string& path) {
  spdlog::debug("reading instance {}", path);
  const confl3::Instance instance = confl3::LoadInstanceFile(path);
  spdlog::info("instance '{}': {} facilities, {} users, hash {}", instance.name,
               instance.num_facilities(), instance.num_users(),
               confl3::InstanceHash(instance));
  return instance;
}

int Generate(const GenerateArgs& a) {
  confl3::GeneratorParams p;
  if (a.width) p.grid_width = *a.width;
  if (a.height) p.grid_height = *a.height;
  if (a.facilities) p.n_facilities = *a.facilities;
  if (a.offices) p.n_central_offices = *a.offices;
  if (a.steiner) p.n_steiner = *a.steiner;
  if (a.users_per_pixel) p.users_per_pixel = *a.users_per_pixel;
  for (size_t t = 0; t < a.coverage.size(); ++t) p.coverage_fraction[t] = a.coverage[t];
  for (size_t t = 0; t < a.radius.size(); ++t) p.radius[t] = a.radius[t];
  if (a.delta) p.delta = *a.delta;
  if (a.noise) p.noise = *a.noise;
  if (a.pmin) p.p_min = *a.pmin;
  if (a.pmax) p.p_max = *a.pmax;
  if (a.path_loss) p.path_loss_exponent = *a.path_loss;
  const confl3::Instance instance = confl3::Generate(p, a.seed);
  spdlog::info("generated '{}' with {} facilities and {} users", instance.name,
               instance.num_facilities(), instance.num_users());
  WriteOrPrint(a.output, confl3::WriteInstance(instance));
  return kExitOk;
}

int Solve(const SolveArgs& a) {
  if (a.backend != "bundled") {
    throw CLI::ValidationError("--backend",
                               "the heuristic drives the bundled solver only; use "
                               "`exact --backend external-lp-file` to hand a model "
                               "to another solver");
  }
  const confl3::Instance instance = LoadInstance(a.instance);
  confl3::HeuristicParams params;
  params.alpha = a.alpha;
  params.sigma_count = a.sigma;
  params.vlns_radius = a.vlns_radius;
  params.global_time_limit = a.time_limit;
  params.outer_loop_limit = a.outer_limit;
  params.subproblem_time_limit = a.sub_limit;
  params.vlns_time_limit = a.vlns_limit;
  params.rng_seed = a.seed;
  params.max_outer_iterations = a.iters;
  params.on_trace = [](const confl3::TraceEntry& e) {
    spdlog::info("h={} s={} fos={} {} {}{}", e.outer, e.sigma, e.fos.ToString(),
                 confl3::MipStatusName(e.status),
                 e.objective ? std::to_string(*e.objective) : std::string("-"),
                 e.repaired ? " (repaired)" : "");
  };
  const confl3::RunResult result = confl3::Run(instance, params);
  WriteOrPrint(a.output, confl3::HeuristicSolutionJson(instance, params, result));

  if (result.status != confl3::RunStatus::kSolved) {
    std::fprintf(stderr, "no feasible design found after %d outer iterations\n",
                 result.outer_iterations);
    return kExitNoSolution;
  }
  std::printf("instance   %s\nobjective  %.6f\nbound      %.6f\ngap        %.4f%%\n"
              "iterations %d%s\n",
              instance.name.c_str(), result.objective, result.lower_bound,
              100.0 * result.gap, result.outer_iterations,
              result.final_improved ? " (improved by final search)" : "");
  return kExitOk;
}

int Exact(const ExactArgs& a) {
  const confl3::Instance instance = LoadInstance(a.instance);
  confl3::ConflModel confl = confl3::Build3Confl(instance);
  if (a.strong) confl = confl3::Strengthen(std::move(confl), instance);
  spdlog::info("model: {} variables, {} rows", confl.model.num_variables(),
               confl.model.num_constraints());

  if (a.backend == "external-lp-file") {
    if (a.output.empty() || a.output == "-") {
      throw CLI::ValidationError("-o", "external-lp-file needs an output path for the LP");
    }
    confl3::SaveTextFile(a.output, confl3::ExportLpText(confl.model));
    std::printf("wrote %s; solve it with any LP-format MILP solver\n", a.output.c_str());
    return kExitOk;
  }

  confl3::MipOptions options;
  options.time_limit = a.time_limit;
  const confl3::MipResult result = confl3::SolveMip(confl.model, options);
  spdlog::info("branch and bound: {} after {} nodes", confl3::MipStatusName(result.status),
               result.nodes);
  WriteOrPrint(a.output, confl3::ExactSolutionJson(instance, confl, a.strong, result));
  if (!result.has_incumbent()) {
    std::fprintf(stderr, "no feasible design: %s\n", confl3::MipStatusName(result.status));
    return kExitNoSolution;
  }
  std::printf("instance   %s\nstatus     %s\nobjective  %.6f\nbound      %.6f\n",
              instance.name.c_str(), confl3::MipStatusName(result.status),
              result.objective, result.lower_bound);
  return kExitOk;
}

int ExportLp(const ExactArgs& a) {
  const confl3::Instance instance = LoadInstance(a.instance);
  confl3::ConflModel confl = confl3::Build3Confl(instance);
  if (a.strong) confl = confl3::Strengthen(std::move(confl), instance);
  WriteOrPrint(a.output, confl3::ExportLpText(confl.model));
  return kExitOk;
}

bool EndsWith(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(),
                                                suffix) == 0;
}

int ReportCmd(const ReportArgs& a) {
  std::vector<confl3::ResultRow> rows;
  std::vector<confl3::SolutionSummary> solutions;
  for (const std::string& path : a.inputs) {
    const std::string text = confl3::LoadTextFile(path);
    if (EndsWith(path, ".csv")) {
      for (confl3::ResultRow& r : confl3::ReadResultRowsCsv(text)) rows.push_back(r);
      continue;
    }
    try {
      solutions.push_back(confl3::ReadSolutionSummary(text));
    } catch (const confl3::Error& e) {
      throw confl3::Error(e.code(), path + ": " + e.what());
    }
  }
  for (confl3::ResultRow& r : confl3::PairSolutions(solutions)) rows.push_back(r);
  std::cout << confl3::Report(rows, a.csv);
  return kExitOk;
}

int ExitCodeFor(confl3::ErrorCode code) {
  switch (code) {
    case confl3::ErrorCode::kUnattainableCoverage:
    case confl3::ErrorCode::kInfeasibleRelaxation:
    case confl3::ErrorCode::kNoCompletableFos:
      return kExitNoSolution;
    default:
      return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  ConfigureLogging();

  CLI::App app{"Three-architecture connected facility location: generate, solve, report"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a random testpoint-grid instance");
  generate->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  generate->add_option("--width", gen.width, "Grid columns")->check(CLI::PositiveNumber);
  generate->add_option("--height", gen.height, "Grid rows")->check(CLI::PositiveNumber);
  generate->add_option("--facilities", gen.facilities, "Candidate facilities")
      ->check(CLI::PositiveNumber);
  generate->add_option("--offices", gen.offices, "Central offices")
      ->check(CLI::PositiveNumber);
  generate->add_option("--steiner", gen.steiner, "Steiner nodes")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--users-per-pixel", gen.users_per_pixel, "Users per grid pixel")
      ->check(CLI::PositiveNumber);
  generate->add_option("--coverage", gen.coverage,
                       "Coverage fractions for fiber, copper, wireless")
      ->expected(3)
      ->check(CLI::Range(0.0, 1.0));
  generate->add_option("--radius", gen.radius, "Reach per technology in pixels")
      ->expected(3)
      ->check(CLI::PositiveNumber);
  generate->add_option("--delta", gen.delta, "SIR threshold")->check(CLI::PositiveNumber);
  generate->add_option("--noise", gen.noise, "Noise power")->check(CLI::NonNegativeNumber);
  generate->add_option("--pmin", gen.pmin, "Minimum transmit power")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--pmax", gen.pmax, "Maximum transmit power")
      ->check(CLI::PositiveNumber);
  generate->add_option("--path-loss", gen.path_loss, "Path-loss exponent")
      ->check(CLI::PositiveNumber);
  generate->add_option("-o,--output", gen.output, "Instance JSON path (stdout if omitted)");

  SolveArgs sol;
  auto* solve = app.add_subcommand("solve", "Run the heuristic and write a solution JSON");
  solve->add_option("instance", sol.instance, "Instance JSON")
      ->required()
      ->check(CLI::ExistingFile);
  solve->add_option("-o,--output", sol.output, "Solution JSON path (stdout if omitted)");
  solve->add_option("--seed", sol.seed, "Sampling seed")->capture_default_str();
  solve->add_option("--alpha", sol.alpha, "Weight of tau against eta")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  solve->add_option("--sigma", sol.sigma, "Samples per outer iteration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve->add_option("--vlns-radius", sol.vlns_radius,
                    "Hamming radius (default max(2, ceil(0.2 |F|)))")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--time-limit", sol.time_limit, "Global limit in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve->add_option("--outer-limit", sol.outer_limit, "Outer-loop limit in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve->add_option("--sub-limit", sol.sub_limit, "Per-subproblem limit in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve->add_option("--vlns-limit", sol.vlns_limit, "VLNS limit in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve->add_option("--iters", sol.iters,
                    "Test mode: stop after N outer iterations, ignore time limits")
      ->check(CLI::PositiveNumber);
  solve->add_option("--backend", sol.backend, "MILP backend")
      ->check(CLI::IsMember({"bundled", "external-lp-file"}))
      ->capture_default_str();

  ExactArgs ex;
  auto* exact = app.add_subcommand("exact", "Solve the full model by branch and bound");
  exact->add_option("instance", ex.instance, "Instance JSON")
      ->required()
      ->check(CLI::ExistingFile);
  exact->add_option("-o,--output", ex.output, "Solution JSON or LP path");
  exact->add_flag("--strong", ex.strong, "Add superinterferer and conflict rows");
  exact->add_option("--backend", ex.backend, "bundled, or write an LP for another solver")
      ->check(CLI::IsMember({"bundled", "external-lp-file"}))
      ->capture_default_str();
  exact->add_option("--time-limit", ex.time_limit, "Limit in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  ExactArgs lp;
  auto* export_lp = app.add_subcommand("export-lp", "Write the model in LP format");
  export_lp->add_option("instance", lp.instance, "Instance JSON")
      ->required()
      ->check(CLI::ExistingFile);
  export_lp->add_option("-o,--output", lp.output, "LP path (stdout if omitted)");
  export_lp->add_flag("--strong", lp.strong, "Add superinterferer and conflict rows");

  ReportArgs rep;
  auto* report = app.add_subcommand(
      "report", "Compare exact and heuristic gaps from solution JSONs or CSV rows");
  report->add_option("inputs", rep.inputs, "Solution JSONs and/or id,gap_ref,gap_heu CSVs")
      ->required()
      ->check(CLI::ExistingFile);
  report->add_flag("--csv", rep.csv, "Emit CSV instead of an aligned table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*generate) return Generate(gen);
    if (*solve) return Solve(sol);
    if (*exact) return Exact(ex);
    if (*export_lp) return ExportLp(lp);
    return ReportCmd(rep);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const confl3::Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", confl3::ErrorCodeName(e.code()), e.what());
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
