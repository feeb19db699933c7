#ifndef MAPFLOW_APP_HPP
#define MAPFLOW_APP_HPP

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mapflow/io.hpp"
#include "mapflow/oracle.hpp"
#include "mapflow/planner.hpp"

namespace mapflow::app {

// Exit code contract.
enum ExitCode {
  kOk = 0,
  kInputError = 1,
  kInvalidPlan = 2,
  kInfeasible = 3,
  kGuardExceeded = 4,
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::ParseError(0, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline io::ParsedInstance load_instance(const std::string& path) {
  return io::parse_instance(read_file(path));
}

/// Reorders agents by start vertex id so output is stable regardless of the
/// file's agent ordering (the planners are permutation-invariant anyway).
inline void sort_agents(io::ParsedInstance& p) {
  if (!p.has_agents || p.instance.mode == Mode::labeled) return;
  const int n = static_cast<int>(p.instance.starts.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return p.instance.starts[a] < p.instance.starts[b];
  });
  std::vector<Vertex> starts(n), goals(n);
  for (int i = 0; i < n; ++i) {
    starts[i] = p.instance.starts[order[i]];
    goals[i] = p.agent_goals[order[i]];
  }
  p.instance.starts = std::move(starts);
  p.agent_goals = std::move(goals);
  if (p.instance.mode != Mode::goal_replacement)
    p.instance.goals = p.agent_goals;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App cli{"multi-agent path planning via time-expanded network flow"};
  cli.require_subcommand(1);

  std::string in_path, plan_path, out_path, objective = "feasible";
  int horizon = -1;

  auto add_in = [&](CLI::App* cmd) {
    cmd->add_option("--in", in_path, "instance file")->required();
  };
  auto* solve = cli.add_subcommand("solve", "plan for an instance");
  add_in(solve);
  solve->add_option("--objective", objective,
                    "feasible|makespan|distance|arrival");
  solve->add_option("--out", out_path, "also write the plan to this file");
  solve->add_option("--horizon", horizon, "fixed time horizon override");

  auto* verify = cli.add_subcommand("verify", "check a plan file");
  add_in(verify);
  verify->add_option("--plan", plan_path, "plan file")->required();

  auto* escape = cli.add_subcommand("escape", "disjoint paths to the boundary");
  add_in(escape);

  auto* oracle_cmd = cli.add_subcommand("oracle", "brute-force exact optimum");
  add_in(oracle_cmd);
  oracle_cmd->add_option("--objective", objective,
                         "makespan|distance|arrival");

  auto* stats = cli.add_subcommand("stats", "print instance statistics");
  add_in(stats);

  try {
    std::vector<const char*> argv{"mapflow"};
    for (const auto& a : args) argv.push_back(a.c_str());
    cli.parse(static_cast<int>(argv.size()),
              const_cast<char**>(argv.data()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << cli.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (solve->parsed()) {
      auto parsed = detail::load_instance(in_path);
      if (!parsed.has_agents)
        throw io::ParseError(0, "solve requires an agents section");
      detail::sort_agents(parsed);
      const Instance& inst = parsed.instance;
      if (inst.mode == Mode::labeled) {
        err << "error: labeled-mode solving is not supported\n";
        return kInputError;
      }
      if (objective == "arrival" && inst.mode != Mode::goal_replacement) {
        err << "error: --objective arrival requires goal_replacement mode\n";
        return kInputError;
      }
      if (objective != "arrival" && inst.mode == Mode::goal_replacement &&
          objective != "feasible") {
        err << "error: goal_replacement mode supports --objective "
               "feasible|arrival\n";
        return kInputError;
      }

      Plan plan;
      if (objective == "feasible") {
        auto r = solve_feasible(inst, horizon);
        if (!r) {
          err << "infeasible at the probed horizon\n";
          return kInfeasible;
        }
        plan = r->plan;
      } else if (objective == "makespan") {
        auto r = solve_min_makespan(inst, horizon);
        if (!r) {
          err << "infeasible at the probed horizon\n";
          return kInfeasible;
        }
        plan = r->plan;
      } else if (objective == "distance") {
        plan = solve_min_total_distance(inst).plan;
      } else if (objective == "arrival") {
        plan = solve_earliest_arrival(inst).plan;
      } else {
        err << "error: unknown objective '" << objective << "'\n";
        return kInputError;
      }
      std::string text = io::print_plan(parsed, plan);
      out << text;
      if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw io::ParseError(0, "cannot write file: " + out_path);
        f << text;
      }
      return kOk;
    }

    if (verify->parsed()) {
      auto parsed = detail::load_instance(in_path);
      if (!parsed.has_agents)
        throw io::ParseError(0, "verify requires an agents section");
      Plan plan = io::parse_plan(parsed, detail::read_file(plan_path));
      PlanVerdict verdict;
      try {
        verdict = validate_plan(parsed.instance, plan);
      } catch (const std::invalid_argument& e) {
        err << "invalid: " << e.what() << "\n";
        return kInvalidPlan;
      }
      if (!verdict.valid) {
        err << "invalid: " << verdict.message << "\n";
        return kInvalidPlan;
      }
      out << "valid\n";
      return kOk;
    }

    if (escape->parsed()) {
      auto parsed = detail::load_instance(in_path);
      std::vector<Vertex> evaders =
          parsed.has_agents ? parsed.instance.starts : parsed.evaders;
      auto r = solve_escape(parsed.instance.graph, evaders);
      if (!r.feasible) {
        out << "infeasible\n";
        return kInfeasible;
      }
      out << "feasible\n";
      for (const auto& path : r.paths) {
        for (std::size_t i = 0; i < path.size(); ++i) {
          if (i) out << " ";
          if (parsed.grid_form) {
            auto [row, col] = parsed.instance.graph.coords[path[i]];
            out << row << "," << col;
          } else {
            out << path[i];
          }
        }
        out << "\n";
      }
      return kOk;
    }

    if (oracle_cmd->parsed()) {
      auto parsed = detail::load_instance(in_path);
      if (!parsed.has_agents)
        throw io::ParseError(0, "oracle requires an agents section");
      detail::sort_agents(parsed);
      const Instance& inst = parsed.instance;
      if (objective == "makespan") {
        auto r = oracle::oracle_min_makespan(inst);
        if (!r) {
          err << "no solution within the step cap\n";
          return kInfeasible;
        }
        out << "makespan " << r->value << "\n";
      } else if (objective == "distance") {
        out << "total_distance " << oracle::oracle_min_total_distance(inst).primary
            << "\n";
      } else if (objective == "arrival") {
        if (inst.mode == Mode::goal_replacement) {
          auto r = oracle::oracle_goal_replacement(inst);
          out << "total_arrival " << r.min_total_arrival << "\n";
        } else {
          out << "total_arrival " << oracle::oracle_min_total_arrival(inst).primary
              << "\n";
        }
      } else {
        err << "error: unknown objective '" << objective << "'\n";
        return kInputError;
      }
      return kOk;
    }

    if (stats->parsed()) {
      auto parsed = detail::load_instance(in_path);
      const Instance& inst = parsed.instance;
      const int n = parsed.has_agents ? inst.agent_count()
                                      : static_cast<int>(parsed.evaders.size());
      out << "n " << n << "\n";
      out << "V " << inst.graph.vertex_count << "\n";
      out << "E " << inst.graph.edges.size() << "\n";
      if (parsed.has_agents) {
        out << "ell " << compute_ell(inst) << "\n";
        out << "horizon_bound " << horizon_bound(inst) << "\n";
        out << "theorem22_bound "
            << theorem22_bound(inst.agent_count(), inst.graph.vertex_count)
            << "\n";
      }
      return kOk;
    }
  } catch (const oracle::GuardError& e) {
    err << "error: " << e.what() << "\n";
    return kGuardExceeded;
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace mapflow::app

#endif  // MAPFLOW_APP_HPP
