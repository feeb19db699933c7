#ifndef MAPFLOW_TIMEXP_HPP
#define MAPFLOW_TIMEXP_HPP

#include <ostream>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "mapflow/flow.hpp"
#include "mapflow/graph.hpp"

namespace mapflow {

enum class NodeKind {
  in_copy,      // v(t); v(0) doubles as v(0)'
  out_copy,     // v(t)'
  gadget_tail,
  gadget_head,
  super_source,
  super_sink,
};

enum class EdgeKind {
  gadget_arm,
  gadget_middle,
  holdover,
  vertex_gate,
  source_link,
  sink_link,
};

inline const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::gadget_arm: return "gadget_arm";
    case EdgeKind::gadget_middle: return "gadget_middle";
    case EdgeKind::holdover: return "holdover";
    case EdgeKind::vertex_gate: return "vertex_gate";
    case EdgeKind::source_link: return "source_link";
    case EdgeKind::sink_link: return "sink_link";
  }
  return "?";
}

struct TenNode {
  NodeKind kind;
  int base_vertex = -1;  // -1 for super terminals
  int layer = -1;        // gadget nodes carry the step t of transition t->t+1
  int base_edge = -1;    // gadget nodes only
};

struct TenEdge {
  int from;
  int to;
  int capacity;
  int cost;
  EdgeKind kind;
};

enum class SinkMode { final_layer, every_layer_arrival_cost };

struct BuildOptions {
  int holdover_cost = 1;
  int move_cost = 1;  // gadget middle edge
  SinkMode sink_mode = SinkMode::final_layer;
  bool goal_replacement = false;
};

/// The network N' of the reduction: 2T+1 layered vertex copies per base
/// vertex (layer-0 in/out copies identified), a two-node five-edge gadget
/// per base edge per step, holdover and vertex-gate chains, and super
/// terminals. Immutable after construction.
struct TimeExpandedNetwork {
  std::vector<TenNode> nodes;
  std::vector<TenEdge> edges;
  int source = -1;
  int sink = -1;
  int horizon = 0;
  BuildOptions opts;
  int base_vertex_count = 0;

  // id layout: vertex v occupies v*(2T+1) + c with c=0 for the merged
  // layer-0 copy, c=2t-1 for v(t), c=2t for v(t)'; gadgets follow, then
  // source and sink.
  int in_node(Vertex v, int t) const {
    return t == 0 ? v * (2 * horizon + 1) : v * (2 * horizon + 1) + 2 * t - 1;
  }
  int out_node(Vertex v, int t) const {
    return t == 0 ? v * (2 * horizon + 1) : v * (2 * horizon + 1) + 2 * t;
  }
};

/// Builds N' for an instance and horizon T.
inline TimeExpandedNetwork build_ten(const Instance& inst, int T,
                                     BuildOptions opts = {}) {
  if (T < 1) throw std::invalid_argument("build_ten: horizon must be >= 1");
  if (!validate_instance(inst).empty())
    throw std::invalid_argument("build_ten: invalid instance");

  const Graph& g = inst.graph;
  const int V = g.vertex_count;
  const int E = static_cast<int>(g.edges.size());
  TimeExpandedNetwork net;
  net.horizon = T;
  net.opts = opts;
  net.base_vertex_count = V;

  net.nodes.reserve(static_cast<std::size_t>(V) * (2 * T + 1) +
                    2ull * E * T + 2);
  for (Vertex v = 0; v < V; ++v) {
    net.nodes.push_back({NodeKind::in_copy, v, 0, -1});
    for (int t = 1; t <= T; ++t) {
      net.nodes.push_back({NodeKind::in_copy, v, t, -1});
      net.nodes.push_back({NodeKind::out_copy, v, t, -1});
    }
  }
  const int gadget_base = V * (2 * T + 1);
  for (int e = 0; e < E; ++e)
    for (int t = 0; t < T; ++t) {
      net.nodes.push_back({NodeKind::gadget_tail, -1, t, e});
      net.nodes.push_back({NodeKind::gadget_head, -1, t, e});
    }
  net.source = static_cast<int>(net.nodes.size());
  net.nodes.push_back({NodeKind::super_source, -1, -1, -1});
  net.sink = static_cast<int>(net.nodes.size());
  net.nodes.push_back({NodeKind::super_sink, -1, -1, -1});

  std::set<Vertex> goal_set(inst.goals.begin(), inst.goals.end());
  auto vertex_cap = [&](Vertex v) {
    return opts.goal_replacement && goal_set.count(v) ? inst.agent_count() : 1;
  };

  // Holdover and vertex-gate chains.
  for (Vertex v = 0; v < V; ++v) {
    for (int t = 0; t < T; ++t)
      net.edges.push_back({net.out_node(v, t), net.in_node(v, t + 1),
                           vertex_cap(v), opts.holdover_cost,
                           EdgeKind::holdover});
    for (int t = 1; t <= T; ++t)
      net.edges.push_back({net.in_node(v, t), net.out_node(v, t),
                           vertex_cap(v), 0, EdgeKind::vertex_gate});
  }

  // Edge gadgets.
  for (int e = 0; e < E; ++e) {
    auto [u, v] = g.edges[e];
    for (int t = 0; t < T; ++t) {
      int tail = gadget_base + 2 * (e * T + t);
      int head = tail + 1;
      net.edges.push_back({net.out_node(u, t), tail, 1, 0, EdgeKind::gadget_arm});
      net.edges.push_back({net.out_node(v, t), tail, 1, 0, EdgeKind::gadget_arm});
      net.edges.push_back({tail, head, 1, opts.move_cost, EdgeKind::gadget_middle});
      net.edges.push_back({head, net.in_node(u, t + 1), 1, 0, EdgeKind::gadget_arm});
      net.edges.push_back({head, net.in_node(v, t + 1), 1, 0, EdgeKind::gadget_arm});
    }
  }

  // Super terminals.
  for (Vertex s : inst.starts)
    net.edges.push_back({net.source, net.in_node(s, 0), 1, 0,
                         EdgeKind::source_link});
  for (Vertex t_goal : inst.goals) {
    if (opts.sink_mode == SinkMode::final_layer) {
      net.edges.push_back({net.out_node(t_goal, T), net.sink, 1, 0,
                           EdgeKind::sink_link});
    } else {
      for (int t = 0; t <= T; ++t)
        net.edges.push_back({net.out_node(t_goal, t), net.sink,
                             opts.goal_replacement ? inst.agent_count() : 1, t,
                             EdgeKind::sink_link});
    }
  }
  return net;
}

/// Plain-text edge list `from_id to_id capacity cost kind`, one per line.
inline void dump_ten(const TimeExpandedNetwork& net, std::ostream& os) {
  for (const auto& e : net.edges)
    os << e.from << ' ' << e.to << ' ' << e.capacity << ' ' << e.cost << ' '
       << to_string(e.kind) << '\n';
}

/// Converts unit source->sink node paths to a Plan: the base vertex of the
/// copies visited at each layer, one sample per timestep; an agent exiting
/// through an every-layer sink at t' < T is padded at its goal through T.
/// Agents are ordered by start vertex id.
inline Plan project_flow_to_plan(const Instance& inst,
                                 const TimeExpandedNetwork& net,
                                 const std::vector<std::vector<int>>& unit_paths) {
  const int T = net.horizon;
  Plan plan;
  for (const auto& seq : unit_paths) {
    std::vector<Vertex> row(T + 1, -1);
    int last_layer = -1;
    for (int id : seq) {
      const TenNode& nd = net.nodes.at(id);
      if (nd.kind == NodeKind::in_copy || nd.kind == NodeKind::out_copy) {
        if (row[nd.layer] != -1 && row[nd.layer] != nd.base_vertex)
          throw std::invalid_argument(
              "project_flow_to_plan: inconsistent layer occupancy");
        row[nd.layer] = nd.base_vertex;
        last_layer = std::max(last_layer, nd.layer);
      }
    }
    if (last_layer < 0)
      throw std::invalid_argument("project_flow_to_plan: empty unit path");
    for (int t = 0; t <= last_layer; ++t)
      if (row[t] < 0)
        throw std::invalid_argument("project_flow_to_plan: skipped layer " +
                                    std::to_string(t));
    for (int t = last_layer + 1; t <= T; ++t) row[t] = row[last_layer];
    plan.paths.push_back({std::move(row)});
  }
  std::sort(plan.paths.begin(), plan.paths.end(),
            [](const Path& a, const Path& b) {
              return a.vertices.front() < b.vertices.front();
            });
  // Align agent order with instance starts (agents are ordered by start id
  // for determinism; re-map rows to the instance's start order).
  std::vector<Path> by_start(plan.paths.size());
  std::unordered_map<Vertex, int> start_index;
  for (int i = 0; i < inst.agent_count(); ++i) start_index[inst.starts[i]] = i;
  for (auto& p : plan.paths) {
    auto it = start_index.find(p.vertices.front());
    if (it == start_index.end())
      throw std::invalid_argument(
          "project_flow_to_plan: unit path does not begin at a start");
    by_start[it->second] = std::move(p);
  }
  plan.paths = std::move(by_start);
  return plan;
}

/// Inverse of project_flow_to_plan on its image: marks the copies of each
/// p_i(t) and connects them through gates, holdovers, gadgets, and terminal
/// links. With every-layer sinks the unit exits at the agent's arrival time.
inline FlowResult plan_to_flow(const Instance& inst,
                               const TimeExpandedNetwork& net,
                               const Plan& plan) {
  if (plan.horizon() != net.horizon)
    throw std::invalid_argument("plan_to_flow: horizon mismatch");
  PlanVerdict verdict = validate_plan(inst, plan);
  if (!verdict.valid)
    throw std::invalid_argument("plan_to_flow: invalid plan: " +
                                verdict.message);

  std::unordered_map<long long, int> edge_id;
  edge_id.reserve(net.edges.size() * 2);
  const long long N = static_cast<long long>(net.nodes.size());
  for (std::size_t i = 0; i < net.edges.size(); ++i)
    edge_id.emplace(net.edges[i].from * N + net.edges[i].to,
                    static_cast<int>(i));
  auto use = [&](int from, int to, FlowResult& f) {
    auto it = edge_id.find(from * N + to);
    if (it == edge_id.end())
      throw std::invalid_argument("plan_to_flow: missing network edge");
    ++f.units[it->second];
  };

  FlowResult flow;
  flow.units.assign(net.edges.size(), 0);
  const int T = net.horizon;
  const bool every_layer = net.opts.sink_mode == SinkMode::every_layer_arrival_cost;
  for (const auto& p : plan.paths) {
    int exit_t = every_layer ? p.arrival_time() : T;
    use(net.source, net.in_node(p.at(0), 0), flow);
    for (int t = 0; t < exit_t; ++t) {
      Vertex a = p.at(t), b = p.at(t + 1);
      if (a == b) {
        use(net.out_node(a, t), net.in_node(a, t + 1), flow);
      } else {
        // locate the gadget of base edge (a, b) at step t
        Vertex u = std::min(a, b), v = std::max(a, b);
        auto eit = std::lower_bound(inst.graph.edges.begin(),
                                    inst.graph.edges.end(),
                                    std::make_pair(u, v));
        int e = static_cast<int>(eit - inst.graph.edges.begin());
        int tail = net.base_vertex_count * (2 * T + 1) + 2 * (e * T + t);
        use(net.out_node(a, t), tail, flow);
        use(tail, tail + 1, flow);
        use(tail + 1, net.in_node(b, t + 1), flow);
      }
      use(net.in_node(p.at(t + 1), t + 1), net.out_node(p.at(t + 1), t + 1),
          flow);
    }
    use(net.out_node(p.at(exit_t), exit_t), net.sink, flow);
  }
  flow.value = plan.agent_count();
  for (std::size_t i = 0; i < net.edges.size(); ++i)
    flow.cost += static_cast<long long>(flow.units[i]) * net.edges[i].cost;
  auto problems = check_flow(static_cast<int>(net.nodes.size()), net.edges,
                             net.source, net.sink, flow);
  if (!problems.empty())
    throw std::logic_error("plan_to_flow: produced infeasible flow: " +
                           problems.front());
  return flow;
}

// Convenience overloads matching the module surface.
inline FlowResult max_flow(const TimeExpandedNetwork& net) {
  return max_flow(static_cast<int>(net.nodes.size()), net.edges, net.source,
                  net.sink);
}
inline FlowResult min_cost_max_flow(const TimeExpandedNetwork& net) {
  return min_cost_max_flow(static_cast<int>(net.nodes.size()), net.edges,
                           net.source, net.sink);
}
inline std::vector<std::string> check_flow(const TimeExpandedNetwork& net,
                                           const FlowResult& flow) {
  return check_flow(static_cast<int>(net.nodes.size()), net.edges, net.source,
                    net.sink, flow);
}
inline std::vector<std::vector<int>> decompose(const TimeExpandedNetwork& net,
                                               const FlowResult& flow) {
  return decompose(static_cast<int>(net.nodes.size()), net.edges, net.source,
                   net.sink, flow);
}

}  // namespace mapflow

#endif  // MAPFLOW_TIMEXP_HPP
