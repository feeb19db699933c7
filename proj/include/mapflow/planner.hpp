#ifndef MAPFLOW_PLANNER_HPP
#define MAPFLOW_PLANNER_HPP

#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "mapflow/timexp.hpp"

namespace mapflow {

struct SolveResult {
  Plan plan;
  long long objective_value = 0;
  int horizon_used = 0;
  std::optional<long long> certificate;
};

inline int horizon_bound(const Instance& inst) {
  return inst.agent_count() + compute_ell(inst) - 1;
}

inline long long theorem22_bound(long long n, long long vertex_count) {
  return (n - 1) * (n - 2) / 2 + vertex_count;
}

/// Tight makespan lower bound used to seed the binary search: every goal
/// needs some agent and every agent needs some goal.
inline int makespan_lower_bound(const Instance& inst) {
  int lb = 0;
  std::vector<std::vector<int>> dist_from_start;
  for (Vertex s : inst.starts)
    dist_from_start.push_back(distances_from(inst.graph, s));
  for (std::size_t i = 0; i < inst.starts.size(); ++i) {
    int nearest = inst.graph.vertex_count;
    for (Vertex g : inst.goals)
      nearest = std::min(nearest, dist_from_start[i][g]);
    lb = std::max(lb, nearest);
  }
  for (Vertex g : inst.goals) {
    int nearest = inst.graph.vertex_count;
    for (std::size_t i = 0; i < inst.starts.size(); ++i)
      nearest = std::min(nearest, dist_from_start[i][g]);
    lb = std::max(lb, nearest);
  }
  return lb;
}

// ---------------------------------------------------------------------------
// Minimum-total-distance assignment between starts and goals.

struct Assignment {
  std::vector<int> goal_of_start;  // goal index matched to start i
  long long total = 0;
};

/// Successive-shortest-path assignment (Hungarian method with potentials) on
/// the bipartite hop-distance matrix.
inline Assignment min_distance_assignment(const Instance& inst) {
  const int n = inst.agent_count();
  std::vector<std::vector<int>> cost(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    auto d = distances_from(inst.graph, inst.starts[i]);
    for (int j = 0; j < n; ++j) cost[i][j] = d[inst.goals[j]];
  }
  const long long INF = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> match(n + 1, -1), way(n + 1, -1);
  for (int i = 0; i < n; ++i) {
    match[n] = i;
    int j0 = n;
    std::vector<long long> minv(n + 1, INF);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = match[j0], j1 = -1;
      long long delta = INF;
      for (int j = 0; j < n; ++j)
        if (!used[j]) {
          long long cur = cost[i0][j] - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
          if (minv[j] < delta) {
            delta = minv[j];
            j1 = j;
          }
        }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != -1);
    do {
      int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != n);
  }
  Assignment a;
  a.goal_of_start.assign(n, -1);
  for (int j = 0; j < n; ++j)
    if (match[j] >= 0) {
      a.goal_of_start[match[j]] = j;
      a.total += cost[match[j]][j];
    }
  return a;
}

// ---------------------------------------------------------------------------
// Flow-backed solvers.

namespace detail {

inline void require_mode(const Instance& inst, bool allow_unlabeled,
                         bool allow_goal_replacement, const char* op) {
  auto problems = validate_instance(inst);
  if (!problems.empty())
    throw std::invalid_argument(std::string(op) + ": invalid instance: " +
                                problems.front());
  if (inst.mode == Mode::labeled ||
      (inst.mode == Mode::unlabeled && !allow_unlabeled) ||
      (inst.mode == Mode::goal_replacement && !allow_goal_replacement))
    throw std::invalid_argument(std::string(op) + ": unsupported mode " +
                                std::string(to_string(inst.mode)));
}

inline std::optional<Plan> solve_at_horizon(const Instance& inst, int T) {
  BuildOptions opts;
  if (inst.mode == Mode::goal_replacement) {
    opts.goal_replacement = true;
    opts.sink_mode = SinkMode::every_layer_arrival_cost;
  }
  auto net = build_ten(inst, T, opts);
  auto flow = max_flow(net);
  if (flow.value != inst.agent_count()) return std::nullopt;
  auto plan = project_flow_to_plan(inst, net, decompose(net, flow));
  auto verdict = validate_plan(inst, plan);
  if (!verdict.valid)
    throw std::logic_error("solver bug: projected plan invalid: " +
                           verdict.message);
  return plan;
}

}  // namespace detail

/// Feasible plan. Default horizon is the Theorem 17 bound T = n + l - 1
/// (always sufficient); a nonnegative `horizon` probes that exact T instead
/// and may come back empty.
inline std::optional<SolveResult> solve_feasible(const Instance& inst,
                                                 int horizon = -1) {
  detail::require_mode(inst, true, true, "solve_feasible");
  const int T = horizon >= 0 ? horizon : horizon_bound(inst);
  auto plan = detail::solve_at_horizon(inst, T);
  if (!plan) {
    if (horizon < 0)
      throw std::logic_error(
          "solver bug: max flow below n at a sufficient horizon");
    return std::nullopt;
  }
  SolveResult r;
  r.plan = std::move(*plan);
  r.horizon_used = T;
  r.objective_value = r.plan.makespan();
  return r;
}

/// Minimum-makespan plan: binary search on the horizon, feasibility probed
/// by a max-flow round per candidate. A nonnegative `horizon_cap` restricts
/// the search to T <= cap (empty result if infeasible there).
inline std::optional<SolveResult> solve_min_makespan(const Instance& inst,
                                                     int horizon_cap = -1) {
  detail::require_mode(inst, true, false, "solve_min_makespan");
  const int n = inst.agent_count();
  int lo = std::max(1, makespan_lower_bound(inst));
  const int L = lo;
  int hi = horizon_cap >= 0 ? horizon_cap : horizon_bound(inst);
  auto feasible = [&](int T) {
    return max_flow(build_ten(inst, T)).value == n;
  };
  if (hi < lo || !feasible(hi)) {
    if (horizon_cap < 0)
      throw std::logic_error(
          "solver bug: infeasible at the Theorem 17 horizon");
    return std::nullopt;
  }
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (feasible(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  SolveResult r;
  r.horizon_used = lo;
  auto net = build_ten(inst, lo);
  auto flow = max_flow(net);
  if (flow.value != n)
    throw std::logic_error("solver bug: binary search landed on infeasible T");
  r.plan = project_flow_to_plan(inst, net, decompose(net, flow));
  auto verdict = validate_plan(inst, r.plan);
  if (!verdict.valid)
    throw std::logic_error("solver bug: projected plan invalid: " +
                           verdict.message);
  r.objective_value = r.plan.makespan();
  // lower-bound certificate: L itself, or infeasibility of T*-1
  r.certificate = (lo == L) ? L : lo;
  return r;
}

/// Minimum-total-distance plan: zero-cost holdovers, min-cost max-flow at
/// T = n + l - 1. The assignment bound is an exact certificate.
inline SolveResult solve_min_total_distance(const Instance& inst) {
  detail::require_mode(inst, true, false, "solve_min_total_distance");
  const int T = horizon_bound(inst);
  BuildOptions opts;
  opts.holdover_cost = 0;
  auto net = build_ten(inst, T, opts);
  auto flow = min_cost_max_flow(net);
  if (flow.value != inst.agent_count())
    throw std::logic_error("solver bug: max flow below n at T = n + l - 1");
  SolveResult r;
  r.horizon_used = T;
  r.plan = project_flow_to_plan(inst, net, decompose(net, flow));
  auto verdict = validate_plan(inst, r.plan);
  if (!verdict.valid)
    throw std::logic_error("solver bug: projected plan invalid: " +
                           verdict.message);
  r.objective_value = flow.cost;
  if (r.plan.total_distance() != flow.cost)
    throw std::logic_error("solver bug: flow cost != plan move count");
  r.certificate = min_distance_assignment(inst).total;
  if (*r.certificate != r.objective_value)
    throw std::logic_error(
        "solver bug: distance optimum differs from assignment bound");
  return r;
}

// ---------------------------------------------------------------------------
// Constructive DAG scheduler (the unscheduled path set Q machinery).

inline Vertex head(const std::vector<Vertex>& q) { return q.front(); }
inline Vertex tail(const std::vector<Vertex>& q) { return q.back(); }
inline int len(const std::vector<Vertex>& q) {
  return static_cast<int>(q.size()) - 1;
}

/// Shortest-path set between paired starts and goals with the induced edge
/// orientation. paths are listed in schedule (extraction) order.
struct OrientedPathSet {
  std::vector<std::vector<Vertex>> paths;

  /// Directed-edge usage counts induced by orienting each path head->tail.
  std::map<std::pair<Vertex, Vertex>, int> orientation() const {
    std::map<std::pair<Vertex, Vertex>, int> o;
    for (const auto& q : paths)
      for (std::size_t t = 0; t + 1 < q.size(); ++t) ++o[{q[t], q[t + 1]}];
    return o;
  }

  bool has_bidirectional_edge() const {
    auto o = orientation();
    for (const auto& [e, c] : o)
      if (e.first < e.second && o.count({e.second, e.first})) return true;
    return false;
  }

  bool orientation_acyclic(int vertex_count) const {
    auto o = orientation();
    std::vector<std::vector<Vertex>> adj(vertex_count);
    std::vector<int> indeg(vertex_count, 0);
    for (const auto& [e, c] : o) {
      adj[e.first].push_back(e.second);
      ++indeg[e.second];
    }
    std::queue<Vertex> q;
    for (Vertex v = 0; v < vertex_count; ++v)
      if (indeg[v] == 0) q.push(v);
    int seen = 0;
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      ++seen;
      for (Vertex w : adj[u])
        if (--indeg[w] == 0) q.push(w);
    }
    return seen == vertex_count;
  }
};

struct DagScheduleResult {
  Plan plan;
  OrientedPathSet q;                  // q_1..q_n in schedule order
  std::vector<int> standalone_counts; // standalone goals per extraction step
  long long assignment_lower_bound = 0;
  int opposite_repairs = 0;
  int cycle_repairs = 0;
  long long total_distance() const { return plan.total_distance(); }
  int makespan() const { return plan.makespan(); }
};

namespace detail {

/// Lexicographically smallest shortest path src -> dst (walk toward
/// decreasing distance-to-dst, smallest neighbor first).
inline std::vector<Vertex> lex_shortest_path(const Graph& g, Vertex src,
                                             Vertex dst) {
  auto dist = distances_from(g, dst);
  std::vector<Vertex> path{src};
  Vertex cur = src;
  while (cur != dst) {
    for (Vertex w : g.adjacency[cur])
      if (dist[w] == dist[cur] - 1) {
        cur = w;
        break;
      }
    path.push_back(cur);
  }
  return path;
}

using EdgeCount = std::map<std::pair<Vertex, Vertex>, int>;

inline EdgeCount union_of(const std::vector<std::vector<Vertex>>& paths) {
  EdgeCount u;
  for (const auto& q : paths)
    for (std::size_t t = 0; t + 1 < q.size(); ++t) ++u[{q[t], q[t + 1]}];
  return u;
}

/// Flow-decomposes a directed edge multiset with unit supplies at `starts`
/// into start->goal paths (maximal greedy walks, smallest successor first).
inline std::vector<std::vector<Vertex>> decompose_union(
    EdgeCount support, const std::set<Vertex>& starts,
    const std::set<Vertex>& goals) {
  std::map<Vertex, std::vector<Vertex>> succ;
  for (const auto& [e, c] : support)
    if (c > 0) succ[e.first].push_back(e.second);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s : starts) {
    std::vector<Vertex> path{s};
    Vertex cur = s;
    std::size_t guard = 0;
    for (;;) {
      if (++guard > support.size() + starts.size() + goals.size() + 4096)
        throw std::logic_error("decompose_union: walk did not terminate");
      Vertex next = -1;
      auto it = succ.find(cur);
      if (it != succ.end())
        for (Vertex w : it->second)
          if (support[{cur, w}] > 0) {
            next = w;
            break;
          }
      if (next < 0) break;
      --support[{cur, next}];
      path.push_back(next);
      cur = next;
    }
    if (!goals.count(cur))
      throw std::logic_error("decompose_union: walk ended off-goal");
    out.push_back(std::move(path));
  }
  for (const auto& [e, c] : support)
    if (c != 0) throw std::logic_error("decompose_union: leftover edges");
  return out;
}

/// Finds a directed cycle in the support, if any. Returns the cycle vertex
/// sequence v0 -> v1 -> ... -> v0 (first == last), or empty.
inline std::vector<Vertex> find_cycle(const EdgeCount& support) {
  std::map<Vertex, std::vector<Vertex>> succ;
  for (const auto& [e, c] : support)
    if (c > 0) succ[e.first].push_back(e.second);
  std::map<Vertex, int> state;  // 0 new, 1 active, 2 done
  std::vector<Vertex> stack;
  std::vector<Vertex> cycle;
  std::function<bool(Vertex)> dfs = [&](Vertex u) -> bool {
    state[u] = 1;
    stack.push_back(u);
    for (Vertex w : succ[u]) {
      if (state[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        cycle.assign(it, stack.end());
        cycle.push_back(w);
        return true;
      }
      if (state[w] == 0 && dfs(w)) return true;
    }
    stack.pop_back();
    state[u] = 2;
    return false;
  };
  for (const auto& [u, _] : succ)
    if (state[u] == 0 && dfs(u)) return cycle;
  return {};
}

}  // namespace detail

/// The Section IV pipeline: minimal shortest-path set Q, repairs to the
/// Properties 8-11 structure, ordered extraction against standalone goals,
/// and the delay-(i-1) schedule.
inline DagScheduleResult build_dag_schedule(const Instance& inst) {
  detail::require_mode(inst, true, false, "build_dag_schedule");
  const int n = inst.agent_count();
  const Graph& g = inst.graph;

  Assignment assign = min_distance_assignment(inst);
  std::vector<std::vector<Vertex>> paths;
  for (int i = 0; i < n; ++i)
    paths.push_back(detail::lex_shortest_path(g, inst.starts[i],
                                              inst.goals[assign.goal_of_start[i]]));

  DagScheduleResult result;
  result.assignment_lower_bound = assign.total;

  auto total_len = [&]() {
    long long s = 0;
    for (const auto& q : paths) s += len(q);
    return s;
  };

  std::set<Vertex> all_starts(inst.starts.begin(), inst.starts.end());
  std::set<Vertex> all_goals(inst.goals.begin(), inst.goals.end());

  // Property 11 repair: tail-swap any pair of paths running an edge in
  // opposite directions. Unreachable when the assignment is exactly minimal;
  // kept as a guarded fixpoint loop.
  const long long repair_cap =
      static_cast<long long>(n) * std::max<std::size_t>(g.edges.size(), 1) + 1;
  long long iterations = 0;
  for (;;) {
    if (++iterations > repair_cap)
      throw std::logic_error("build_dag_schedule: repair loop exceeded cap");
    long long before = total_len();
    bool fixed_something = false;
    for (int i = 0; i < n && !fixed_something; ++i)
      for (int j = 0; j < n && !fixed_something; ++j) {
        if (i == j) continue;
        for (std::size_t a = 0; a + 1 < paths[i].size() && !fixed_something;
             ++a)
          for (std::size_t b = 0; b + 1 < paths[j].size(); ++b)
            if (paths[i][a] == paths[j][b + 1] &&
                paths[i][a + 1] == paths[j][b]) {
              // q_i runs u->v, q_j runs v->u: swap tails at u.
              std::vector<Vertex> ni(paths[i].begin(),
                                     paths[i].begin() + a + 1);
              ni.insert(ni.end(), paths[j].begin() + b + 2, paths[j].end());
              std::vector<Vertex> nj(paths[j].begin(),
                                     paths[j].begin() + b + 1);
              nj.insert(nj.end(), paths[i].begin() + a + 2, paths[i].end());
              paths[i] = std::move(ni);
              paths[j] = std::move(nj);
              ++result.opposite_repairs;
              fixed_something = true;
              break;
            }
      }
    if (fixed_something) {
      if (total_len() >= before)
        throw std::logic_error(
            "build_dag_schedule: opposite-edge repair did not shrink Q");
      continue;
    }
    // Theorem 13 repair: cancel any directed cycle in the union flow and
    // re-decompose. Also unreachable on a minimal Q.
    auto support = detail::union_of(paths);
    auto cycle = detail::find_cycle(support);
    if (cycle.empty()) break;
    for (std::size_t t = 0; t + 1 < cycle.size(); ++t)
      --support[{cycle[t], cycle[t + 1]}];
    paths = detail::decompose_union(support, all_starts, all_goals);
    ++result.cycle_repairs;
    if (total_len() >= before)
      throw std::logic_error(
          "build_dag_schedule: cycle repair did not shrink Q");
  }
  if (total_len() < assign.total)
    throw std::logic_error(
        "build_dag_schedule: repairs undercut the assignment bound");

  // Ordered extraction (Property 16): repeatedly take a shortest
  // start -> standalone-goal path in the oriented support, then
  // re-decompose the remainder.
  std::set<Vertex> starts_left = all_starts;
  std::set<Vertex> goals_left = all_goals;
  std::vector<std::vector<Vertex>> remaining = paths;
  std::vector<std::vector<Vertex>> ordered;
  while (!starts_left.empty()) {
    // Standalone goals: on exactly one remaining path.
    std::map<Vertex, int> on_paths;
    for (const auto& q : remaining) {
      std::set<Vertex> verts(q.begin(), q.end());
      for (Vertex v : verts)
        if (goals_left.count(v)) ++on_paths[v];
    }
    std::set<Vertex> standalone;
    for (Vertex v : goals_left)
      if (on_paths[v] == 1) standalone.insert(v);
    result.standalone_counts.push_back(static_cast<int>(standalone.size()));
    if (standalone.empty())
      throw std::logic_error("build_dag_schedule: no standalone goal");

    auto support = detail::union_of(remaining);
    // Backward BFS from standalone goals over reversed support edges.
    std::map<Vertex, std::vector<Vertex>> pred;
    for (const auto& [e, c] : support)
      if (c > 0) pred[e.second].push_back(e.first);
    std::map<Vertex, int> dist;
    std::queue<Vertex> bfs;
    for (Vertex v : standalone) {
      dist[v] = 0;
      bfs.push(v);
    }
    while (!bfs.empty()) {
      Vertex u = bfs.front();
      bfs.pop();
      for (Vertex w : pred[u])
        if (!dist.count(w)) {
          dist[w] = dist[u] + 1;
          bfs.push(w);
        }
    }
    Vertex best = -1;
    for (Vertex s : starts_left)
      if (dist.count(s) && (best < 0 || dist[s] < dist[best] ||
                            (dist[s] == dist[best] && s < best)))
        best = s;
    if (best < 0)
      throw std::logic_error(
          "build_dag_schedule: no start reaches a standalone goal");

    std::map<Vertex, std::vector<Vertex>> succ;
    for (const auto& [e, c] : support)
      if (c > 0) succ[e.first].push_back(e.second);
    std::vector<Vertex> q{best};
    Vertex cur = best;
    while (dist[cur] != 0) {
      Vertex next = -1;
      for (Vertex w : succ[cur])
        if (dist.count(w) && dist[w] == dist[cur] - 1 &&
            (next < 0 || w < next))
          next = w;
      if (next < 0)
        throw std::logic_error("build_dag_schedule: extraction walk stuck");
      q.push_back(next);
      cur = next;
    }
    ordered.push_back(q);
    starts_left.erase(best);
    goals_left.erase(cur);
    for (std::size_t t = 0; t + 1 < q.size(); ++t) --support[{q[t], q[t + 1]}];
    remaining = detail::decompose_union(support, starts_left, goals_left);
  }

  result.q.paths = ordered;
  if (result.q.has_bidirectional_edge() ||
      !result.q.orientation_acyclic(g.vertex_count))
    throw std::logic_error("build_dag_schedule: ordered Q lost DAG structure");

  // Theorem 17 schedule: agent i starts moving at t = i - 1.
  int plan_horizon = 0;
  for (int i = 0; i < n; ++i)
    plan_horizon = std::max(plan_horizon, i + len(ordered[i]));
  std::map<Vertex, int> agent_of_start;
  for (int i = 0; i < n; ++i) agent_of_start[inst.starts[i]] = i;
  Plan plan;
  plan.paths.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto& q = ordered[i];
    std::vector<Vertex> row;
    row.insert(row.end(), i, head(q));  // delay
    row.insert(row.end(), q.begin(), q.end());
    row.insert(row.end(), plan_horizon + 1 - row.size(), tail(q));
    plan.paths[agent_of_start[head(q)]] = {std::move(row)};
  }
  auto verdict = validate_plan(inst, plan);
  if (!verdict.valid)
    throw std::logic_error("build_dag_schedule: scheduled plan invalid: " +
                           verdict.message);
  if (plan.total_distance() != assign.total)
    throw std::logic_error(
        "build_dag_schedule: schedule distance differs from bound");
  result.plan = std::move(plan);
  return result;
}

// ---------------------------------------------------------------------------
// Goal replacement: earliest arrival.

struct ArrivalResult {
  Plan plan;
  std::vector<int> histogram;  // arrivals per time step, index 0..T
  long long total_arrival = 0;
  int makespan = 0;
  int horizon_used = 0;
};

/// Earliest-arrival plan for goal-replacement instances: min-cost max-flow
/// with per-layer sink links costing their layer index (movement and
/// holdover free), which minimizes total arrival time and, per the
/// earliest-arrival-flow equivalences, fixes the lexicographically maximal
/// arrival histogram and the minimum makespan as well.
inline ArrivalResult solve_earliest_arrival(const Instance& inst) {
  detail::require_mode(inst, false, true, "solve_earliest_arrival");
  const int T = horizon_bound(inst);
  BuildOptions opts;
  opts.holdover_cost = 0;
  opts.move_cost = 0;
  opts.sink_mode = SinkMode::every_layer_arrival_cost;
  opts.goal_replacement = true;
  auto net = build_ten(inst, T, opts);
  auto flow = min_cost_max_flow(net);
  if (flow.value != inst.agent_count())
    throw std::logic_error("solver bug: max flow below n at T = n + l - 1");
  auto unit_paths = decompose(net, flow);

  ArrivalResult r;
  r.horizon_used = T;
  r.histogram.assign(T + 1, 0);
  for (const auto& seq : unit_paths) {
    // exit layer = layer of the last vertex copy before the super sink
    const TenNode& last = net.nodes.at(seq[seq.size() - 2]);
    ++r.histogram.at(last.layer);
  }
  r.total_arrival = flow.cost;
  r.plan = project_flow_to_plan(inst, net, unit_paths);
  auto verdict = validate_plan(inst, r.plan);
  if (!verdict.valid)
    throw std::logic_error("solver bug: projected plan invalid: " +
                           verdict.message);
  r.makespan = r.plan.makespan();
  if (r.plan.total_arrival() != r.total_arrival)
    throw std::logic_error("solver bug: flow cost != plan arrival total");
  return r;
}

// ---------------------------------------------------------------------------
// Escape problem.

struct EscapeResult {
  bool feasible = false;
  std::vector<std::vector<Vertex>> paths;  // vertex-disjoint, one per evader
};

/// Default boundary for full grids: vertices of degree < 4.
inline std::vector<Vertex> default_boundary(const Graph& g) {
  std::vector<Vertex> b;
  for (Vertex v = 0; v < g.vertex_count; ++v)
    if (g.adjacency[v].size() < 4) b.push_back(v);
  return b;
}

/// Vertex-disjoint paths from the evaders to distinct boundary vertices via
/// node-split maximum flow.
inline EscapeResult solve_escape(const Graph& grid,
                                 const std::vector<Vertex>& evaders,
                                 const std::vector<Vertex>* boundary = nullptr) {
  for (Vertex e : evaders)
    if (e < 0 || e >= grid.vertex_count)
      throw std::invalid_argument("solve_escape: evader off-grid");
  std::set<Vertex> evader_set(evaders.begin(), evaders.end());
  if (evader_set.size() != evaders.size())
    throw std::invalid_argument("solve_escape: duplicate evaders");
  std::vector<Vertex> bound = boundary ? *boundary : default_boundary(grid);

  // node split: in(v) = 2v, out(v) = 2v+1. The unit cost on split arcs
  // keeps the optimal flow's support acyclic (any flow cycle would carry
  // positive cost), so decomposition into simple paths always succeeds.
  std::vector<Arc> arcs;
  const int source = 2 * grid.vertex_count;
  const int sink = source + 1;
  for (Vertex v = 0; v < grid.vertex_count; ++v)
    arcs.push_back({2 * v, 2 * v + 1, 1, 1});
  for (auto [u, v] : grid.edges) {
    arcs.push_back({2 * u + 1, 2 * v, 1, 0});
    arcs.push_back({2 * v + 1, 2 * u, 1, 0});
  }
  for (Vertex e : evaders) arcs.push_back({source, 2 * e, 1, 0});
  for (Vertex b : bound) arcs.push_back({2 * b + 1, sink, 1, 0});

  auto flow = min_cost_max_flow(sink + 1, arcs, source, sink);
  EscapeResult r;
  if (flow.value != static_cast<long long>(evaders.size())) return r;
  r.feasible = true;
  for (const auto& seq : decompose(sink + 1, arcs, source, sink, flow)) {
    std::vector<Vertex> path;
    for (int id : seq)
      if (id < source && id % 2 == 0) path.push_back(id / 2);
    r.paths.push_back(std::move(path));
  }
  return r;
}

}  // namespace mapflow

#endif  // MAPFLOW_PLANNER_HPP
