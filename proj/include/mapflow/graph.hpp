#ifndef MAPFLOW_GRAPH_HPP
#define MAPFLOW_GRAPH_HPP

#include <algorithm>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mapflow {

using Vertex = int;

/// Connected, undirected, simple graph with unit-length edges.
/// Vertices are dense ids 0..V-1. Optional planar coordinates are kept for
/// grid-derived instances so the CLI can print r,c pairs.
struct Graph {
  int vertex_count = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;       // (u, v) with u < v
  std::vector<std::vector<Vertex>> adjacency;         // sorted neighbor lists
  std::vector<std::pair<int, int>> coords;            // empty unless grid-built

  static Graph from_edges(int vertex_count,
                          std::vector<std::pair<Vertex, Vertex>> edge_list) {
    Graph g;
    g.vertex_count = vertex_count;
    for (auto& [u, v] : edge_list) {
      if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    edge_list.erase(std::unique(edge_list.begin(), edge_list.end()),
                    edge_list.end());
    g.edges = std::move(edge_list);
    g.adjacency.assign(vertex_count, {});
    for (auto [u, v] : g.edges) {
      if (u < 0 || v >= vertex_count)
        throw std::invalid_argument("edge endpoint out of range");
      g.adjacency[u].push_back(v);
      g.adjacency[v].push_back(u);
    }
    for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
    return g;
  }

  bool has_edge(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
  }

  bool has_self_loop() const {
    for (auto [u, v] : edges)
      if (u == v) return true;
    return false;
  }

  bool connected() const {
    if (vertex_count == 0) return false;
    std::vector<char> seen(vertex_count, 0);
    std::queue<Vertex> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (Vertex w : adjacency[u])
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          q.push(w);
        }
    }
    return reached == vertex_count;
  }
};

enum class Mode { labeled, unlabeled, goal_replacement };

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::labeled: return "labeled";
    case Mode::unlabeled: return "unlabeled";
    case Mode::goal_replacement: return "goal_replacement";
  }
  return "?";
}

/// The 4-tuple (G, A, x_I, x_G): agent i starts at starts[i]; goals are the
/// target set (assignment free in unlabeled mode; reusable in
/// goal_replacement mode, where |goals| may be smaller than |starts|).
struct Instance {
  Graph graph;
  std::vector<Vertex> starts;
  std::vector<Vertex> goals;
  Mode mode = Mode::unlabeled;

  int agent_count() const { return static_cast<int>(starts.size()); }
};

/// Timestep-indexed vertex sequence; consecutive entries are equal (wait) or
/// joined by a graph edge. Stored padded to the plan horizon.
struct Path {
  std::vector<Vertex> vertices;

  int horizon() const { return static_cast<int>(vertices.size()) - 1; }
  Vertex at(int t) const { return vertices.at(t); }
  Vertex back() const { return vertices.back(); }

  /// First index after which the path is constant (earliest such index).
  int arrival_time() const {
    int k = horizon();
    while (k > 0 && vertices[k - 1] == vertices[k]) --k;
    return k;
  }

  int move_count() const {
    int moves = 0;
    for (std::size_t t = 0; t + 1 < vertices.size(); ++t)
      if (vertices[t] != vertices[t + 1]) ++moves;
    return moves;
  }
};

/// Solution object: n paths of identical length. All statistics are
/// recomputed from the paths on demand.
struct Plan {
  std::vector<Path> paths;

  int agent_count() const { return static_cast<int>(paths.size()); }
  int horizon() const { return paths.empty() ? 0 : paths.front().horizon(); }

  int makespan() const {
    int m = 0;
    for (const auto& p : paths) m = std::max(m, p.arrival_time());
    return m;
  }

  long long total_arrival() const {
    long long s = 0;
    for (const auto& p : paths) s += p.arrival_time();
    return s;
  }

  long long total_distance() const {
    long long d = 0;
    for (const auto& p : paths) d += p.move_count();
    return d;
  }
};

// ---------------------------------------------------------------------------

inline std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> report;
  const Graph& g = inst.graph;
  if (g.vertex_count < 1) report.push_back("graph has no vertices");
  if (g.has_self_loop()) report.push_back("graph has a self-loop");
  for (auto [u, v] : g.edges)
    if (u < 0 || v >= g.vertex_count) {
      report.push_back("edge endpoint out of range");
      break;
    }
  if (g.vertex_count >= 1 && !g.connected()) report.push_back("not connected");

  const int n = inst.agent_count();
  if (n < 1) report.push_back("no agents");
  if (inst.mode == Mode::goal_replacement) {
    if (inst.goals.empty() || static_cast<int>(inst.goals.size()) > n)
      report.push_back("goal_replacement requires 1 <= |goals| <= n");
  } else if (inst.goals.size() != inst.starts.size()) {
    report.push_back("starts/goals size mismatch");
  }
  if (n > g.vertex_count) report.push_back("more agents than vertices");

  auto check_ids = [&](const std::vector<Vertex>& vs, const char* what) {
    for (Vertex v : vs)
      if (v < 0 || v >= g.vertex_count) {
        report.push_back(std::string(what) + " vertex out of range");
        return;
      }
  };
  check_ids(inst.starts, "start");
  check_ids(inst.goals, "goal");

  std::set<Vertex> ss(inst.starts.begin(), inst.starts.end());
  std::set<Vertex> gs(inst.goals.begin(), inst.goals.end());
  if (ss.size() != inst.starts.size()) report.push_back("duplicate starts");
  if (gs.size() != inst.goals.size()) report.push_back("duplicate goals");
  for (Vertex v : ss)
    if (gs.count(v)) {
      report.push_back("starts/goals not disjoint");
      break;
    }
  return report;
}

/// Breadth-first hop distances from `source`.
inline std::vector<int> distances_from(const Graph& g, Vertex source) {
  if (source < 0 || source >= g.vertex_count)
    throw std::invalid_argument("distances_from: invalid vertex id");
  std::vector<int> dist(g.vertex_count, -1);
  std::queue<Vertex> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    for (Vertex w : g.adjacency[u])
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
  }
  return dist;
}

/// Largest start-to-goal hop distance over all pairs.
inline int compute_ell(const Instance& inst) {
  int ell = 0;
  for (Vertex s : inst.starts) {
    auto dist = distances_from(inst.graph, s);
    for (Vertex t : inst.goals) ell = std::max(ell, dist[t]);
  }
  return ell;
}

struct PlanVerdict {
  bool valid = true;
  std::string message;

  static PlanVerdict ok() { return {}; }
  static PlanVerdict fail(std::string msg) { return {false, std::move(msg)}; }
};

/// Checks starts, per-mode endpoint conditions, and pairwise meet / head-on
/// collisions. In goal_replacement mode a meet is tolerated only at a goal
/// vertex, at or after the first arrival of every agent involved.
inline PlanVerdict validate_plan(const Instance& inst, const Plan& plan) {
  const int n = plan.agent_count();
  if (n != inst.agent_count())
    return PlanVerdict::fail("plan/instance agent count mismatch");
  if (n == 0) return PlanVerdict::fail("empty plan");
  const int T = plan.paths.front().horizon();
  for (const auto& p : plan.paths)
    if (p.horizon() != T)
      throw std::invalid_argument("validate_plan: path length mismatch");

  const Graph& g = inst.graph;
  for (int i = 0; i < n; ++i) {
    const auto& p = plan.paths[i].vertices;
    for (Vertex v : p)
      if (v < 0 || v >= g.vertex_count)
        return PlanVerdict::fail("path " + std::to_string(i) +
                                 " references invalid vertex");
    if (p.front() != inst.starts[i])
      return PlanVerdict::fail("agent " + std::to_string(i) +
                               " does not start at its start vertex");
    for (int t = 0; t < T; ++t)
      if (p[t] != p[t + 1] && !g.has_edge(p[t], p[t + 1]))
        return PlanVerdict::fail("agent " + std::to_string(i) + " step " +
                                 std::to_string(t) + " not along an edge");
  }

  std::set<Vertex> goal_set(inst.goals.begin(), inst.goals.end());

  // Endpoint conditions.
  switch (inst.mode) {
    case Mode::labeled:
      for (int i = 0; i < n; ++i)
        if (plan.paths[i].back() != inst.goals[i])
          return PlanVerdict::fail("agent " + std::to_string(i) +
                                   " does not end at its assigned goal");
      break;
    case Mode::unlabeled: {
      std::set<Vertex> ends;
      for (const auto& p : plan.paths) ends.insert(p.back());
      if (ends.size() != static_cast<std::size_t>(n) || ends != goal_set)
        return PlanVerdict::fail("endpoints are not a permutation of goals");
      break;
    }
    case Mode::goal_replacement:
      for (int i = 0; i < n; ++i) {
        const auto& p = plan.paths[i];
        if (!goal_set.count(p.back()))
          return PlanVerdict::fail("agent " + std::to_string(i) +
                                   " does not end at a goal");
        // "stays there": the trailing constant run must sit on the goal,
        // i.e. the vertex at arrival_time equals the final vertex by
        // construction; nothing more to check.
      }
      break;
  }

  // Pairwise collisions.
  std::vector<int> arrive(n);
  for (int i = 0; i < n; ++i) arrive[i] = plan.paths[i].arrival_time();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto& pi = plan.paths[i].vertices;
      const auto& pj = plan.paths[j].vertices;
      for (int t = 0; t <= T; ++t) {
        if (pi[t] == pj[t]) {
          bool tolerated = inst.mode == Mode::goal_replacement &&
                           goal_set.count(pi[t]) &&
                           pi[t] == plan.paths[i].back() &&
                           pj[t] == plan.paths[j].back() && t >= arrive[i] &&
                           t >= arrive[j];
          if (!tolerated)
            return PlanVerdict::fail(
                "meet: agents " + std::to_string(i) + "," + std::to_string(j) +
                " at vertex " + std::to_string(pi[t]) + " at t=" +
                std::to_string(t));
        }
        if (t < T && pi[t] == pj[t + 1] && pi[t + 1] == pj[t] &&
            pi[t] != pi[t + 1])
          return PlanVerdict::fail("head-on: agents " + std::to_string(i) +
                                   "," + std::to_string(j) + " on edge (" +
                                   std::to_string(pi[t]) + "," +
                                   std::to_string(pi[t + 1]) + ") at t=" +
                                   std::to_string(t));
      }
    }
  return PlanVerdict::ok();
}

}  // namespace mapflow

#endif  // MAPFLOW_GRAPH_HPP
