#ifndef MAPFLOW_TEST_SUPPORT_HPP
#define MAPFLOW_TEST_SUPPORT_HPP

#include <random>

#include "mapflow/graph.hpp"

namespace mapflow::testing {

/// Two-star family: n "red" leaves on hub 0, n "blue" leaves on the far hub,
/// hubs joined by a path of length ell-2. Every start-goal distance is ell,
/// and all 2n leaf edges funnel through the hub path, so the minimum
/// makespan is exactly n + ell - 1.
inline Instance two_star(int n, int ell) {
  // ids: starts 0..n-1, hubs n..n+ell-2 (path of ell-1 vertices),
  // goals n+ell-1..2n+ell-2
  Instance inst;
  inst.mode = Mode::unlabeled;
  const int hub_first = n;
  const int hub_last = n + ell - 2;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < n; ++i) {
    edges.push_back({i, hub_first});
    inst.starts.push_back(i);
  }
  for (int h = hub_first; h < hub_last; ++h) edges.push_back({h, h + 1});
  for (int i = 0; i < n; ++i) {
    edges.push_back({hub_last, hub_last + 1 + i});
    inst.goals.push_back(hub_last + 1 + i);
  }
  inst.graph = Graph::from_edges(2 * n + ell - 1, std::move(edges));
  return inst;
}

/// Connected random grid with blocked cells; free cells get dense ids in
/// row-major order and 4-neighbor adjacency (same convention as the GRID
/// file format).
struct GridMap {
  int rows = 0, cols = 0;
  std::vector<std::string> cells;
  std::vector<int> cell_to_vertex;
  Graph graph;
};

inline GridMap make_grid(int rows, int cols,
                         const std::vector<std::string>& cells) {
  GridMap m;
  m.rows = rows;
  m.cols = cols;
  m.cells = cells;
  m.cell_to_vertex.assign(rows * cols, -1);
  std::vector<std::pair<int, int>> coords;
  int next = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (cells[r][c] == '.') {
        m.cell_to_vertex[r * cols + c] = next++;
        coords.push_back({r, c});
      }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int u = m.cell_to_vertex[r * cols + c];
      if (u < 0) continue;
      if (c + 1 < cols && m.cell_to_vertex[r * cols + c + 1] >= 0)
        edges.push_back({u, m.cell_to_vertex[r * cols + c + 1]});
      if (r + 1 < rows && m.cell_to_vertex[(r + 1) * cols + c] >= 0)
        edges.push_back({u, m.cell_to_vertex[(r + 1) * cols + c]});
    }
  m.graph = Graph::from_edges(next, std::move(edges));
  m.graph.coords = std::move(coords);
  return m;
}

inline GridMap random_grid(std::mt19937& rng, int rows, int cols,
                           double block_prob) {
  for (;;) {
    std::vector<std::string> cells(rows, std::string(cols, '.'));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (auto& row : cells)
      for (auto& cell : row)
        if (coin(rng) < block_prob) cell = '#';
    GridMap m = make_grid(rows, cols, cells);
    if (m.graph.vertex_count >= 2 && m.graph.connected()) return m;
  }
}

/// Random instance on a random connected grid with distinct starts, distinct
/// goals, and starts disjoint from goals.
inline Instance random_grid_instance(std::mt19937& rng, int rows, int cols,
                                     double block_prob, int n,
                                     Mode mode = Mode::unlabeled,
                                     int goal_count = -1) {
  for (;;) {
    GridMap m = random_grid(rng, rows, cols, block_prob);
    const int V = m.graph.vertex_count;
    if (goal_count < 0) goal_count = n;
    if (V < n + goal_count) continue;
    std::vector<Vertex> ids(V);
    for (int v = 0; v < V; ++v) ids[v] = v;
    std::shuffle(ids.begin(), ids.end(), rng);
    Instance inst;
    inst.graph = m.graph;
    inst.mode = mode;
    inst.starts.assign(ids.begin(), ids.begin() + n);
    inst.goals.assign(ids.begin() + n, ids.begin() + n + goal_count);
    if (validate_instance(inst).empty()) return inst;
  }
}

/// Independent all-pairs shortest paths (Floyd-Warshall).
inline std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
  const int V = g.vertex_count;
  const int INF = 1 << 28;
  std::vector<std::vector<int>> d(V, std::vector<int>(V, INF));
  for (int v = 0; v < V; ++v) d[v][v] = 0;
  for (auto [u, v] : g.edges) d[u][v] = d[v][u] = 1;
  for (int k = 0; k < V; ++k)
    for (int i = 0; i < V; ++i)
      for (int j = 0; j < V; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

/// Minimum-total-distance start/goal pairing by enumerating all n!
/// permutations.
inline long long brute_force_assignment(const Instance& inst) {
  const int n = inst.agent_count();
  auto apsp = floyd_warshall(inst.graph);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  long long best = -1;
  do {
    long long total = 0;
    for (int i = 0; i < n; ++i)
      total += apsp[inst.starts[i]][inst.goals[perm[i]]];
    if (best < 0 || total < best) best = total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// A 14-vertex instance with an exact distance/makespan and arrival/makespan
/// tradeoff: four "runway" starts r1..r4 on a backbone, goals b1..b4 each one
/// lane away, plus diagonal shortcuts and a long tail so the cheap routes
/// collide. Optima (verified by the exhaustive searches in the acceptance
/// suite): min makespan 2 forces total distance 8 / total arrival 8, while
/// min total distance 6 / min total arrival 6 need makespan 3.
inline Instance tradeoff_instance() {
  // ids: r1..r4 = 0..3, c1..c4 = 4..7, b1..b4 = 8..11, x = 12, y = 13
  Instance inst;
  inst.mode = Mode::unlabeled;
  std::vector<std::pair<Vertex, Vertex>> edges = {
      {0, 1}, {1, 2}, {2, 3},          // backbone r1-r2-r3-r4
      {0, 4}, {1, 5}, {2, 6}, {3, 7},  // lanes r_i - c_i
      {4, 8}, {5, 9}, {6, 10}, {7, 11},  // lanes c_i - b_i
      {1, 8}, {2, 9}, {3, 10},         // shortcuts r2-b1, r3-b2, r4-b3
      {0, 12}, {12, 13}, {13, 11},     // tail r1-x-y-b4
  };
  inst.graph = Graph::from_edges(14, std::move(edges));
  inst.starts = {0, 1, 2, 3};
  inst.goals = {8, 9, 10, 11};
  return inst;
}

}  // namespace mapflow::testing

#endif  // MAPFLOW_TEST_SUPPORT_HPP
