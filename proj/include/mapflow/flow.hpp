#ifndef MAPFLOW_FLOW_HPP
#define MAPFLOW_FLOW_HPP

#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace mapflow {

/// Minimal directed capacitated/costed arc. Any edge type with these fields
/// (e.g. timexp::TenEdge) works with the engines below.
struct Arc {
  int from = 0;
  int to = 0;
  int capacity = 0;
  int cost = 0;
};

/// Integral edge-flow assignment, aligned index-wise with the input edges.
struct FlowResult {
  std::vector<int> units;
  long long value = 0;
  long long cost = 0;
};

namespace detail {

/// Residual graph: paired forward/backward slots, CSR adjacency in input
/// edge order (deterministic tie-breaking by insertion order).
struct Residual {
  int node_count;
  std::vector<int> head;   // CSR offsets, size node_count+1
  std::vector<int> slot;   // slot ids in adjacency order
  std::vector<int> to, cap, cost;  // per slot; slot^1 is the paired reverse

  template <typename Edge>
  Residual(int nodes, const std::vector<Edge>& edges) : node_count(nodes) {
    const int m = static_cast<int>(edges.size());
    to.resize(2 * m);
    cap.resize(2 * m);
    cost.resize(2 * m);
    std::vector<int> deg(nodes, 0);
    for (const auto& e : edges) {
      ++deg[e.from];
      ++deg[e.to];
    }
    head.assign(nodes + 1, 0);
    for (int v = 0; v < nodes; ++v) head[v + 1] = head[v] + deg[v];
    slot.resize(2 * m);
    std::vector<int> fill(head.begin(), head.end() - 1);
    for (int i = 0; i < m; ++i) {
      const auto& e = edges[i];
      if (e.from < 0 || e.from >= nodes || e.to < 0 || e.to >= nodes)
        throw std::invalid_argument("flow: edge endpoint out of range");
      if (e.capacity < 0) throw std::invalid_argument("flow: negative capacity");
      to[2 * i] = e.to;
      cap[2 * i] = e.capacity;
      cost[2 * i] = e.cost;
      to[2 * i + 1] = e.from;
      cap[2 * i + 1] = 0;
      cost[2 * i + 1] = -e.cost;
      slot[fill[e.from]++] = 2 * i;
      slot[fill[e.to]++] = 2 * i + 1;
    }
  }

  template <typename Edge>
  FlowResult extract(const std::vector<Edge>& edges) const {
    FlowResult r;
    r.units.resize(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      int f = edges[i].capacity - cap[2 * i];
      r.units[i] = f;
      r.cost += static_cast<long long>(f) * edges[i].cost;
    }
    return r;
  }
};

}  // namespace detail

/// Edmonds-Karp: shortest augmenting paths by breadth-first search. Costs
/// are ignored. Returns an integral maximum flow.
template <typename Edge>
FlowResult max_flow(int node_count, const std::vector<Edge>& edges, int source,
                    int sink) {
  detail::Residual g(node_count, edges);
  long long value = 0;
  std::vector<int> parent_slot(node_count);
  for (;;) {
    std::fill(parent_slot.begin(), parent_slot.end(), -1);
    parent_slot[source] = -2;
    std::queue<int> q;
    q.push(source);
    while (!q.empty() && parent_slot[sink] == -1) {
      int u = q.front();
      q.pop();
      for (int i = g.head[u]; i < g.head[u + 1]; ++i) {
        int s = g.slot[i];
        int w = g.to[s];
        if (g.cap[s] > 0 && parent_slot[w] == -1) {
          parent_slot[w] = s;
          q.push(w);
        }
      }
    }
    if (parent_slot[sink] == -1) break;
    int push = std::numeric_limits<int>::max();
    for (int v = sink; v != source;) {
      int s = parent_slot[v];
      push = std::min(push, g.cap[s]);
      v = g.to[s ^ 1];
    }
    for (int v = sink; v != source;) {
      int s = parent_slot[v];
      g.cap[s] -= push;
      g.cap[s ^ 1] += push;
      v = g.to[s ^ 1];
    }
    value += push;
  }
  FlowResult r = g.extract(edges);
  r.value = value;
  r.cost = 0;
  for (std::size_t i = 0; i < edges.size(); ++i)
    r.cost += static_cast<long long>(r.units[i]) * edges[i].cost;
  return r;
}

/// Successive shortest augmenting paths with node potentials (Dijkstra on
/// reduced costs; all input costs must be nonnegative). Returns a flow that
/// is maximum in value and minimum in cost among maximum flows.
template <typename Edge>
FlowResult min_cost_max_flow(int node_count, const std::vector<Edge>& edges,
                             int source, int sink) {
  for (const auto& e : edges)
    if (e.cost < 0)
      throw std::invalid_argument("min_cost_max_flow: negative edge cost");
  detail::Residual g(node_count, edges);
  const long long INF = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> pot(node_count, 0), dist(node_count);
  std::vector<int> parent_slot(node_count);
  long long value = 0;
  for (;;) {
    std::fill(dist.begin(), dist.end(), INF);
    std::fill(parent_slot.begin(), parent_slot.end(), -1);
    dist[source] = 0;
    using Item = std::pair<long long, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0, source});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      for (int i = g.head[u]; i < g.head[u + 1]; ++i) {
        int s = g.slot[i];
        if (g.cap[s] <= 0) continue;
        int w = g.to[s];
        long long nd = d + g.cost[s] + pot[u] - pot[w];
        if (nd < dist[w]) {
          dist[w] = nd;
          parent_slot[w] = s;
          pq.push({nd, w});
        }
      }
    }
    if (dist[sink] >= INF) break;
    for (int v = 0; v < node_count; ++v)
      if (dist[v] < INF) pot[v] += dist[v];
    int push = std::numeric_limits<int>::max();
    for (int v = sink; v != source;) {
      int s = parent_slot[v];
      push = std::min(push, g.cap[s]);
      v = g.to[s ^ 1];
    }
    for (int v = sink; v != source;) {
      int s = parent_slot[v];
      g.cap[s] -= push;
      g.cap[s ^ 1] += push;
      v = g.to[s ^ 1];
    }
    value += push;
  }
  FlowResult r = g.extract(edges);
  r.value = value;
  return r;
}

/// Verifies Eqs 1-3: capacities, conservation at non-terminals, and matching
/// terminal balance. Returns one message per violated constraint.
template <typename Edge>
std::vector<std::string> check_flow(int node_count,
                                    const std::vector<Edge>& edges, int source,
                                    int sink, const FlowResult& flow) {
  std::vector<std::string> report;
  if (flow.units.size() != edges.size()) {
    report.push_back("flow/edge count mismatch");
    return report;
  }
  std::vector<long long> net(node_count, 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    int f = flow.units[i];
    if (f < 0)
      report.push_back("edge " + std::to_string(i) + ": negative flow");
    if (f > edges[i].capacity)
      report.push_back("edge " + std::to_string(i) + ": capacity exceeded");
    net[edges[i].from] -= f;
    net[edges[i].to] += f;
  }
  for (int v = 0; v < node_count; ++v)
    if (v != source && v != sink && net[v] != 0)
      report.push_back("node " + std::to_string(v) +
                       ": conservation violated");
  if (-net[source] != net[sink])
    report.push_back("terminal balance mismatch");
  if (-net[source] != flow.value)
    report.push_back("stated value differs from source outflow");
  return report;
}

/// Splits an integral flow on an acyclic network into `value` unit
/// source-to-sink node paths. Edge usage summed over the paths reproduces
/// the input flow exactly.
template <typename Edge>
std::vector<std::vector<int>> decompose(int node_count,
                                        const std::vector<Edge>& edges,
                                        int source, int sink,
                                        const FlowResult& flow) {
  std::vector<int> remaining = flow.units;
  std::vector<std::vector<int>> out(node_count);  // edge ids, insertion order
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (remaining[i] > 0) out[edges[i].from].push_back(static_cast<int>(i));
  std::vector<std::size_t> cursor(node_count, 0);

  std::vector<std::vector<int>> paths;
  const std::size_t step_cap = edges.size() + 1;
  for (long long k = 0; k < flow.value; ++k) {
    std::vector<int> path{source};
    int u = source;
    std::size_t steps = 0;
    while (u != sink) {
      if (++steps > step_cap)
        throw std::invalid_argument("decompose: cyclic flow support");
      auto& lst = out[u];
      auto& c = cursor[u];
      while (c < lst.size() && remaining[lst[c]] == 0) ++c;
      if (c >= lst.size())
        throw std::invalid_argument("decompose: stranded flow at node " +
                                    std::to_string(u));
      int e = lst[c];
      --remaining[e];
      u = edges[e].to;
      path.push_back(u);
    }
    paths.push_back(std::move(path));
  }
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (remaining[i] != 0)
      throw std::invalid_argument("decompose: non-path flow residue");
  return paths;
}

}  // namespace mapflow

#endif  // MAPFLOW_FLOW_HPP
