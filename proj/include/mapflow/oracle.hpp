#ifndef MAPFLOW_ORACLE_HPP
#define MAPFLOW_ORACLE_HPP

#include <functional>
#include <unordered_map>

#include "mapflow/planner.hpp"

namespace mapflow::oracle {

struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Joint-state-space guard: C(V, n) canonical states, plus a work estimate
/// (states times joint branching) so a permitted instance is also cheap.
inline void check_guard(const Instance& inst) {
  const int V = inst.graph.vertex_count;
  const int n = inst.agent_count();
  double states = 1;
  for (int k = 0; k < n; ++k) states = states * (V - k) / (k + 1);
  if (states > 1e6)
    throw GuardError("oracle guard exceeded: C(V, n) > 1e6");
  std::size_t max_deg = 0;
  for (const auto& nbrs : inst.graph.adjacency)
    max_deg = std::max(max_deg, nbrs.size());
  double branch = 1;
  for (int k = 0; k < n; ++k) branch *= static_cast<double>(max_deg + 1);
  if (states * branch > 2e6)
    throw GuardError("oracle guard exceeded: joint branching too large");
}

namespace detail {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b9;
      h *= 1099511628211ull;
    }
    return h;
  }
};

/// Enumerates all simultaneous move/wait choices for the sorted positions
/// `pos`: targets pairwise distinct (no meet), no swap along an edge (no
/// head-on), targets never in `blocked`. Vertices in `absorbing` may be
/// targeted by several agents at once (they leave the board on arrival, as
/// with relaxed-capacity goals).
template <typename Fn>
void enumerate_moves(const Graph& g, const std::vector<int>& pos,
                     const std::set<int>& blocked,
                     const std::set<int>& absorbing, Fn&& fn) {
  const int n = static_cast<int>(pos.size());
  std::vector<int> target(n);
  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      fn(target);
      return;
    }
    auto try_target = [&](int t) {
      if (blocked.count(t)) return;
      if (!absorbing.count(t)) {
        for (int j = 0; j < k; ++j)
          if (target[j] == t) return;  // meet
      }
      for (int j = 0; j < k; ++j)
        if (target[j] == pos[k] && t == pos[j] && pos[k] != t)
          return;  // head-on swap
      target[k] = t;
      rec(k + 1);
    };
    try_target(pos[k]);
    for (int w : g.adjacency[pos[k]]) try_target(w);
  };
  rec(0);
}

template <typename Fn>
void enumerate_moves(const Graph& g, const std::vector<int>& pos,
                     const std::set<int>& blocked, Fn&& fn) {
  enumerate_moves(g, pos, blocked, {}, std::forward<Fn>(fn));
}

struct Step {
  std::vector<std::pair<int, int>> moves;  // (from, to) per active agent
  std::vector<int> settled;                // positions settled after the move
};

/// Replays a recorded execution into a labeled Plan padded to a common
/// horizon; settled agents hold their position from the settling step on.
inline Plan replay(const Instance& inst, const std::vector<Step>& steps) {
  const int n = inst.agent_count();
  Plan plan;
  plan.paths.resize(n);
  std::vector<int> pos = inst.starts;
  std::vector<char> done(n, 0);
  for (int i = 0; i < n; ++i) plan.paths[i].vertices.push_back(pos[i]);
  for (const auto& step : steps) {
    for (int i = 0; i < n; ++i) {
      if (!done[i]) {
        for (const auto& [from, to] : step.moves)
          if (from == pos[i]) {
            pos[i] = to;
            break;
          }
      }
      plan.paths[i].vertices.push_back(pos[i]);
    }
    for (int i = 0; i < n; ++i)
      if (!done[i] &&
          std::find(step.settled.begin(), step.settled.end(), pos[i]) !=
              step.settled.end())
        done[i] = 1;
  }
  return plan;
}

using Key = std::vector<int>;

inline Key make_key(std::vector<int> active, std::vector<int> parked) {
  std::sort(active.begin(), active.end());
  std::sort(parked.begin(), parked.end());
  Key k = std::move(active);
  k.push_back(-1);
  k.insert(k.end(), parked.begin(), parked.end());
  return k;
}

inline void split_key(const Key& k, std::vector<int>& active,
                      std::vector<int>& parked) {
  auto sep = std::find(k.begin(), k.end(), -1);
  active.assign(k.begin(), sep);
  parked.assign(sep + 1, k.end());
}

struct Parent {
  Key prev;
  Step step;
};

inline std::vector<Step> backtrack(
    const std::unordered_map<Key, Parent, VecHash>& parent, Key key,
    const Key& initial) {
  std::vector<Step> steps;
  while (key != initial) {
    const Parent& p = parent.at(key);
    steps.push_back(p.step);
    key = p.prev;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

}  // namespace detail

struct Optimum {
  long long value = 0;
  Plan witness;
};

/// Breadth-first search over canonical joint states (sorted position sets).
/// Returns the minimum makespan and a witness, or nullopt if the goal set is
/// not reached within `depth_cap` steps (default: the Theorem 17 horizon).
inline std::optional<Optimum> oracle_min_makespan(const Instance& inst,
                                                  int depth_cap = -1) {
  check_guard(inst);
  if (depth_cap < 0) depth_cap = horizon_bound(inst);
  using detail::Key;
  Key start = detail::make_key(inst.starts, {});
  Key goal = detail::make_key(inst.goals, {});
  if (start == goal) return Optimum{0, detail::replay(inst, {})};

  std::unordered_map<Key, detail::Parent, detail::VecHash> parent;
  std::vector<Key> frontier{start};
  std::set<Key> seen{start};
  std::set<int> no_block;
  for (int depth = 1; depth <= depth_cap; ++depth) {
    std::vector<Key> next;
    for (const Key& key : frontier) {
      std::vector<int> active(key.begin(), key.end() - 1);
      bool found = false;
      detail::enumerate_moves(inst.graph, active, no_block,
                              [&](const std::vector<int>& target) {
        if (found) return;
        Key nk = detail::make_key(target, {});
        if (seen.count(nk)) return;
        seen.insert(nk);
        detail::Step step;
        for (std::size_t i = 0; i < active.size(); ++i)
          step.moves.push_back({active[i], target[i]});
        parent[nk] = {key, step};
        if (nk == goal) found = true;
        next.push_back(std::move(nk));
      });
      if (found) {
        auto steps = detail::backtrack(parent, goal, start);
        Plan witness = detail::replay(inst, steps);
        return Optimum{depth, std::move(witness)};
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return std::nullopt;
}

struct BiOptimum {
  long long primary = 0;
  long long secondary = 0;
  Plan witness;
};

namespace detail {

/// Dijkstra over joint states with per-step cost w_primary * primary-unit +
/// w_secondary * secondary-unit; used to read off Pareto endpoints
/// (lexicographic optima) of the makespan/distance/arrival objectives.
enum class StepCost { movers, steps, active_agents };

inline long long unit_cost(StepCost c, int movers, int active) {
  switch (c) {
    case StepCost::movers: return movers;
    case StepCost::steps: return 1;
    case StepCost::active_agents: return active;
  }
  return 0;
}

struct LexSearchResult {
  long long primary_units = 0;
  long long secondary_units = 0;
  Plan witness;
};

constexpr long long kBig = 1'000'000;

/// parked=true switches to the arrival model: agents may settle on free
/// goals (goal_replacement vanishing when vanish_all is set) and settled
/// agents stop moving and stop costing.
inline LexSearchResult lex_search(const Instance& inst, StepCost primary,
                                  StepCost secondary, bool arrival_model) {
  using detail::Key;
  const bool gr = inst.mode == Mode::goal_replacement;
  std::set<int> goal_set(inst.goals.begin(), inst.goals.end());
  Key start = detail::make_key(inst.starts, {});
  auto is_final = [&](const Key& key) {
    std::vector<int> active, parked;
    detail::split_key(key, active, parked);
    if (arrival_model) return active.empty();
    std::vector<int> goals_sorted(inst.goals.begin(), inst.goals.end());
    std::sort(goals_sorted.begin(), goals_sorted.end());
    return active == goals_sorted;
  };

  std::unordered_map<Key, long long, detail::VecHash> dist;
  std::unordered_map<Key, Parent, detail::VecHash> parent;
  using Item = std::pair<long long, Key>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[start] = 0;
  pq.push({0, start});
  while (!pq.empty()) {
    auto [d, key] = pq.top();
    pq.pop();
    if (d > dist[key]) continue;
    if (is_final(key)) {
      auto steps = detail::backtrack(parent, key, start);
      LexSearchResult r;
      r.witness = detail::replay(inst, steps);
      long long total = d;
      r.secondary_units = total % kBig;
      r.primary_units = total / kBig;
      return r;
    }
    std::vector<int> active, parked;
    detail::split_key(key, active, parked);
    std::set<int> blocked(parked.begin(), parked.end());
    const int n_active = static_cast<int>(active.size());
    // relaxed goal capacities: several agents may vanish into one goal at once
    const std::set<int> absorbing =
        (gr && arrival_model) ? goal_set : std::set<int>{};
    detail::enumerate_moves(inst.graph, active, blocked, absorbing,
                            [&](const std::vector<int>& target) {
      int movers = 0;
      for (int i = 0; i < n_active; ++i)
        if (target[i] != active[i]) ++movers;
      long long step_cost =
          kBig * unit_cost(primary, movers, n_active) +
          unit_cost(secondary, movers, n_active);
      // settlement choices
      std::vector<int> eligible;
      if (arrival_model)
        for (int t : target)
          if (goal_set.count(t) && (gr || !blocked.count(t)))
            eligible.push_back(t);
      auto relax = [&](const std::vector<int>& settle) {
        std::vector<int> nactive, nparked = parked;
        for (int t : target) {
          if (std::find(settle.begin(), settle.end(), t) != settle.end()) {
            if (!gr) nparked.push_back(t);  // vanished agents leave the key
          } else {
            nactive.push_back(t);
          }
        }
        Key nk = detail::make_key(nactive, nparked);
        long long nd = d + step_cost;
        auto it = dist.find(nk);
        if (it == dist.end() || nd < it->second) {
          dist[nk] = nd;
          detail::Step step;
          for (int i = 0; i < n_active; ++i)
            step.moves.push_back({active[i], target[i]});
          step.settled = settle;
          parent[nk] = {key, step};
          pq.push({nd, nk});
        }
      };
      if (!arrival_model) {
        relax({});
      } else if (gr) {
        relax(eligible);  // vanishing immediately always dominates
      } else {
        // enumerate settlement subsets
        const int m = static_cast<int>(eligible.size());
        for (int mask = 0; mask < (1 << m); ++mask) {
          std::vector<int> settle;
          for (int b = 0; b < m; ++b)
            if (mask & (1 << b)) settle.push_back(eligible[b]);
          relax(settle);
        }
      }
    });
  }
  throw std::logic_error("oracle lex_search: no solution found");
}

}  // namespace detail

/// Exact minimum total distance; secondary reports the smallest makespan
/// attainable by a distance-optimal plan.
inline BiOptimum oracle_min_total_distance(const Instance& inst) {
  check_guard(inst);
  auto r = detail::lex_search(inst, detail::StepCost::movers,
                              detail::StepCost::steps, false);
  return {r.primary_units, r.secondary_units, std::move(r.witness)};
}

/// Minimum makespan with the smallest total distance among makespan-optimal
/// plans (primary = makespan, secondary = distance).
inline BiOptimum oracle_distance_at_min_makespan(const Instance& inst) {
  check_guard(inst);
  auto r = detail::lex_search(inst, detail::StepCost::steps,
                              detail::StepCost::movers, false);
  return {r.primary_units, r.secondary_units, std::move(r.witness)};
}

/// Exact minimum total arrival time; secondary reports the smallest
/// makespan attainable by an arrival-optimal plan.
inline BiOptimum oracle_min_total_arrival(const Instance& inst) {
  check_guard(inst);
  auto r = detail::lex_search(inst, detail::StepCost::active_agents,
                              detail::StepCost::steps, true);
  return {r.primary_units, r.secondary_units, std::move(r.witness)};
}

/// Minimum makespan with the smallest total arrival among makespan-optimal
/// plans (primary = makespan, secondary = arrival).
inline BiOptimum oracle_arrival_at_min_makespan(const Instance& inst) {
  check_guard(inst);
  auto r = detail::lex_search(inst, detail::StepCost::steps,
                              detail::StepCost::active_agents, true);
  return {r.primary_units, r.secondary_units, std::move(r.witness)};
}

struct GoalReplacementOptimum {
  std::vector<int> histogram;     // arrivals per step, lexicographically max
  long long min_total_arrival = 0;
  int min_makespan = 0;
  Plan lex_witness;
};

/// Exhaustive goal-replacement baseline: lexicographically maximal arrival
/// histogram via a frontier-set layered search (agents vanish into goals),
/// plus independently computed minimum total arrival and minimum makespan.
inline GoalReplacementOptimum oracle_goal_replacement(const Instance& inst) {
  check_guard(inst);
  if (inst.mode != Mode::goal_replacement)
    throw std::invalid_argument(
        "oracle_goal_replacement: instance mode must be goal_replacement");
  using detail::Key;
  const int n = inst.agent_count();
  std::set<int> goal_set(inst.goals.begin(), inst.goals.end());
  std::set<int> no_block;

  GoalReplacementOptimum result;
  Key start = detail::make_key(inst.starts, {});
  // per-layer parents: a state can recur across layers with different
  // predecessors, so the reconstruction must walk depth by depth
  std::vector<std::map<Key, detail::Parent>> layer_parent{{}};
  std::set<Key> frontier{start};
  int vanished = 0;
  const int depth_cap = horizon_bound(inst) + n + 1;
  result.histogram.assign(1, 0);  // t = 0: starts are never goals
  for (int depth = 1; vanished < n; ++depth) {
    if (depth > depth_cap)
      throw std::logic_error("oracle_goal_replacement: horizon cap exceeded");
    int best = -1;
    std::map<Key, detail::Parent> candidates;
    for (const Key& key : frontier) {
      std::vector<int> active(key.begin(), key.end() - 1);
      detail::enumerate_moves(inst.graph, active, no_block, goal_set,
                              [&](const std::vector<int>& target) {
        std::vector<int> remaining, settled;
        for (int t : target)
          (goal_set.count(t) ? settled : remaining).push_back(t);
        int arrivals = static_cast<int>(settled.size());
        if (arrivals < best) return;
        Key nk = detail::make_key(remaining, {});
        if (arrivals > best) {
          best = arrivals;
          candidates.clear();
        }
        if (!candidates.count(nk)) {
          detail::Step step;
          for (std::size_t i = 0; i < active.size(); ++i)
            step.moves.push_back({active[i], target[i]});
          step.settled = settled;
          candidates[nk] = {key, step};
        }
      });
    }
    result.histogram.push_back(best);
    vanished += best;
    frontier.clear();
    for (auto& [nk, par] : candidates) frontier.insert(nk);
    layer_parent.push_back(std::move(candidates));
  }
  std::vector<detail::Step> steps;
  Key cur = detail::make_key({}, {});
  for (int depth = static_cast<int>(layer_parent.size()) - 1; depth >= 1;
       --depth) {
    const detail::Parent& p = layer_parent[depth].at(cur);
    steps.push_back(p.step);
    cur = p.prev;
  }
  std::reverse(steps.begin(), steps.end());
  result.lex_witness = detail::replay(inst, steps);

  auto arrival = detail::lex_search(inst, detail::StepCost::active_agents,
                                    detail::StepCost::steps, true);
  result.min_total_arrival = arrival.primary_units;
  auto makespan = detail::lex_search(inst, detail::StepCost::steps,
                                     detail::StepCost::active_agents, true);
  result.min_makespan = static_cast<int>(makespan.primary_units);
  return result;
}

/// Backtracking enumeration of vertex-disjoint evader-to-boundary path
/// systems (paths to distinct boundary vertices).
inline bool oracle_escape(const Graph& grid, const std::vector<Vertex>& evaders,
                          const std::vector<Vertex>* boundary = nullptr) {
  if (grid.vertex_count > 16 ||
      evaders.size() > static_cast<std::size_t>(grid.vertex_count))
    throw GuardError("oracle_escape guard exceeded");
  std::vector<Vertex> bound =
      boundary ? *boundary : default_boundary(grid);
  std::set<Vertex> boundary_set(bound.begin(), bound.end());
  std::vector<char> used(grid.vertex_count, 0);

  std::function<bool(std::size_t)> place = [&](std::size_t k) -> bool {
    if (k == evaders.size()) return true;
    Vertex src = evaders[k];
    if (used[src]) return false;
    std::function<bool(Vertex)> extend = [&](Vertex v) -> bool {
      used[v] = 1;
      if (boundary_set.count(v) && place(k + 1)) return true;
      for (Vertex w : grid.adjacency[v])
        if (!used[w] && extend(w)) return true;
      used[v] = 0;
      return false;
    };
    return extend(src);
  };
  return place(0);
}

}  // namespace mapflow::oracle

#endif  // MAPFLOW_ORACLE_HPP
