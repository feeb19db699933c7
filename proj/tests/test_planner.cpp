#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mapflow/planner.hpp"
#include "test_support.hpp"

using namespace mapflow;

namespace {

Instance path_instance(int length, std::vector<Vertex> starts,
                       std::vector<Vertex> goals,
                       Mode mode = Mode::unlabeled) {
  Instance inst;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int v = 0; v + 1 < length; ++v) edges.push_back({v, v + 1});
  inst.graph = Graph::from_edges(length, std::move(edges));
  inst.starts = std::move(starts);
  inst.goals = std::move(goals);
  inst.mode = mode;
  return inst;
}

}  // namespace

TEST_CASE("horizon_bound is n + ell - 1") {
  CHECK(horizon_bound(testing::two_star(2, 3)) == 4);
  CHECK(horizon_bound(path_instance(2, {0}, {1})) == 1);  // n=1, ell=1
  CHECK(horizon_bound(path_instance(4, {0, 1}, {2, 3})) == 4);  // ell = 3
}

TEST_CASE("theorem22_bound formula") {
  CHECK(theorem22_bound(1, 5) == 5);
  CHECK(theorem22_bound(4, 9) == 12);
  CHECK(theorem22_bound(2, 2) == 2);
}

TEST_CASE("makespan_lower_bound covers both matching directions") {
  // one start far from every goal
  auto inst = path_instance(5, {0, 1}, {3, 4});
  CHECK(makespan_lower_bound(inst) == 3);  // start 0 to nearest goal 3
}

TEST_CASE("min_distance_assignment on trivial and two-star instances") {
  auto single = path_instance(3, {0}, {2});
  auto a = min_distance_assignment(single);
  CHECK(a.total == 2);
  CHECK(a.goal_of_start == std::vector<int>{0});
  CHECK(min_distance_assignment(testing::two_star(2, 3)).total == 6);
  CHECK(min_distance_assignment(testing::two_star(4, 5)).total == 20);
}

TEST_CASE("min_distance_assignment matches factorial enumeration") {
  std::mt19937 rng(23);
  for (int it = 0; it < 50; ++it) {
    int n = 1 + static_cast<int>(rng() % 6);
    auto inst = testing::random_grid_instance(rng, 4, 5, 0.15, n);
    auto a = min_distance_assignment(inst);
    CHECK(a.total == testing::brute_force_assignment(inst));
    // matching is a permutation
    std::set<int> goals(a.goal_of_start.begin(), a.goal_of_start.end());
    CHECK(goals.size() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("solve_feasible on a path is the shortest path") {
  auto r = solve_feasible(path_instance(3, {0}, {2}));
  REQUIRE(r.has_value());
  CHECK(r->plan.paths[0].vertices == std::vector<Vertex>{0, 1, 2});
  CHECK(r->plan.makespan() == 2);
}

TEST_CASE("solve_feasible on the two-star family stays within the bound") {
  auto inst = testing::two_star(2, 3);
  auto r = solve_feasible(inst);
  REQUIRE(r.has_value());
  CHECK(validate_plan(inst, r->plan).valid);
  CHECK(r->plan.makespan() <= 4);
}

TEST_CASE("solve_feasible random corpus stays valid and bounded") {
  std::mt19937 rng(31);
  for (int it = 0; it < 25; ++it) {
    auto inst = testing::random_grid_instance(rng, 5, 5, 0.2,
                                              1 + static_cast<int>(rng() % 4));
    auto r = solve_feasible(inst);
    REQUIRE(r.has_value());
    CHECK(validate_plan(inst, r->plan).valid);
    CHECK(r->plan.makespan() <= horizon_bound(inst));
  }
}

TEST_CASE("feasibility probe below the two-star bound comes back empty") {
  auto inst = testing::two_star(2, 3);
  CHECK(!solve_feasible(inst, horizon_bound(inst) - 1).has_value());
  CHECK(solve_feasible(inst, horizon_bound(inst)).has_value());
}

TEST_CASE("solve_min_makespan hits the two-star necessity bound") {
  for (int n : {2, 3}) {
    for (int ell : {3, 4}) {
      auto inst = testing::two_star(n, ell);
      auto r = solve_min_makespan(inst);
      REQUIRE(r.has_value());
      CHECK(r->objective_value == n + ell - 1);
      CHECK(validate_plan(inst, r->plan).valid);
      // direct flow probe one step below
      CHECK(max_flow(build_ten(inst, n + ell - 2)).value < n);
    }
  }
}

TEST_CASE("solve_min_makespan meets the distance lower bound on a path") {
  auto r = solve_min_makespan(path_instance(3, {0}, {2}));
  REQUIRE(r.has_value());
  CHECK(r->objective_value == 2);
  CHECK(r->certificate == 2);
}

TEST_CASE("solve_min_makespan respects a horizon cap") {
  auto inst = testing::two_star(2, 3);
  CHECK(!solve_min_makespan(inst, 3).has_value());
  auto r = solve_min_makespan(inst, 4);
  REQUIRE(r.has_value());
  CHECK(r->objective_value == 4);
}

TEST_CASE("solve_min_total_distance on two-star and a single path") {
  auto inst = testing::two_star(2, 3);
  auto r = solve_min_total_distance(inst);
  CHECK(r.objective_value == 6);
  CHECK(r.certificate == 6);
  CHECK(validate_plan(inst, r.plan).valid);

  auto single = solve_min_total_distance(path_instance(5, {0}, {4}));
  CHECK(single.objective_value == 4);
}

TEST_CASE("distance objective equals the assignment certificate on a corpus") {
  std::mt19937 rng(37);
  for (int it = 0; it < 20; ++it) {
    auto inst = testing::random_grid_instance(rng, 5, 5, 0.2,
                                              1 + static_cast<int>(rng() % 4));
    auto r = solve_min_total_distance(inst);
    CHECK(r.objective_value == *r.certificate);
    CHECK(r.plan.total_distance() == r.objective_value);
    CHECK(validate_plan(inst, r.plan).valid);
  }
}

TEST_CASE("planners reject unsupported modes") {
  auto inst = path_instance(3, {0}, {2}, Mode::labeled);
  CHECK_THROWS_AS(solve_feasible(inst), std::invalid_argument);
  auto gr = path_instance(4, {0, 1}, {3}, Mode::goal_replacement);
  CHECK_THROWS_AS(solve_min_makespan(gr), std::invalid_argument);
  CHECK_THROWS_AS(solve_min_total_distance(gr), std::invalid_argument);
  CHECK_THROWS_AS(build_dag_schedule(gr), std::invalid_argument);
  CHECK_THROWS_AS(solve_earliest_arrival(path_instance(3, {0}, {2})),
                  std::invalid_argument);
}

TEST_CASE("build_dag_schedule single agent is the shortest path, no delay") {
  auto inst = path_instance(4, {0}, {3});
  auto r = build_dag_schedule(inst);
  CHECK(r.plan.paths[0].vertices == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(r.total_distance() == 3);
  CHECK(r.standalone_counts == std::vector<int>{1});
}

TEST_CASE("build_dag_schedule on the two-star necessity instance") {
  auto inst = testing::two_star(2, 3);
  auto r = build_dag_schedule(inst);
  CHECK(validate_plan(inst, r.plan).valid);
  CHECK(r.total_distance() == 6);
  CHECK(r.makespan() == 4);
  CHECK(!r.q.has_bidirectional_edge());
  CHECK(r.q.orientation_acyclic(inst.graph.vertex_count));
}

TEST_CASE("build_dag_schedule random corpus keeps every Section IV property") {
  std::mt19937 rng(41);
  for (int it = 0; it < 30; ++it) {
    auto inst = testing::random_grid_instance(rng, 5, 5, 0.2,
                                              1 + static_cast<int>(rng() % 4));
    auto r = build_dag_schedule(inst);
    CHECK(validate_plan(inst, r.plan).valid);
    CHECK(r.total_distance() == r.assignment_lower_bound);
    CHECK(r.makespan() <= horizon_bound(inst));
    CHECK(!r.q.has_bidirectional_edge());
    CHECK(r.q.orientation_acyclic(inst.graph.vertex_count));
    for (int c : r.standalone_counts) CHECK(c >= 1);
    // heads are distinct starts, tails distinct goals, paths shortest
    std::set<Vertex> heads, tails;
    for (const auto& q : r.q.paths) {
      heads.insert(head(q));
      tails.insert(tail(q));
      CHECK(len(q) == distances_from(inst.graph, head(q))[tail(q)]);
    }
    CHECK(heads == std::set<Vertex>(inst.starts.begin(), inst.starts.end()));
    CHECK(tails == std::set<Vertex>(inst.goals.begin(), inst.goals.end()));
  }
}

TEST_CASE("solve_earliest_arrival single agent adjacent to its goal") {
  auto inst = path_instance(2, {0}, {1}, Mode::goal_replacement);
  auto r = solve_earliest_arrival(inst);
  CHECK(r.total_arrival == 1);
  CHECK(r.makespan == 1);
  CHECK(r.histogram[1] == 1);
}

TEST_CASE("solve_earliest_arrival two agents into one shared goal") {
  // path 0-1-2: agents at 1 and 0, goal at 2 (distances 1 and 2)
  auto inst = path_instance(3, {1, 0}, {2}, Mode::goal_replacement);
  auto r = solve_earliest_arrival(inst);
  CHECK(r.total_arrival == 3);
  CHECK(r.makespan == 2);
  CHECK(r.histogram[1] == 1);
  CHECK(r.histogram[2] == 1);
  CHECK(validate_plan(inst, r.plan).valid);
}

TEST_CASE("solve_feasible handles goal replacement mode") {
  auto inst = path_instance(5, {0, 1, 2}, {4}, Mode::goal_replacement);
  auto r = solve_feasible(inst);
  REQUIRE(r.has_value());
  CHECK(validate_plan(inst, r->plan).valid);
}

TEST_CASE("default_boundary is every vertex of degree < 4") {
  auto m = testing::make_grid(3, 3, {"...", "...", "..."});
  auto b = default_boundary(m.graph);
  CHECK(b.size() == 8);  // all but the center
  for (Vertex v : b) CHECK(v != m.cell_to_vertex[4]);
}

TEST_CASE("escape: single central evader walks straight out") {
  auto m = testing::make_grid(3, 3, {"...", "...", "..."});
  auto r = solve_escape(m.graph, {m.cell_to_vertex[4]});
  REQUIRE(r.feasible);
  REQUIRE(r.paths.size() == 1);
  CHECK(r.paths[0].size() == 2);  // center plus one boundary neighbor
}

TEST_CASE("escape: nine evaders on a 3x3 grid cannot all leave") {
  auto m = testing::make_grid(3, 3, {"...", "...", "..."});
  std::vector<Vertex> evaders;
  for (int v = 0; v < 9; ++v) evaders.push_back(v);
  CHECK(!solve_escape(m.graph, evaders).feasible);
}

TEST_CASE("escape paths are vertex-disjoint and end on the boundary") {
  auto m = testing::make_grid(4, 4, {"....", "....", "....", "...."});
  std::vector<Vertex> evaders = {m.cell_to_vertex[5], m.cell_to_vertex[6],
                                 m.cell_to_vertex[9], m.cell_to_vertex[10]};
  auto r = solve_escape(m.graph, evaders);
  REQUIRE(r.feasible);
  auto boundary = default_boundary(m.graph);
  std::set<Vertex> bset(boundary.begin(), boundary.end());
  std::set<Vertex> used;
  for (std::size_t i = 0; i < r.paths.size(); ++i) {
    const auto& p = r.paths[i];
    CHECK(bset.count(p.back()));
    for (Vertex v : p) {
      CHECK(!used.count(v));
      used.insert(v);
    }
    for (std::size_t t = 0; t + 1 < p.size(); ++t)
      CHECK(m.graph.has_edge(p[t], p[t + 1]));
  }
  // one path per evader, starting at the evaders
  std::set<Vertex> path_starts;
  for (const auto& p : r.paths) path_starts.insert(p.front());
  CHECK(path_starts == std::set<Vertex>(evaders.begin(), evaders.end()));
}

TEST_CASE("escape rejects invalid evaders") {
  auto m = testing::make_grid(3, 3, {"...", "...", "..."});
  CHECK_THROWS_AS(solve_escape(m.graph, {42}), std::invalid_argument);
  CHECK_THROWS_AS(solve_escape(m.graph, {0, 0}), std::invalid_argument);
}
