#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "patrol/adversaries.hpp"
#include "patrol/fsm.hpp"
#include "patrol/solver.hpp"

using namespace patrol;

TEST_CASE("fixed edge schedule") {
  const auto s = fixed_edge_schedule(7, 3);
  for (Round r : {0, 1, 50, 1000}) CHECK(s.missing(r) == 3);
  CHECK(validate_schedule(s, 1000).ok);
}

TEST_CASE("wave schedule for n = 10") {
  const auto s = wave_schedule(10);
  CHECK(s.period() == 16);
  CHECK(s.missing(0) == 1);
  CHECK(s.missing(1) == 9);
  CHECK(s.missing(2) == 2);
  CHECK(s.missing(3) == 8);
  CHECK(s.missing(14) == s.missing(0 + 14));
  CHECK(s.missing(16) == s.missing(0));
  CHECK(validate_schedule(s, 1000).ok);
  // Every round removes exactly one edge.
  for (Round r = 0; r < 16; ++r) CHECK(s.missing_all(r).size() == 1);
}

TEST_CASE("random schedule is reproducible and valid") {
  const auto a = random_schedule(9, 500, 42);
  const auto b = random_schedule(9, 500, 42);
  CHECK(a.entries() == b.entries());
  CHECK(validate_schedule(a, 500).ok);
  std::set<Edge> seen;
  for (const auto& [r, e] : a.entries()) seen.insert(e);
  CHECK(seen.size() == 9);
  CHECK(a.entries().size() < 500);
}

TEST_CASE("trap adversary keeps the target on two nodes") {
  for (const char* name : {"clockwise", "reverse-on-block", "oscillator", "pingpong"}) {
    const auto p = make_protocol(name);
    const int k = std::string(name) == "pingpong" ? 2 : 1;
    TrapAdversary trap(0);
    const auto tr = run(*p, trap, 8, uniform_configuration(8, k), 100);
    std::set<Node> at{tr.initial.positions[0]};
    for (const auto& r : tr.records) at.insert(r.after.positions[0]);
    CHECK(at.size() <= 2);
  }
}

TEST_CASE("gate adversary: pingpong never crosses the guarded segment") {
  for (int n : {6, 8, 10}) {
    const auto p = make_protocol("pingpong");
    GateAdversary gate(n);
    const auto tr = run(*p, gate, n, uniform_configuration(n, 2), 20 * n);
    CHECK(gate.winning());
    std::vector<int> mon;
    for (Node v : tr.initial.positions) mon.push_back(initial_segment_monitor(n, gate.frame(v)));
    for (const auto& r : tr.records)
      for (std::size_t i = 0; i < 2; ++i) {
        mon[i] = update_segment_monitor(n, mon[i], gate.frame(r.before.positions[i]),
                                        gate.frame(r.after.positions[i]));
        CHECK(mon[i] >= 0);
      }
    CHECK(idle_time(tr, 2 * n).idle >= 2 * n - 6);
  }
}

TEST_CASE("solver: pingpong worst case is 2n - 3") {
  const auto p = make_protocol("pingpong");
  for (int n : {6, 8, 10}) {
    const auto res = solve_worst_case(*p, n, uniform_configuration(n, 2));
    REQUIRE(res.worst_idle.has_value());
    CHECK(*res.worst_idle == 2 * n - 3);
    CHECK(replay_witness(*p, n, uniform_configuration(n, 2), res).ok);
  }
}

TEST_CASE("solver agrees with value iteration") {
  for (const char* name : {"pingpong", "kpingpong", "reverse-on-block", "oscillator", "clockwise",
                           "consecutive-sweep"}) {
    const auto p = make_protocol(name);
    const int k = std::string(name) == "kpingpong" ? 3 : 2;
    for (int n : {6, 7}) {
      const auto init = uniform_configuration(n, k);
      const auto res = solve_worst_case(*p, n, init);
      const auto ref = oracle::worst_gaps_by_iteration(*p, n, init);
      REQUIRE(res.per_node.size() == ref.size());
      for (std::size_t v = 0; v < ref.size(); ++v) CHECK(res.per_node[v] == ref[v]);
      CHECK(replay_witness(*p, n, init, res).ok);
    }
  }
}

TEST_CASE("solver: fewer scheduler options never raise the worst case") {
  const auto p = make_protocol("pingpong");
  const int n = 8;
  const auto init = uniform_configuration(n, 2);
  const auto all = solve_worst_case(*p, n, init);
  const auto stat = solve_worst_case(*p, n, init, {std::vector<std::optional<Edge>>{std::nullopt}, default_state_budget()});
  REQUIRE(stat.worst_idle.has_value());
  CHECK(*stat.worst_idle == n / 2);
  CHECK(*stat.worst_idle <= *all.worst_idle);
  for (Edge e = 0; e < n; ++e) {
    const auto one = solve_worst_case(*p, n, init, {std::vector<std::optional<Edge>>{std::nullopt, e}, default_state_budget()});
    REQUIRE(one.worst_idle.has_value());
    CHECK(*one.worst_idle <= *all.worst_idle);
  }
}

TEST_CASE("solver: unbounded results carry a lasso") {
  const auto p = make_protocol("clockwise");
  const auto res = solve_worst_case(*p, 6, Configuration{{0}});
  CHECK_FALSE(res.worst_idle.has_value());
  REQUIRE(res.lasso_start.has_value());
  CHECK(*res.lasso_start < res.witness.size());
  CHECK(replay_witness(*p, 6, Configuration{{0}}, res).ok);
}

TEST_CASE("solver: budget is enforced") {
  const auto p = make_protocol("pingpong");
  CHECK_THROWS_AS(solve_worst_case(*p, 10, uniform_configuration(10, 2), {std::nullopt, 5}), BudgetError);
}

TEST_CASE("offline search agrees with breadth-first search over visited sets") {
  for (int n : {5, 6, 7}) {
    for (Edge e = 0; e < n; ++e) {
      const auto s = fixed_edge_schedule(n, e);
      const Configuration start{{0, n / 2}};
      for (Node home : {0, 1}) {
        const auto got = offline_opt_search(s, n, start, home);
        const auto ref = oracle::explore_and_return(s, n, start.positions, home, 4 * n);
        REQUIRE(got.has_value());
        CHECK(*got == ref);
      }
    }
  }
  const auto w = wave_schedule(10);
  const Configuration start{{kWaveStartA, kWaveStartB}};
  CHECK(*offline_opt_search(w, 10, start, kWaveStartB) ==
        oracle::explore_and_return(w, 10, start.positions, kWaveStartB, 40));
}

TEST_CASE("segment monitor") {
  const int n = 8;  // guarded frame nodes 5, 6, 7, 0
  CHECK(initial_segment_monitor(n, 6) == 3);
  CHECK(initial_segment_monitor(n, 2) == 0);
  int m = update_segment_monitor(n, 0, 1, 0);
  CHECK(m == 1);
  m = update_segment_monitor(n, m, 0, 7);
  m = update_segment_monitor(n, m, 7, 6);
  m = update_segment_monitor(n, m, 6, 5);
  CHECK(m >= 0);
  CHECK(update_segment_monitor(n, m, 5, 4) == -1);
  // Leaving by the way it came resets.
  CHECK(update_segment_monitor(n, 1, 0, 1) == 0);
}
