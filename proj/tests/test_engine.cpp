#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "patrol/adversaries.hpp"
#include "patrol/engine.hpp"

using namespace patrol;

namespace {

VisitLog log_of(int n, Round horizon, std::vector<std::vector<Round>> visits) {
  VisitLog log{n, horizon, {}};
  for (auto& v : visits) {
    v.insert(v.begin(), -1);
    log.visits.push_back(v);
  }
  return log;
}

}  // namespace

TEST_CASE("clockwise agent on a static ring") {
  const auto p = make_protocol("clockwise");
  const auto tr = run(*p, ObliviousSchedule(6), Configuration{{0}}, 12);
  CHECK(tr.records.size() == 12);
  CHECK(tr.records[0].after.positions == std::vector<Node>{1});
  CHECK(tr.records[5].after.positions == std::vector<Node>{0});
  CHECK(tr.continuous());
  const auto rep = idle_time(tr);
  CHECK(rep.idle == 6);
  for (auto g : rep.per_node_max_gap) CHECK(g == 6);
}

TEST_CASE("idle report on hand-made visit logs") {
  // Node 0 at rounds 2 and 7, node 1 never.
  const auto log = log_of(2, 10, {{2, 7}, {}});
  const auto rep = idle_report(log, 0);
  CHECK(rep.per_node_max_gap[0] == 5);
  CHECK(rep.per_node_max_gap[1] == 11);
  CHECK(rep.idle == 11);
  CHECK(rep.worst_node == 1);
  CHECK(rep.open_gap[0] == 3);
  CHECK_FALSE(rep.open_flags[0]);
  CHECK(rep.open_flags[1]);

  // From r_s = 3 node 0's first gap is 7 - 2 = 5 and nothing earlier counts.
  const auto late = idle_report(log_of(1, 10, {{2, 4, 9}}), 3);
  CHECK(late.per_node_max_gap[0] == 5);
}

TEST_CASE("open gap larger than every closed gap is flagged") {
  const auto rep = idle_report(log_of(1, 20, {{0, 1}}), 0);
  CHECK(rep.per_node_max_gap[0] == 1);
  CHECK(rep.open_gap[0] == 19);
  CHECK(rep.open_flags[0]);
}

TEST_CASE("idle report agrees with a linear scan") {
  const auto p = make_protocol("pingpong");
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 5 + static_cast<int>(seed % 8);
    const auto tr = run(*p, random_schedule(n, 8 * n, seed), uniform_configuration(n, 2), 8 * n);
    for (Round rs : {Round{0}, Round{n}, Round{2 * n}}) {
      const auto rep = idle_time(tr, rs);
      for (int v = 0; v < n; ++v)
        CHECK(rep.per_node_max_gap[static_cast<std::size_t>(v)] == oracle::max_gap_linear(tr, v, rs));
      CHECK(rep.idle == oracle::idle_linear(tr, rs));
    }
  }
}

TEST_CASE("stable idle does not increase with a later stabilization round") {
  const auto p = make_protocol("kpingpong");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto tr = run(*p, random_schedule(12, 200, seed), uniform_configuration(12, 3), 200);
    Round prev = stable_idle(tr, 0);
    for (Round rs = 1; rs < 100; rs += 7) {
      const Round cur = stable_idle(tr, rs);
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("runs are deterministic and continuous") {
  for (const char* name : {"pingpong", "kpingpong", "place-and-swipe", "spread"}) {
    const auto p = make_protocol(name);
    const auto s = random_schedule(11, 100, 99);
    const auto a = run(*p, s, uniform_configuration(11, 3 - (std::string(name) == "pingpong")), 100);
    const auto b = run(*p, s, uniform_configuration(11, 3 - (std::string(name) == "pingpong")), 100);
    CHECK(a.continuous());
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      CHECK(a.records[i].after == b.records[i].after);
      CHECK(a.records[i].memory_after == b.records[i].memory_after);
    }
  }
}

TEST_CASE("engine records the schedule and blocked agents") {
  const auto p = make_protocol("clockwise");
  ObliviousSchedule s(6);
  s.remove(2, 2);
  const auto tr = run(*p, s, Configuration{{0}}, 5);
  CHECK(tr.records[2].missing == 2);
  CHECK(tr.records[2].blocked[0]);
  CHECK(tr.records[2].after.positions[0] == 2);
  CHECK(tr.records[3].after.positions[0] == 3);
}

TEST_CASE("engine rejects invalid schedules and KNOWN protocols with adaptive schedulers") {
  const auto p = make_protocol("clockwise");
  ObliviousSchedule s(6);
  s.remove(1, 0);
  s.remove(1, 3);
  CHECK_THROWS_AS(run(*p, s, Configuration{{0}}, 5), EngineError);
  TrapAdversary trap;
  CHECK_THROWS_AS(run(*make_protocol("place-and-swipe"), trap, 10, uniform_configuration(10, 2), 5),
                  EngineError);
}

TEST_CASE("trace csv") {
  const auto p = make_protocol("clockwise");
  ObliviousSchedule s(4);
  s.remove(1, 1);
  const auto tr = run(*p, s, Configuration{{0}}, 3);
  std::ostringstream out;
  write_trace_csv(out, tr);
  std::istringstream in(out.str());
  std::string header, r0, r1;
  std::getline(in, header);
  std::getline(in, r0);
  std::getline(in, r1);
  CHECK(header == "round,missing_edge,a0_pos,a0_move,a0_blocked");
  CHECK(r0 == "0,,1,1,0");
  CHECK(r1 == "1,1,1,1,1");
}

TEST_CASE("clockwise walkers on random schedules") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 6 + static_cast<int>(rng() % 10);
    const auto s = random_schedule(n, 3 * n, rng());
    const Round r = static_cast<Round>(rng() % static_cast<std::uint64_t>(n));
    const int h = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
    const auto res = verify_swipe_walkers(s, n, r, h);
    CHECK(res.pass);
    CHECK(res.never_blocked == oracle::unblocked_walkers(s, n, r, h));
    CHECK(res.never_blocked >= n - h);
    CHECK(res.wrong_coverage == 0);
  }
}
