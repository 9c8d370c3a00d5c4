#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "patrol/fsm_analysis.hpp"

using namespace patrol;

namespace {

FsmSpec relabel(const FsmSpec& spec, const std::vector<int>& perm) {
  FsmSpec out = spec;
  out.initial = perm[static_cast<std::size_t>(spec.initial)];
  for (int s = 0; s < spec.states; ++s) {
    auto row = spec.arcs[static_cast<std::size_t>(s)];
    for (auto& a : row)
      if (a) a->to = perm[static_cast<std::size_t>(a->to)];
    out.arcs[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])] = row;
  }
  return out;
}

}  // namespace

TEST_CASE("demo machine cycles") {
  const auto g = build_transition_graph(fsm_of("two-cycle-demo"));
  std::multiset<int> nontrivial;
  for (const auto& c : simple_cycles(g))
    if (c.arcs.size() > 1) nontrivial.insert(c.displacement);
  CHECK(nontrivial == std::multiset<int>{-3, 0, 0, 3});
  const auto ff = fault_free_cycles(g);
  REQUIRE(ff.size() == 1);
  CHECK(ff[0].vertices() == std::vector<int>{0, 1});
  CHECK(ff[0].displacement == 0);
  CHECK(ff[0].fault_free);
}

TEST_CASE("initial fault-free cycle") {
  const auto g = build_transition_graph(fsm_of("two-cycle-demo"));
  const auto ic = initial_fault_free_cycle(g);
  CHECK(ic.prefix.empty());
  CHECK(ic.cycle.arcs.size() == 2);
  const auto rob = initial_fault_free_cycle(build_transition_graph(fsm_of("reverse-on-block")));
  CHECK(rob.cycle.displacement == 1);
}

TEST_CASE("strongly connected components") {
  const auto g = build_transition_graph(fsm_of("two-cycle-demo"));
  const auto comps = strongly_connected_components(g);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0] == std::vector<int>{0, 1, 2, 3});
  const auto cw = strongly_connected_components(build_transition_graph(fsm_of("clockwise")));
  CHECK(cw.size() == 1);
}

TEST_CASE("verdicts of the built-in machines") {
  const auto verdict = [](const char* name) {
    return classify(build_transition_graph(fsm_of(name)), 2, 2).verdict;
  };
  CHECK(verdict("two-cycle-demo") == Verdict::NotPatrolling);
  CHECK(verdict("idle") == Verdict::NotPatrolling);
  CHECK(verdict("oscillator") == Verdict::NotPatrolling);
  CHECK(verdict("clockwise") == Verdict::LowerBound);
  CHECK(verdict("reverse-on-block") == Verdict::LowerBound);
  CHECK(verdict("consecutive-sweep") == Verdict::LowerBound);
}

TEST_CASE("certificates replay against the graph") {
  for (const auto& name : fsm_names()) {
    const auto g = build_transition_graph(fsm_of(name));
    const auto c = classify(g, 2, 2);
    CHECK(certificate_replays(g, c));
    if (c.verdict == Verdict::LowerBound) CHECK(c.certificate.cycle.displacement != 0);
    else CHECK(c.certificate.cycle.displacement == 0);
    CHECK(c.certificate.cycle.fault_free);
  }
}

TEST_CASE("tampered certificate is rejected") {
  const auto g = build_transition_graph(fsm_of("reverse-on-block"));
  auto c = classify(g, 2, 2);
  REQUIRE_FALSE(c.certificate.cycle.arcs.empty());
  c.certificate.cycle.arcs[0].move = reverse(c.certificate.cycle.arcs[0].move);
  CHECK_FALSE(certificate_replays(g, c));
}

TEST_CASE("verdict and cycle displacements are invariant under relabelling") {
  for (const auto& name : fsm_names()) {
    const auto spec = fsm_of(name);
    std::vector<int> perm(static_cast<std::size_t>(spec.states));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      const auto a = build_transition_graph(spec);
      const auto b = build_transition_graph(relabel(spec, perm));
      CHECK(classify(a, 2, 2).verdict == classify(b, 2, 2).verdict);
      std::multiset<int> da, db;
      for (const auto& c : simple_cycles(a)) da.insert(c.displacement);
      for (const auto& c : simple_cycles(b)) db.insert(c.displacement);
      CHECK(da == db);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("malformed machines") {
  auto spec = fsm_of("reverse-on-block");
  spec.arcs[1][static_cast<std::size_t>(SnapshotClass::Both)].reset();
  CHECK_THROWS_WITH_AS(build_transition_graph(spec), doctest::Contains("fault-free sink"), FsmError);
  spec = fsm_of("reverse-on-block");
  spec.arcs[0][static_cast<std::size_t>(SnapshotClass::CwMissing)].reset();
  CHECK_THROWS_WITH_AS(build_transition_graph(spec), doctest::Contains("non-total"), FsmError);
  spec = fsm_of("reverse-on-block");
  spec.arcs[0][0]->to = 7;
  CHECK_THROWS_AS(build_transition_graph(spec), FsmError);
}

TEST_CASE("bound value") {
  Classification c;
  c.states = 2;
  c.agents = 3;
  CHECK(c.bound_value(100) == 58);
}

TEST_CASE("cross-validation against the solver") {
  for (const char* name : {"oscillator", "two-cycle-demo", "idle"}) {
    const auto spec = fsm_of(name);
    const auto c = classify(build_transition_graph(spec), 2, 2);
    const auto cv = cross_validate(c, spec, 8, 2);
    CHECK(cv.pass);
    CHECK_FALSE(cv.solver_worst.has_value());
  }
  const auto spec = fsm_of("consecutive-sweep");
  const auto cv = cross_validate(classify(build_transition_graph(spec), 3, 2), spec, 8, 3);
  CHECK(cv.vacuous);
}
