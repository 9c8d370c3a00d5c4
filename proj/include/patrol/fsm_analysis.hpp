#pragma once

#include <optional>

#include "patrol/fsm.hpp"
#include "patrol/solver.hpp"

namespace patrol {

struct Arc {
  int from = 0;
  SnapshotClass cls = SnapshotClass::Both;
  int to = 0;
  Move move = Move::Stay;

  [[nodiscard]] bool fault_free() const { return cls == SnapshotClass::Both; }
  bool operator==(const Arc&) const = default;
};

/// Three labelled arcs per state; arcs[3*s + c] for snapshot class c.
struct TransitionGraph {
  int states = 0;
  int initial = 0;
  std::vector<Arc> arcs;

  [[nodiscard]] const Arc& arc(int s, SnapshotClass c) const {
    return arcs.at(static_cast<std::size_t>(3 * s + static_cast<int>(c)));
  }
};

/// Rejects a missing fault-free arc as a fault-free sink and any other gap as
/// a non-total table (FsmError).
TransitionGraph build_transition_graph(const FsmSpec& spec);

struct CycleInfo {
  /// Arcs in order; arcs.back().to == arcs.front().from.
  std::vector<Arc> arcs;
  bool fault_free = false;
  int displacement = 0;

  [[nodiscard]] std::vector<int> vertices() const;
};

CycleInfo make_cycle(std::vector<Arc> arcs);

struct InitialCycle {
  /// Fault-free arcs from the initial state to the first vertex of `cycle`.
  std::vector<Arc> prefix;
  CycleInfo cycle;
};

/// Follows fault-free arcs from the initial state until a vertex repeats.
InitialCycle initial_fault_free_cycle(const TransitionGraph& g);

/// Every simple cycle (distinct vertices, parallel arcs told apart), rotated
/// to start at its smallest vertex. Stops after `limit` cycles.
std::vector<CycleInfo> simple_cycles(const TransitionGraph& g, std::size_t limit = 100000);

/// Cycles of the fault-free sub-graph (each state has exactly one fault-free arc).
std::vector<CycleInfo> fault_free_cycles(const TransitionGraph& g);

/// Strongly connected components, each sorted; components in reverse
/// topological order (sinks first).
std::vector<std::vector<int>> strongly_connected_components(const TransitionGraph& g);

enum class Verdict { NotPatrolling, LowerBound };
std::string to_string(Verdict v);

struct Certificate {
  InitialCycle initial;
  /// Any arcs, from the first vertex of the initial cycle to the first vertex of `cycle`.
  std::vector<Arc> path;
  /// Fault-free cycle whose displacement decides the verdict.
  CycleInfo cycle;
  /// Component containing `cycle`.
  std::vector<int> component;
};

struct Classification {
  Verdict verdict = Verdict::LowerBound;
  int states = 0;
  int agents = 0;
  int memory_bits = 0;
  Certificate certificate;

  /// n - 7 |S| k; meaningful for LowerBound verdicts.
  [[nodiscard]] long long bound_value(int n) const {
    return static_cast<long long>(n) - 7LL * states * agents;
  }
};

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zero-displacement fault-free cycle reachable from the initial cycle ->
/// NotPatrolling; otherwise LowerBound, certified by a fault-free cycle in a
/// terminal component reachable from the initial cycle.
Classification classify(const TransitionGraph& g, int k, int memory_bits);

/// Checks every arc of the certificate against the graph and recomputes the
/// displacement.
bool certificate_replays(const TransitionGraph& g, const Classification& c);

struct CrossValidation {
  bool pass = false;
  std::optional<Round> solver_worst;
  /// The bound n - 7|S|k is below 1, so only finiteness is checked.
  bool vacuous = false;
  std::string detail;
};

/// Runs the exact solver on the machine with k uniformly placed agents.
/// NotPatrolling must be unbounded; LowerBound must be finite and at least
/// max(1, n - 7|S|k).
CrossValidation cross_validate(const Classification& c, const FsmSpec& spec, int n, int k,
                               std::size_t budget = default_state_budget());

}  // namespace patrol
