#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "patrol/engine.hpp"

namespace patrol {

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 10^7 unless PATROLCTL_STATE_BUDGET is set.
std::size_t default_state_budget();

/// Positions and memories of all agents; the node of the product game graph.
struct GameState {
  Configuration config;
  std::vector<AgentMemory> memory;

  [[nodiscard]] std::vector<std::int32_t> key() const;
};

struct KeyHash {
  std::size_t operator()(const std::vector<std::int32_t>& v) const noexcept;
};

/// Reachable product graph: succ[s][c] is the state after choice c.
struct GameGraph {
  int n = 0;
  std::vector<std::optional<Edge>> choices;
  std::vector<GameState> states;
  std::vector<std::vector<int>> succ;
};

/// Every state reachable from (initial, initial memory) when the scheduler may
/// pick any of `choices` each round. State 0 is the initial state.
GameGraph build_game_graph(const Protocol& protocol, int n, const Configuration& initial,
                           const std::vector<std::optional<Edge>>& choices,
                           std::size_t budget = default_state_budget());

/// All n+1 scheduler options (nothing, or one of the n edges).
std::vector<std::optional<Edge>> all_choices(int n);

struct SolverOptions {
  /// Defaults to all_choices(n).
  std::optional<std::vector<std::optional<Edge>>> choices;
  std::size_t budget = default_state_budget();
};

struct GameSolverResult {
  /// nullopt = unbounded.
  std::optional<Round> worst_idle;
  Node target_node = 0;
  /// Edge removed at each round of a realizing execution.
  std::vector<std::optional<Edge>> witness;
  /// For unbounded results the witness ends with a cycle starting here.
  std::optional<std::size_t> lasso_start;
  std::size_t states = 0;
  /// Largest forcible gap per node (nullopt = unbounded).
  std::vector<std::optional<Round>> per_node;
};

GameSolverResult solve_worst_case(const Protocol& protocol, int n, const Configuration& initial,
                                  const SolverOptions& options = {});

struct ReplayCheck {
  bool ok = false;
  Round measured = 0;
  std::string detail;
};

/// Finite results: the replayed per-node gap of the target equals worst_idle.
/// Unbounded: after the lasso is unrolled `unroll` times the target is still
/// unvisited since the lasso's source.
ReplayCheck replay_witness(const Protocol& protocol, int n, const Configuration& initial,
                           const GameSolverResult& result, int unroll = 4);

/// Earliest T such that all nodes are visited by round T and the home node is
/// occupied at T, over all joint trajectories; returns T + 1 (rounds since the
/// -1 seed). nullopt when unreachable.
std::optional<Round> offline_opt_search(const ObliviousSchedule& schedule, int n,
                                        const Configuration& start, Node home,
                                        std::uint64_t budget = 100'000'000);

}  // namespace patrol
