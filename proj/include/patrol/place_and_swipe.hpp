#pragma once

#include <optional>

#include "patrol/protocol.hpp"
#include "patrol/spread.hpp"

namespace patrol {

/// Start nodes whose clockwise walk of `h` moves starting at round `r` never
/// meets a missing edge.
std::vector<Node> compute_swipe_set(const ScheduleOracle& schedule, int n, Round r, int h);

/// Smallest rotation of the uniform pattern (larger gaps first) lying inside
/// `allowed`; sorted node list, or nullopt if no rotation fits.
std::optional<std::vector<Node>> select_targets(const std::vector<Node>& allowed, int n, int k);

struct PlacementPlan {
  Direction direction = Direction::Cw;
  /// Target node per agent (indexed like the configuration).
  std::vector<Node> target;
  /// moves[t][i]: move of agent i at round r + t.
  std::vector<std::vector<Move>> moves;
};

/// Order-preserving matching of agents to targets walked in one direction,
/// with blocked agents waiting. Tries clockwise first, then counter-clockwise;
/// nullopt when neither arrives within `window` rounds.
std::optional<PlacementPlan> placement_route(int n, const Configuration& current,
                                             const std::vector<Node>& targets,
                                             const ScheduleOracle& schedule, Round r, int window);

enum class PsStage : std::int32_t { Spread = 0, Placement = 1, Swipe = 2 };

struct PlaceAndSwipeState {
  PsStage stage = PsStage::Spread;
  /// Round at which the current epoch began.
  Round origin = 0;
  Node target = 0;
  Direction direction = Direction::Cw;
  SpreadState spread;
};

struct PlaceAndSwipeStep {
  PlaceAndSwipeState state;
  Move move = Move::Stay;
};

/// Epochs of 2L rounds with L = ceil(n/k): L placement rounds, L-1 clockwise
/// swipe rounds and one hold. An epoch starts at the first round the agents
/// see a uniform configuration; before that they spread out.
PlaceAndSwipeStep place_and_swipe_step(PlaceAndSwipeState state, const GlobalSnapshot& snap,
                                       Round round, const ScheduleOracle& future);

class PlaceAndSwipeProtocol final : public Protocol {
 public:
  [[nodiscard]] std::string name() const override { return "place-and-swipe"; }
  [[nodiscard]] Visibility visibility() const override { return Visibility::Global; }
  [[nodiscard]] Knowledge knowledge() const override { return Knowledge::Known; }
  [[nodiscard]] bool finite_memory() const override { return false; }
  [[nodiscard]] std::vector<AgentMemory> initial_memory(int n,
                                                        const Configuration& c) const override;
  [[nodiscard]] RoundDecision step(const RoundInput& in) const override;

  static AgentMemory encode(const PlaceAndSwipeState& s);
  static PlaceAndSwipeState decode(const AgentMemory& m);
};

}  // namespace patrol
