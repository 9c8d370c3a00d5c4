#pragma once

#include <span>

#include "patrol/protocol.hpp"

namespace patrol {

/// Moves bringing `members` (clockwise order, reference agent first) toward the
/// uniform pattern with the given gaps anchored at the reference agent.
///
/// If the planned move of some member would cross the missing edge, that member
/// becomes the anchor for this round instead: everybody else shifts so that the
/// blocked member's relative progress is still made. With gaps of at least 2
/// the shifted plan never uses the missing edge, and the summed distance to the
/// pattern (measured from the reference) strictly decreases every round.
std::vector<Move> spread_moves(int n, std::span<const Node> members, std::optional<Edge> missing,
                               std::span<const int> gaps);

enum class SpreadMode : std::int32_t { Unordered = 0, Ordered = 1, Periodic = 2 };

/// `rank` is the clockwise index from the reference agent (Ordered) or from the
/// agent's own segment reference (Periodic).
struct SpreadState {
  SpreadMode mode = SpreadMode::Unordered;
  int rank = 0;
};

struct SpreadStep {
  SpreadState state;
  Move move = Move::Stay;
};

/// UNKNOWN setting, global snapshot. A total order comes either from an
/// aperiodic configuration (reference = agent whose clockwise gap sequence is
/// lexicographically largest) or from the first edge removal (reference =
/// first agent clockwise of the removed edge). Periodic fault-free
/// configurations spread each period segment on its own.
SpreadStep uniform_spread_step(SpreadState state, const GlobalSnapshot& snap);

/// Agents sorted clockwise starting at `from` (inclusive), as snapshot indices.
std::vector<std::size_t> clockwise_order(int n, std::span<const Node> positions, Node from);

class SpreadProtocol final : public Protocol {
 public:
  [[nodiscard]] std::string name() const override { return "spread"; }
  [[nodiscard]] Visibility visibility() const override { return Visibility::Global; }
  [[nodiscard]] std::vector<AgentMemory> initial_memory(int n,
                                                        const Configuration& c) const override;
  [[nodiscard]] RoundDecision step(const RoundInput& in) const override;

  static AgentMemory encode(SpreadState s) { return {{static_cast<std::int32_t>(s.mode), s.rank}}; }
  static SpreadState decode(const AgentMemory& m) {
    return {static_cast<SpreadMode>(m.words.at(0)), m.words.at(1)};
  }
};

}  // namespace patrol
