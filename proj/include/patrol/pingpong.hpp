#pragma once

#include "patrol/protocol.hpp"

namespace patrol {

enum class PingPongPhase : std::int32_t { S0 = 0, Cw = 1, Ccw = 2 };

/// Two-agent UNKNOWN-setting patroller. Both agents loop clockwise until one
/// is blocked; from then on they walk in opposite directions and bounce off
/// each other.
struct PingPongState {
  PingPongPhase phase = PingPongPhase::S0;
};

struct PingPongStep {
  PingPongState state;
  Move move = Move::Stay;
};

/// One Compute phase. The bounce test looks at the gap the two agents are
/// closing (clockwise from the Cw walker to the Ccw walker); when it is at most
/// one both reverse and move in the same round.
PingPongStep pingpong_step(PingPongState state, const GlobalSnapshot& snap);

class PingPongProtocol final : public Protocol {
 public:
  [[nodiscard]] std::string name() const override { return "pingpong"; }
  [[nodiscard]] Visibility visibility() const override { return Visibility::Global; }
  [[nodiscard]] std::vector<AgentMemory> initial_memory(int n,
                                                        const Configuration& c) const override;
  [[nodiscard]] RoundDecision step(const RoundInput& in) const override;

  static AgentMemory encode(PingPongState s) { return {{static_cast<std::int32_t>(s.phase)}}; }
  static PingPongState decode(const AgentMemory& m) {
    return {static_cast<PingPongPhase>(m.words.at(0))};
  }
};

}  // namespace patrol
