#pragma once

#include <span>

#include "patrol/protocol.hpp"

namespace patrol {

enum class KPhase : std::int32_t { S0 = 0, C = 1, CC = 2 };

/// `spreading` is set for odd k while the two unequal groups re-spread;
/// `group_rank` is the clockwise rank inside the group assigned at partition.
struct KPingPongState {
  KPhase phase = KPhase::S0;
  bool spreading = false;
  int group_rank = 0;

  bool operator==(const KPingPongState&) const = default;
};

struct KPingPongStep {
  KPingPongState state;
  Move move = Move::Stay;
};

/// One Compute phase for all agents. Each agent's decision depends on its
/// snapshot and on the phases of the others, which every agent can rebuild
/// from the shared, deterministic history of snapshots.
std::vector<KPingPongStep> kpingpong_round(int n, std::span<const Node> positions,
                                           std::optional<Edge> missing,
                                           std::span<const KPingPongState> states);

/// The decision of the observer `snap.own_index`.
KPingPongStep kpingpong_step(std::span<const KPingPongState> states, const GlobalSnapshot& snap);

class KPingPongProtocol final : public Protocol {
 public:
  [[nodiscard]] std::string name() const override { return "kpingpong"; }
  [[nodiscard]] Visibility visibility() const override { return Visibility::Global; }
  [[nodiscard]] std::vector<AgentMemory> initial_memory(int n,
                                                        const Configuration& c) const override;
  [[nodiscard]] RoundDecision step(const RoundInput& in) const override;

  static AgentMemory encode(KPingPongState s) {
    return {{static_cast<std::int32_t>(s.phase), s.spreading ? 1 : 0, s.group_rank}};
  }
  static KPingPongState decode(const AgentMemory& m) {
    return {static_cast<KPhase>(m.words.at(0)), m.words.at(1) != 0, m.words.at(2)};
  }
};

}  // namespace patrol
