#include "patrol/pingpong.hpp"

namespace patrol {

PingPongStep pingpong_step(PingPongState state, const GlobalSnapshot& snap) {
  if (snap.positions.size() != 2)
    throw AlgorithmError("pingpong needs exactly 2 agents, snapshot has " +
                         std::to_string(snap.positions.size()));
  const int n = snap.n;
  const std::size_t other_index = 1 - snap.own_index;
  const Node self = snap.own();
  const Node other = snap.positions[other_index];

  if (state.phase == PingPongPhase::S0) {
    // In S0 everybody attempts +1, so BC is whoever sits on the missing edge's ccw end.
    const bool self_blocked = would_block(n, self, Move::Cw, snap.missing_edge);
    const bool other_blocked = would_block(n, other, Move::Cw, snap.missing_edge);
    if (self_blocked && other_blocked) {
      state.phase = snap.own_index < other_index ? PingPongPhase::Ccw : PingPongPhase::Cw;
    } else if (self_blocked) {
      state.phase = PingPongPhase::Ccw;
    } else if (other_blocked) {
      state.phase = PingPongPhase::Cw;
    } else {
      return {state, Move::Cw};
    }
  }

  const int closing = state.phase == PingPongPhase::Cw
                          ? ring_distance(n, self, other, Direction::Cw)
                          : ring_distance(n, other, self, Direction::Cw);
  if (closing <= 1)
    state.phase = state.phase == PingPongPhase::Cw ? PingPongPhase::Ccw : PingPongPhase::Cw;
  return {state, state.phase == PingPongPhase::Cw ? Move::Cw : Move::Ccw};
}

std::vector<AgentMemory> PingPongProtocol::initial_memory(int, const Configuration& c) const {
  if (c.size() != 2) throw AlgorithmError("pingpong needs exactly 2 agents");
  return {encode({}), encode({})};
}

RoundDecision PingPongProtocol::step(const RoundInput& in) const {
  RoundDecision out;
  for (std::size_t i = 0; i < in.config->size(); ++i) {
    auto [s, m] = pingpong_step(decode(in.memory[i]),
                                global_snapshot(in.n, *in.config, in.missing, i));
    out.moves.push_back(m);
    out.memory.push_back(encode(s));
  }
  return out;
}

}  // namespace patrol
