#include "patrol/kpingpong.hpp"

#include <algorithm>

#include "patrol/spread.hpp"

namespace patrol {
namespace {

Move heading(KPhase p) {
  switch (p) {
    case KPhase::C: return Move::Cw;
    case KPhase::CC: return Move::Ccw;
    case KPhase::S0: break;
  }
  return Move::Cw;
}

std::vector<std::size_t> group_of(std::span<const KPingPongState> states, KPhase phase) {
  std::vector<std::size_t> g;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].phase == phase) g.push_back(i);
  std::stable_sort(g.begin(), g.end(), [&](std::size_t a, std::size_t b) {
    return states[a].group_rank < states[b].group_rank;
  });
  return g;
}

std::vector<Node> positions_of(std::span<const Node> positions, const std::vector<std::size_t>& g) {
  std::vector<Node> out;
  for (auto i : g) out.push_back(positions[i]);
  return out;
}

bool group_uniform(int n, std::span<const Node> positions, const std::vector<std::size_t>& g) {
  return g.size() <= 1 || is_uniform(n, Configuration{positions_of(positions, g)});
}

// First blocking round: split into alternating groups clockwise from the
// blocked agent (lowest index on a tie).
void partition(int n, std::span<const Node> positions, std::size_t blocked,
               std::vector<KPingPongState>& states) {
  auto order = clockwise_order(n, positions, positions[blocked]);
  std::stable_partition(order.begin(), order.end(), [&](std::size_t i) { return i == blocked; });
  const bool odd = order.size() % 2 == 1;
  for (std::size_t r = 0; r < order.size(); ++r) {
    auto& s = states[order[r]];
    s.phase = r % 2 == 0 ? KPhase::C : KPhase::CC;
    s.group_rank = static_cast<int>(r / 2);
    s.spreading = odd;
  }
}

}  // namespace

std::vector<KPingPongStep> kpingpong_round(int n, std::span<const Node> positions,
                                           std::optional<Edge> missing,
                                           std::span<const KPingPongState> in_states) {
  const std::size_t k = positions.size();
  if (k < 2) throw AlgorithmError("kpingpong needs at least 2 agents");
  if (in_states.size() != k) throw AlgorithmError("kpingpong: one state per agent required");
  std::vector<KPingPongState> states(in_states.begin(), in_states.end());
  std::vector<KPingPongStep> out(k);

  if (states.front().phase == KPhase::S0) {
    std::optional<std::size_t> blocked;
    for (std::size_t i = 0; i < k && !blocked; ++i)
      if (would_block(n, positions[i], Move::Cw, missing)) blocked = i;
    if (!blocked) {
      for (std::size_t i = 0; i < k; ++i) out[i] = {states[i], Move::Cw};
      return out;
    }
    partition(n, positions, *blocked, states);
  }

  const auto gc = group_of(states, KPhase::C);
  const auto gcc = group_of(states, KPhase::CC);

  if (states.front().spreading) {
    const bool done = group_uniform(n, positions, gc) && group_uniform(n, positions, gcc);
    if (!done) {
      for (std::size_t i = 0; i < k; ++i) out[i] = {states[i], Move::Stay};
      for (const auto* g : {&gc, &gcc}) {
        if (group_uniform(n, positions, *g)) continue;
        const auto members = positions_of(positions, *g);
        const auto gaps = uniform_gaps(n, static_cast<int>(g->size()));
        const auto moves = spread_moves(n, members, missing, gaps);
        for (std::size_t j = 0; j < g->size(); ++j) out[(*g)[j]].move = moves[j];
      }
      return out;
    }
    for (auto& s : states) s.spreading = false;
  }

  auto blocked = [&](std::size_t i) {
    return would_block(n, positions[i], heading(states[i].phase), missing);
  };
  const bool c_blocked = std::any_of(gc.begin(), gc.end(), blocked);
  const bool cc_blocked = std::any_of(gcc.begin(), gcc.end(), blocked);

  for (std::size_t i = 0; i < k; ++i) {
    auto s = states[i];
    const bool mine_blocked = s.phase == KPhase::C ? c_blocked : cc_blocked;
    Move m = heading(s.phase);
    if (c_blocked && cc_blocked) {
      // Membership swap: the blocked pair trades roles in place.
      if (blocked(i)) {
        s.phase = s.phase == KPhase::C ? KPhase::CC : KPhase::C;
        m = Move::Stay;
      }
    } else if (mine_blocked) {
      m = Move::Stay;
    }
    out[i] = {s, m};
  }
  return out;
}

KPingPongStep kpingpong_step(std::span<const KPingPongState> states, const GlobalSnapshot& snap) {
  return kpingpong_round(snap.n, snap.positions, snap.missing_edge, states).at(snap.own_index);
}

std::vector<AgentMemory> KPingPongProtocol::initial_memory(int, const Configuration& c) const {
  if (c.size() < 2) throw AlgorithmError("kpingpong needs at least 2 agents");
  return std::vector<AgentMemory>(c.size(), encode({}));
}

RoundDecision KPingPongProtocol::step(const RoundInput& in) const {
  std::vector<KPingPongState> states;
  for (const auto& m : in.memory) states.push_back(decode(m));
  RoundDecision out;
  for (const auto& s : kpingpong_round(in.n, in.config->positions, in.missing, states)) {
    out.moves.push_back(s.move);
    out.memory.push_back(encode(s.state));
  }
  return out;
}

}  // namespace patrol
