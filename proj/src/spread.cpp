#include "patrol/spread.hpp"

#include <algorithm>
#include <numeric>

namespace patrol {
namespace {

int sign(int x) { return (x > 0) - (x < 0); }

Move from_sign(int s) { return static_cast<Move>(s); }

// Clockwise gap sequence seen from each agent, indexed like `order`.
std::vector<std::vector<int>> gap_sequences(int n, std::span<const Node> positions,
                                            const std::vector<std::size_t>& order) {
  const std::size_t k = order.size();
  std::vector<int> gaps(k);
  for (std::size_t i = 0; i < k; ++i)
    gaps[i] = ring_distance(n, positions[order[i]], positions[order[(i + 1) % k]], Direction::Cw);
  std::vector<std::vector<int>> seqs(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) seqs[i].push_back(gaps[(i + j) % k]);
  return seqs;
}

std::size_t rank_of(const std::vector<std::size_t>& order_from_leader, std::size_t agent) {
  return static_cast<std::size_t>(
      std::find(order_from_leader.begin(), order_from_leader.end(), agent) -
      order_from_leader.begin());
}

}  // namespace

std::vector<std::size_t> clockwise_order(int n, std::span<const Node> positions, Node from) {
  std::vector<std::size_t> idx(positions.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return ring_distance(n, from, positions[a], Direction::Cw) <
           ring_distance(n, from, positions[b], Direction::Cw);
  });
  return idx;
}

std::vector<Move> spread_moves(int n, std::span<const Node> members, std::optional<Edge> missing,
                               std::span<const int> gaps) {
  const std::size_t m = members.size();
  std::vector<int> error(m, 0);
  int target = 0;
  for (std::size_t j = 0; j < m; ++j) {
    error[j] = ring_distance(n, members[0], members[j], Direction::Cw) - target;
    target += gaps[j];
  }
  std::vector<Move> moves(m);
  for (std::size_t j = 0; j < m; ++j) moves[j] = from_sign(-sign(error[j]));

  for (std::size_t b = 0; b < m; ++b) {
    if (!would_block(n, members[b], moves[b], missing)) continue;
    const int shift = error[b];
    for (std::size_t j = 0; j < m; ++j) moves[j] = from_sign(-sign(error[j] - shift));
    break;
  }
  return moves;
}

SpreadStep uniform_spread_step(SpreadState state, const GlobalSnapshot& snap) {
  const int n = snap.n;
  const std::size_t k = snap.positions.size();
  if (k < 2) return {state, Move::Stay};
  const std::span<const Node> pos(snap.positions);
  const auto from_self = clockwise_order(n, pos, snap.own());
  // Self must head its own order even if co-located.
  std::vector<std::size_t> order = from_self;
  std::stable_partition(order.begin(), order.end(),
                        [&](std::size_t i) { return i == snap.own_index; });

  if (state.mode != SpreadMode::Ordered && snap.missing_edge) {
    const auto from_edge = clockwise_order(n, pos, (*snap.missing_edge + 1) % n);
    state = {SpreadMode::Ordered, static_cast<int>(rank_of(from_edge, snap.own_index))};
  } else if (state.mode == SpreadMode::Unordered) {
    const auto seqs = gap_sequences(n, pos, order);
    const auto best = *std::max_element(seqs.begin(), seqs.end());
    const auto leaders = std::count(seqs.begin(), seqs.end(), best);
    int back = 0;
    while (seqs[(k - static_cast<std::size_t>(back)) % k] != best) ++back;
    state = {leaders == 1 ? SpreadMode::Ordered : SpreadMode::Periodic, back};
  }

  if (is_uniform(n, Configuration{snap.positions})) return {state, Move::Stay};

  std::size_t segment = k;
  std::vector<int> gaps;
  if (state.mode == SpreadMode::Periodic) {
    const auto seqs = gap_sequences(n, pos, order);
    const auto best = *std::max_element(seqs.begin(), seqs.end());
    const auto periods = static_cast<std::size_t>(std::count(seqs.begin(), seqs.end(), best));
    segment = k / periods;
    if (static_cast<std::size_t>(state.rank) >= segment) {
      int back = 0;
      while (seqs[(k - static_cast<std::size_t>(back)) % k] != best) ++back;
      state.rank = back;
    }
    gaps = uniform_gaps(n / static_cast<int>(periods), static_cast<int>(segment));
  } else {
    gaps = uniform_gaps(n, static_cast<int>(k));
  }

  const std::size_t rank = static_cast<std::size_t>(state.rank);
  std::vector<Node> members;
  for (std::size_t j = 0; j < segment; ++j) members.push_back(pos[order[(k - rank + j) % k]]);
  const auto moves = spread_moves(n, members, snap.missing_edge, gaps);
  return {state, moves[rank]};
}

std::vector<AgentMemory> SpreadProtocol::initial_memory(int, const Configuration& c) const {
  return std::vector<AgentMemory>(c.size(), encode({}));
}

RoundDecision SpreadProtocol::step(const RoundInput& in) const {
  RoundDecision out;
  for (std::size_t i = 0; i < in.config->size(); ++i) {
    auto [s, m] = uniform_spread_step(decode(in.memory[i]),
                                      global_snapshot(in.n, *in.config, in.missing, i));
    out.moves.push_back(m);
    out.memory.push_back(encode(s));
  }
  return out;
}

}  // namespace patrol
