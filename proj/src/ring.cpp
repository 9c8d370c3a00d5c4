#include "patrol/ring.hpp"

#include <algorithm>

namespace patrol {

RingTopology::RingTopology(int nodes) : n(nodes) {
  if (n < 3) throw RingError("ring needs at least 3 nodes, got " + std::to_string(n));
}

std::optional<Edge> RingTopology::edge_for(Node v, Move m) const {
  switch (m) {
    case Move::Cw: return cw_edge(v);
    case Move::Ccw: return ccw_edge(v);
    case Move::Stay: break;
  }
  return std::nullopt;
}

int ring_distance(int n, Node u, Node v, Direction dir) {
  int d = dir == Direction::Cw ? v - u : u - v;
  return ((d % n) + n) % n;
}

int ring_gap(int n, Node u, Node v) {
  return std::min(ring_distance(n, u, v, Direction::Cw), ring_distance(n, u, v, Direction::Ccw));
}

std::vector<int> uniform_gaps(int n, int k) {
  std::vector<int> gaps(static_cast<std::size_t>(k), n / k);
  for (int i = 0; i < n % k; ++i) ++gaps[static_cast<std::size_t>(i)];
  return gaps;
}

Configuration uniform_configuration(int n, int k, Node anchor) {
  Configuration c;
  Node at = ((anchor % n) + n) % n;
  for (int g : uniform_gaps(n, k)) {
    c.positions.push_back(at);
    at = (at + g) % n;
  }
  return c;
}

bool is_injective(const Configuration& c) {
  auto p = c.positions;
  std::sort(p.begin(), p.end());
  return std::adjacent_find(p.begin(), p.end()) == p.end();
}

bool is_uniform(int n, const Configuration& c) {
  const int k = static_cast<int>(c.size());
  if (k == 0) return false;
  if (k == 1) return true;
  auto p = c.positions;
  std::sort(p.begin(), p.end());
  const int lo = n / k;
  const int hi = (n + k - 1) / k;
  for (int i = 0; i < k; ++i) {
    const int g = ring_distance(n, p[static_cast<std::size_t>(i)],
                                p[static_cast<std::size_t>((i + 1) % k)], Direction::Cw);
    if (g < lo || g > hi || g == 0) return false;
  }
  return true;
}

ObliviousSchedule::ObliviousSchedule(int n, std::optional<Round> period) : n_(n), period_(period) {
  if (period_ && *period_ <= 0) throw RingError("schedule period must be positive");
}

Round ObliviousSchedule::reduce(Round r) const { return period_ ? r % *period_ : r; }

void ObliviousSchedule::remove(Round r, Edge e) {
  if (r < 0) throw RingError("negative round in schedule");
  entries_.emplace(reduce(r), e);
}

std::optional<Edge> ObliviousSchedule::missing(Round r) const {
  auto it = entries_.find(reduce(r));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> ObliviousSchedule::missing_all(Round r) const {
  std::vector<Edge> out;
  auto [lo, hi] = entries_.equal_range(reduce(r));
  for (auto it = lo; it != hi; ++it) out.push_back(it->second);
  return out;
}

Round ObliviousSchedule::last_entry_round() const {
  return entries_.empty() ? -1 : entries_.rbegin()->first;
}

ScheduleCheck validate_schedule(const ObliviousSchedule& s, Round horizon) {
  if (horizon < 1) return {false, std::nullopt, "horizon must be at least 1"};
  if (s.n() < 3) return {false, std::nullopt, "ring needs at least 3 nodes"};
  // Only rounds carrying entries can be invalid.
  for (auto it = s.entries().begin(); it != s.entries().end();) {
    const Round r = it->first;
    const auto count = s.entries().count(r);
    if (r < horizon) {
      if (count > 1)
        return {false, r, "round " + std::to_string(r) + " removes " + std::to_string(count) +
                               " edges; a ring minus two edges is disconnected"};
      if (it->second < 0 || it->second >= s.n())
        return {false, r, "round " + std::to_string(r) + " names edge " +
                              std::to_string(it->second) + " outside [0, n)"};
    }
    std::advance(it, static_cast<std::ptrdiff_t>(count));
  }
  return {};
}

bool would_block(int n, Node v, Move m, std::optional<Edge> missing) {
  if (!missing || m == Move::Stay) return false;
  const Edge needed = m == Move::Cw ? v : (v + n - 1) % n;
  return needed == *missing;
}

RoundOutcome apply_round(int n, const Configuration& config, const std::vector<Move>& moves,
                         std::optional<Edge> missing) {
  if (moves.size() != config.size()) throw RingError("one move per agent required");
  RoundOutcome out{config, std::vector<bool>(config.size(), false)};
  const RingTopology ring(n);
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Node v = config.positions[i];
    if (would_block(n, v, moves[i], missing)) {
      out.blocked[i] = true;
      continue;
    }
    out.after.positions[i] = ring.step(v, moves[i]);
  }
  return out;
}

LocalSnapshot local_snapshot(int n, const Configuration& c, std::optional<Edge> missing,
                             std::size_t agent) {
  const Node v = c.positions.at(agent);
  LocalSnapshot s;
  s.agents_here = static_cast<int>(std::count(c.positions.begin(), c.positions.end(), v));
  s.cw_present = !(missing && *missing == v);
  s.ccw_present = !(missing && *missing == (v + n - 1) % n);
  return s;
}

GlobalSnapshot global_snapshot(int n, const Configuration& c, std::optional<Edge> missing,
                               std::size_t agent) {
  if (agent >= c.size()) throw RingError("agent index out of range");
  return GlobalSnapshot{n, missing, c.positions, agent};
}

std::variant<LocalSnapshot, GlobalSnapshot> take_snapshot(int n, const Configuration& c,
                                                          std::optional<Edge> missing,
                                                          std::size_t agent, Visibility vis) {
  if (vis == Visibility::Local) return local_snapshot(n, c, missing, agent);
  return global_snapshot(n, c, missing, agent);
}

}  // namespace patrol
