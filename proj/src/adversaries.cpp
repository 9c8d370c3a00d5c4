#include "patrol/adversaries.hpp"

#include <deque>
#include <random>

namespace patrol {

ObliviousSchedule fixed_edge_schedule(int n, Edge e) {
  RingTopology ring(n);
  if (e < 0 || e >= n) throw RingError("edge " + std::to_string(e) + " not on the ring");
  ObliviousSchedule s(n, 1);
  s.remove(0, e);
  return s;
}

ObliviousSchedule wave_schedule(int n) {
  if (n < 10 || n % 2 != 0) throw RingError("wave schedule needs an even n >= 10");
  const int half = n / 2;
  const Round period = 4 * (half - 1);
  ObliviousSchedule s(n, period);
  for (int i = 0; i <= half - 2; ++i) {
    const Edge up = kWaveStartA + i;
    const Edge down = ((kWaveStartB - 1 - i) % n + n) % n;
    s.remove(2 * i, up);
    s.remove(period - 2 * (i + 1), up);
    s.remove(2 * i + 1, down);
    s.remove(period - (2 * i + 1), down);
  }
  return s;
}

ObliviousSchedule random_schedule(int n, Round horizon, std::uint64_t seed) {
  RingTopology ring(n);
  std::mt19937_64 rng(seed);
  ObliviousSchedule s(n);
  for (Round r = 0; r < horizon; ++r) {
    const auto pick = static_cast<int>(rng() % static_cast<std::uint64_t>(n + 1));
    if (pick < n) s.remove(r, pick);
  }
  return s;
}

std::optional<Edge> TrapAdversary::choose(const AdversaryView& view) {
  const int n = view.n;
  const Node start = view.initial->positions.at(target_);
  const Node inner = (start + 1) % n;
  const auto out = dry_run(*view.protocol, n, view.round, *view.config, view.memory, std::nullopt);
  const Node from = view.config->positions[target_];
  const Node to = out.after.positions[target_];
  if (to == start || to == inner) return std::nullopt;
  // Leaving through the far side of whichever prison node it stands on.
  return from == start ? (start + n - 1) % n : inner;
}

int initial_segment_monitor(int n, Node at) {
  return (at == 0 || at >= n - 3) ? 3 : 0;
}

int update_segment_monitor(int n, int monitor, Node from, Node to) {
  auto inside = [n](Node v) { return v == 0 || v >= n - 3; };
  if (!inside(from) && inside(to)) return to == 0 ? 1 : 2;
  if (inside(from) && !inside(to)) {
    if ((monitor == 1 && to == n - 4) || (monitor == 2 && to == 1)) return -1;
    return 0;
  }
  return monitor;
}

GateAdversary::GateAdversary(int n, std::size_t budget) : n_(n), budget_(budget) {
  RingTopology ring(n);
  if (n < 6) throw RingError("gate adversary needs n >= 6");
}

std::vector<std::int32_t> GateAdversary::key(const Configuration& c,
                                             std::span<const AgentMemory> m,
                                             const std::vector<int>& monitors) const {
  auto k = GameState{c, {m.begin(), m.end()}}.key();
  k.insert(k.end(), monitors.begin(), monitors.end());
  return k;
}

void GateAdversary::solve(const AdversaryView& view) {
  const auto& init = *view.initial;
  if (init.size() != 2) throw AlgorithmError("gate adversary needs exactly 2 agents");
  shift_ = (init.positions[0] + 1) % n_;
  const auto edge = [&](Edge frame_edge) { return static_cast<Edge>(real(frame_edge)); };
  preference_ = {std::nullopt, edge(n_ - 1), edge(n_ - 3)};
  for (Edge e = 0; e < n_; ++e)
    if (e != n_ - 1 && e != n_ - 3) preference_.push_back(edge(e));

  struct Node_ {
    Configuration config;
    std::vector<AgentMemory> memory;
    std::vector<int> monitors;
    bool good;
  };
  std::vector<Node_> nodes;
  auto in_prison = [&](const Configuration& c) {
    for (Node v : c.positions) {
      const Node f = frame(v);
      if (f == n_ - 1 || f == n_ - 2) return true;
    }
    return false;
  };
  auto intern = [&](Node_ s) {
    auto k = key(s.config, s.memory, s.monitors);
    auto [it, fresh] = index_.try_emplace(std::move(k), static_cast<int>(nodes.size()));
    if (fresh) {
      if (nodes.size() >= budget_) throw BudgetError("gate game exceeds the state budget");
      nodes.push_back(std::move(s));
    }
    return it->second;
  };

  std::vector<int> mon0;
  for (Node v : init.positions) mon0.push_back(initial_segment_monitor(n_, frame(v)));
  intern({init, {view.memory.begin(), view.memory.end()}, mon0, in_prison(init)});
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    std::vector<int> row;
    if (nodes[s].good) {
      for (const auto& choice : preference_) {
        const auto cur = nodes[s];
        RoundDecision d;
        auto out = dry_run(*view.protocol, n_, 0, cur.config, cur.memory, choice, &d);
        std::vector<int> mon(cur.monitors);
        bool crossed = false;
        for (std::size_t i = 0; i < mon.size(); ++i) {
          mon[i] = update_segment_monitor(n_, mon[i], frame(cur.config.positions[i]),
                                          frame(out.after.positions[i]));
          if (mon[i] < 0) crossed = true, mon[i] = 0;
        }
        const bool good = !crossed && in_prison(out.after);
        row.push_back(intern({std::move(out.after), std::move(d.memory), std::move(mon), good}));
      }
    }
    succ_.push_back(std::move(row));
  }

  // Greatest fixed point: drop good states all of whose options leave the set.
  const std::size_t S = nodes.size();
  win_.assign(S, false);
  std::vector<int> alive(S, 0);
  std::vector<std::vector<int>> pred(S);
  for (std::size_t s = 0; s < S; ++s) {
    win_[s] = nodes[s].good;
    for (int y : succ_[s]) pred[static_cast<std::size_t>(y)].push_back(static_cast<int>(s));
  }
  std::deque<int> drop;
  for (std::size_t s = 0; s < S; ++s) {
    if (!win_[s]) {
      drop.push_back(static_cast<int>(s));
      continue;
    }
    for (int y : succ_[s]) alive[s] += nodes[static_cast<std::size_t>(y)].good ? 1 : 0;
    if (alive[s] == 0) {
      win_[s] = false;
      drop.push_back(static_cast<int>(s));
    }
  }
  // `alive` counts good successors; recount lazily as states fall.
  std::vector<bool> processed(S, false);
  while (!drop.empty()) {
    const auto y = static_cast<std::size_t>(drop.front());
    drop.pop_front();
    if (processed[y]) continue;
    processed[y] = true;
    if (!nodes[y].good) continue;  // never counted as alive
    for (int p : pred[y]) {
      const auto ps = static_cast<std::size_t>(p);
      if (!win_[ps]) continue;
      if (--alive[ps] == 0) {
        win_[ps] = false;
        drop.push_back(p);
      }
    }
  }
  winning_ = win_[0];
  monitors_ = mon0;
  last_ = init;
  solved_ = true;
}

std::optional<Edge> GateAdversary::choose(const AdversaryView& view) {
  if (!solved_) solve(view);
  if (!winning_) return fallback_.choose(view);
  for (std::size_t i = 0; i < monitors_.size(); ++i) {
    if (view.round == 0) break;
    const int m = update_segment_monitor(n_, monitors_[i], frame(last_.positions[i]),
                                         frame(view.config->positions[i]));
    monitors_[i] = m < 0 ? 0 : m;
  }
  last_ = *view.config;
  const auto it = index_.find(key(*view.config, view.memory, monitors_));
  if (it == index_.end()) return fallback_.choose(view);
  const auto s = static_cast<std::size_t>(it->second);
  for (std::size_t c = 0; c < succ_[s].size(); ++c)
    if (win_[static_cast<std::size_t>(succ_[s][c])]) return preference_[c];
  return fallback_.choose(view);
}

}  // namespace patrol
