#pragma once

// Independent reference computations used to cross-check library results.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "patrol/engine.hpp"
#include "patrol/protocol.hpp"
#include <optional>

namespace oracle {

/// Largest gap between consecutive visits of `v`, scanning the trace round by
/// round with the -1 seed; never-visited nodes score horizon + 1.
inline long long max_gap_linear(const patrol::ExecutionTrace& tr, int v, long long rs = 0) {
  long long last = rs - 1;
  long long best = -1;
  for (long long r = 0; r < static_cast<long long>(tr.records.size()); ++r) {
    const auto& p = tr.records[static_cast<std::size_t>(r)].after.positions;
    if (r < rs || std::find(p.begin(), p.end(), v) == p.end()) continue;
    best = std::max(best, r - last);
    last = r;
  }
  return best < 0 ? static_cast<long long>(tr.records.size()) - rs + 1 : best;
}

inline long long idle_linear(const patrol::ExecutionTrace& tr, long long rs = 0) {
  long long best = 0;
  for (int v = 0; v < tr.n; ++v) best = std::max(best, max_gap_linear(tr, v, rs));
  return best;
}

/// idle_linear plus the still-open gap of every node at the horizon.
inline long long idle_with_open(const patrol::ExecutionTrace& tr, long long rs = 0) {
  long long best = idle_linear(tr, rs);
  const long long h = static_cast<long long>(tr.records.size());
  for (int v = 0; v < tr.n; ++v) {
    long long last = rs - 1;
    for (long long r = rs; r < h; ++r) {
      const auto& p = tr.records[static_cast<std::size_t>(r)].after.positions;
      if (std::find(p.begin(), p.end(), v) != p.end()) last = r;
    }
    best = std::max(best, h - last);
  }
  return best;
}

/// Clockwise walkers from every node for h rounds; count the never-blocked ones.
inline int unblocked_walkers(const patrol::ScheduleOracle& s, int n, long long r, int h) {
  int count = 0;
  for (int start = 0; start < n; ++start) {
    bool ok = true;
    for (int t = 0; t < h && ok; ++t) {
      const auto e = s.missing_at(r + t);
      ok = !(e && *e == (start + t) % n);
    }
    count += ok ? 1 : 0;
  }
  return count;
}

/// Earliest round count after which all nodes were seen and `home` is occupied,
/// by plain breadth-first search over sets of (positions, visited) pairs.
inline long long explore_and_return(const patrol::ObliviousSchedule& s, int n,
                                    std::vector<int> start, int home, long long max_rounds) {
  using State = std::pair<std::vector<int>, std::set<int>>;
  std::set<State> layer;
  layer.insert({start, std::set<int>(start.begin(), start.end())});
  const std::size_t k = start.size();
  for (long long t = 0; t < max_rounds; ++t) {
    std::set<State> next;
    const auto miss = s.missing(t);
    for (const auto& [pos, seen] : layer) {
      std::vector<int> choice(k, -1);
      while (true) {
        std::vector<int> after = pos;
        for (std::size_t i = 0; i < k; ++i) {
          const int m = choice[i];
          if (m == 0) continue;
          const int edge = m == 1 ? pos[i] : (pos[i] + n - 1) % n;
          if (miss && *miss == edge) continue;
          after[i] = ((pos[i] + m) % n + n) % n;
        }
        auto seen2 = seen;
        seen2.insert(after.begin(), after.end());
        if (static_cast<int>(seen2.size()) == n &&
            std::find(after.begin(), after.end(), home) != after.end())
          return t + 1;
        next.insert({after, seen2});
        std::size_t i = 0;
        while (i < k && choice[i] == 1) choice[i++] = -1;
        if (i == k) break;
        ++choice[i];
      }
    }
    // Period-aware pruning is left to the library; keep this oracle simple.
    layer = std::move(next);
  }
  return -1;
}

/// Worst forcible gap per node by value iteration over a separately explored
/// state space: avoid_t(s) holds when the scheduler can keep the node empty for
/// t more rounds from s. nullopt = unbounded.
inline std::vector<std::optional<long long>> worst_gaps_by_iteration(
    const patrol::Protocol& p, int n, const patrol::Configuration& init) {
  using Key = std::pair<std::vector<int>, std::vector<std::vector<std::int32_t>>>;
  std::map<Key, int> id;
  std::vector<std::pair<patrol::Configuration, std::vector<patrol::AgentMemory>>> states;
  std::vector<std::vector<int>> succ;
  auto key = [](const patrol::Configuration& c, const std::vector<patrol::AgentMemory>& m) {
    Key k{c.positions, {}};
    for (const auto& w : m) k.second.push_back(w.words);
    return k;
  };
  auto intern = [&](const patrol::Configuration& c, std::vector<patrol::AgentMemory> m) {
    auto [it, fresh] = id.emplace(key(c, m), static_cast<int>(states.size()));
    if (fresh) states.emplace_back(c, std::move(m));
    return it->second;
  };
  intern(init, p.initial_memory(n, init));
  for (std::size_t s = 0; s < states.size(); ++s) {
    std::vector<int> out;
    for (int e = -1; e < n; ++e) {
      const auto miss = e < 0 ? std::nullopt : std::optional<int>(e);
      const auto cfg = states[s].first;
      const auto mem = states[s].second;
      const patrol::RoundInput in{n, 0, &cfg, miss, mem, nullptr};
      const auto d = p.step(in);
      const auto after = patrol::apply_round(n, cfg, d.moves, miss).after;
      out.push_back(intern(after, d.memory));
    }
    succ.push_back(std::move(out));
  }
  const std::size_t S = states.size();
  auto holds = [&](std::size_t s, int v) {
    const auto& pos = states[s].first.positions;
    return std::find(pos.begin(), pos.end(), v) != pos.end();
  };
  std::vector<std::optional<long long>> result(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    // best[s] = longest avoidance from s, capped at S+1 (= unbounded).
    std::vector<long long> avoid(S, 0), next(S);
    long long t = 0;
    std::vector<long long> longest(S, 0);
    for (; t <= static_cast<long long>(S); ++t) {
      bool any = false;
      for (std::size_t s = 0; s < S; ++s) {
        bool ok = false;
        for (int c : succ[s])
          if (!holds(static_cast<std::size_t>(c), v) && avoid[static_cast<std::size_t>(c)] >= t) ok = true;
        next[s] = ok ? t + 1 : avoid[s];
        any = any || ok;
      }
      avoid.swap(next);
      if (!any) break;
    }
    long long worst = 0;
    bool unbounded = false;
    for (std::size_t s = 0; s < S; ++s) {
      if (s != 0 && !holds(s, v)) continue;
      if (avoid[s] > static_cast<long long>(S)) unbounded = true;
      worst = std::max(worst, avoid[s] + 1);
    }
    if (!unbounded) result[static_cast<std::size_t>(v)] = worst;
  }
  return result;
}

}  // namespace oracle
