#include "patrol/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>

namespace patrol {

std::size_t default_state_budget() {
  if (const char* env = std::getenv("PATROLCTL_STATE_BUDGET")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 10'000'000;
}

std::vector<std::int32_t> GameState::key() const {
  std::vector<std::int32_t> k(config.positions.begin(), config.positions.end());
  for (const auto& m : memory) {
    k.push_back(static_cast<std::int32_t>(m.words.size()));
    k.insert(k.end(), m.words.begin(), m.words.end());
  }
  return k;
}

std::size_t KeyHash::operator()(const std::vector<std::int32_t>& v) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto x : v) {
    h ^= static_cast<std::uint32_t>(x);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

std::vector<std::optional<Edge>> all_choices(int n) {
  std::vector<std::optional<Edge>> c{std::nullopt};
  for (Edge e = 0; e < n; ++e) c.emplace_back(e);
  return c;
}

namespace {

struct Explored {
  GameGraph graph;
  std::vector<int> parent;
  std::vector<int> parent_choice;
};

Explored explore(const Protocol& protocol, int n, const Configuration& initial,
                 const std::vector<std::optional<Edge>>& choices, std::size_t budget) {
  if (!protocol.finite_memory())
    throw AlgorithmError(protocol.name() + " keeps unbounded memory; no finite game graph");
  if (choices.empty()) throw AlgorithmError("scheduler needs at least one option");
  RingTopology ring(n);
  Explored ex;
  auto& g = ex.graph;
  g.n = n;
  g.choices = choices;
  std::unordered_map<std::vector<std::int32_t>, int, KeyHash> index;

  auto intern = [&](GameState s, int parent, int choice) {
    auto key = s.key();
    auto [it, fresh] = index.try_emplace(std::move(key), static_cast<int>(g.states.size()));
    if (fresh) {
      if (g.states.size() >= budget)
        throw BudgetError("game graph exceeds the state budget of " + std::to_string(budget));
      g.states.push_back(std::move(s));
      ex.parent.push_back(parent);
      ex.parent_choice.push_back(choice);
    }
    return it->second;
  };

  intern({initial, protocol.initial_memory(n, initial)}, -1, -1);
  for (std::size_t s = 0; s < g.states.size(); ++s) {
    std::vector<int> row;
    row.reserve(choices.size());
    for (std::size_t c = 0; c < choices.size(); ++c) {
      const auto& st = g.states[s];
      RoundDecision d;
      auto out = dry_run(protocol, n, 0, st.config, st.memory, choices[c], &d);
      row.push_back(intern({std::move(out.after), std::move(d.memory)}, static_cast<int>(s),
                           static_cast<int>(c)));
    }
    g.succ.push_back(std::move(row));
  }
  return ex;
}

constexpr Round kInf = std::numeric_limits<Round>::max();

// Longest number of rounds until some state occupying the target is entered,
// for every state not occupying it; kInf when a target-free cycle is reachable.
std::vector<Round> longest_avoiding(const GameGraph& g, const std::vector<bool>& occ) {
  const std::size_t S = g.states.size();
  std::vector<Round> f(S, -1);
  std::vector<std::uint8_t> color(S, 0);
  std::vector<std::pair<int, std::size_t>> stack;
  for (std::size_t root = 0; root < S; ++root) {
    if (occ[root] || color[root]) continue;
    stack.emplace_back(static_cast<int>(root), 0);
    color[root] = 1;
    f[root] = 0;
    while (!stack.empty()) {
      auto& [s, c] = stack.back();
      const auto& row = g.succ[static_cast<std::size_t>(s)];
      if (c < row.size()) {
        const auto y = static_cast<std::size_t>(row[c++]);
        Round val;
        if (occ[y]) {
          val = 1;
        } else if (color[y] == 1) {
          val = kInf;
        } else if (color[y] == 0) {
          color[y] = 1;
          f[y] = 0;
          stack.emplace_back(static_cast<int>(y), 0);
          continue;
        } else {
          val = f[y] == kInf ? kInf : f[y] + 1;
        }
        f[static_cast<std::size_t>(s)] = std::max(f[static_cast<std::size_t>(s)], val);
        continue;
      }
      color[static_cast<std::size_t>(s)] = 2;
      const auto done = static_cast<std::size_t>(s);
      stack.pop_back();
      if (!stack.empty()) {
        const auto p = static_cast<std::size_t>(stack.back().first);
        const Round val = f[done] == kInf ? kInf : f[done] + 1;
        f[p] = std::max(f[p], val);
      }
    }
  }
  return f;
}

Round step_value(const GameGraph& g, const std::vector<bool>& occ, const std::vector<Round>& f,
                 std::size_t s, std::size_t c) {
  const auto y = static_cast<std::size_t>(g.succ[s][c]);
  if (occ[y]) return 1;
  return f[y] == kInf ? kInf : f[y] + 1;
}

}  // namespace

GameGraph build_game_graph(const Protocol& protocol, int n, const Configuration& initial,
                           const std::vector<std::optional<Edge>>& choices, std::size_t budget) {
  return explore(protocol, n, initial, choices, budget).graph;
}

GameSolverResult solve_worst_case(const Protocol& protocol, int n, const Configuration& initial,
                                  const SolverOptions& options) {
  const auto choices = options.choices ? *options.choices : all_choices(n);
  const auto ex = explore(protocol, n, initial, choices, options.budget);
  const auto& g = ex.graph;
  const std::size_t S = g.states.size();

  GameSolverResult res;
  res.states = S;
  res.per_node.assign(static_cast<std::size_t>(n), std::nullopt);
  Round best = -1;
  std::size_t best_source = 0;
  std::vector<bool> best_occ;
  std::vector<Round> best_f;

  for (Node v = 0; v < n; ++v) {
    std::vector<bool> occ(S);
    for (std::size_t s = 0; s < S; ++s) {
      const auto& p = g.states[s].config.positions;
      occ[s] = std::find(p.begin(), p.end(), v) != p.end();
    }
    const auto f = longest_avoiding(g, occ);
    Round node_best = -1;
    std::size_t node_source = 0;
    for (std::size_t s = 0; s < S; ++s) {
      if (s != 0 && !occ[s]) continue;
      Round gap = 0;
      for (std::size_t c = 0; c < choices.size(); ++c) gap = std::max(gap, step_value(g, occ, f, s, c));
      if (gap > node_best) node_best = gap, node_source = s;
      if (gap == kInf) break;
    }
    res.per_node[static_cast<std::size_t>(v)] =
        node_best == kInf ? std::nullopt : std::optional<Round>(node_best);
    if (node_best > best) {
      best = node_best;
      best_source = node_source;
      best_occ = std::move(occ);
      best_f = f;
      res.target_node = v;
    }
  }

  // Shortest prefix to the source of the worst gap.
  std::vector<std::optional<Edge>> prefix;
  for (int s = static_cast<int>(best_source); ex.parent[static_cast<std::size_t>(s)] >= 0;
       s = ex.parent[static_cast<std::size_t>(s)])
    prefix.push_back(choices[static_cast<std::size_t>(ex.parent_choice[static_cast<std::size_t>(s)])]);
  std::reverse(prefix.begin(), prefix.end());
  res.witness = prefix;

  std::size_t s = best_source;
  std::vector<int> seen_at(S, -1);
  while (true) {
    std::size_t pick = 0;
    Round val = -1;
    for (std::size_t c = 0; c < choices.size(); ++c) {
      const Round x = step_value(g, best_occ, best_f, s, c);
      if (x > val) val = x, pick = c;
    }
    res.witness.push_back(choices[pick]);
    const auto y = static_cast<std::size_t>(g.succ[s][pick]);
    if (best_occ[y]) break;
    if (best == kInf) {
      seen_at[s] = static_cast<int>(res.witness.size()) - 1;
      if (seen_at[y] >= 0) {
        res.lasso_start = static_cast<std::size_t>(seen_at[y]);
        break;
      }
    }
    s = y;
  }
  if (best != kInf) res.worst_idle = best;
  return res;
}

ReplayCheck replay_witness(const Protocol& protocol, int n, const Configuration& initial,
                           const GameSolverResult& result, int unroll) {
  ObliviousSchedule sched(n);
  std::vector<std::optional<Edge>> script = result.witness;
  if (!result.worst_idle) {
    if (!result.lasso_start) return {false, 0, "unbounded result without a lasso"};
    const std::vector<std::optional<Edge>> cycle(
        result.witness.begin() + static_cast<std::ptrdiff_t>(*result.lasso_start),
        result.witness.end());
    for (int i = 0; i < unroll; ++i) script.insert(script.end(), cycle.begin(), cycle.end());
  }
  for (std::size_t r = 0; r < script.size(); ++r)
    if (script[r]) sched.remove(static_cast<Round>(r), *script[r]);
  const auto trace = run(protocol, sched, initial, static_cast<Round>(script.size()));
  const auto rep = idle_time(trace);
  const auto v = static_cast<std::size_t>(result.target_node);
  if (result.worst_idle) {
    const Round got = rep.per_node_max_gap[v];
    const bool ok = got == *result.worst_idle && rep.idle == *result.worst_idle;
    return {ok, got,
            "replayed gap at node " + std::to_string(v) + " is " + std::to_string(got) +
                ", solver said " + std::to_string(*result.worst_idle)};
  }
  const Round open = rep.open_gap[v];
  const Round cycle_len =
      static_cast<Round>(result.witness.size() - *result.lasso_start);
  const bool ok = cycle_len > 0 && open > static_cast<Round>(unroll) * cycle_len;
  return {ok, open,
          "node " + std::to_string(v) + " unvisited for the last " + std::to_string(open) +
              " rounds of the unrolled lasso"};
}

std::optional<Round> offline_opt_search(const ObliviousSchedule& schedule, int n,
                                        const Configuration& start, Node home,
                                        std::uint64_t budget) {
  RingTopology ring(n);
  const std::size_t k = start.size();
  if (k == 0) throw AlgorithmError("at least one agent required");
  if (n > 30) throw BudgetError("visited mask limited to 30 nodes");
  // Aperiodic schedules become static after their last entry.
  const Round phases = schedule.period() ? *schedule.period() : schedule.last_entry_round() + 2;
  std::uint64_t pos_count = 1;
  for (std::size_t i = 0; i < k; ++i) pos_count *= static_cast<std::uint64_t>(n);
  const std::uint64_t full = (1ULL << n) - 1;
  const std::uint64_t total = pos_count * (full + 1) * static_cast<std::uint64_t>(phases);
  if (total > budget)
    throw BudgetError("offline search space " + std::to_string(total) + " exceeds budget " +
                      std::to_string(budget));

  auto phase_of = [&](Round t) {
    if (schedule.period()) return t % phases;
    return std::min<Round>(t, phases - 1);
  };
  auto encode_pos = [&](const std::vector<Node>& p) {
    std::uint64_t code = 0;
    for (Node v : p) code = code * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(v);
    return code;
  };
  auto decode_pos = [&](std::uint64_t code) {
    std::vector<Node> p(k);
    for (std::size_t i = k; i-- > 0;) {
      p[i] = static_cast<Node>(code % static_cast<std::uint64_t>(n));
      code /= static_cast<std::uint64_t>(n);
    }
    return p;
  };
  auto mask_of = [](const std::vector<Node>& p) {
    std::uint64_t m = 0;
    for (Node v : p) m |= 1ULL << v;
    return m;
  };
  auto goal = [&](const std::vector<Node>& p, std::uint64_t mask) {
    return mask == full && std::find(p.begin(), p.end(), home) != p.end();
  };

  std::vector<bool> seen(total, false);
  auto slot = [&](std::uint64_t pc, std::uint64_t mask, Round ph) {
    return (pc * (full + 1) + mask) * static_cast<std::uint64_t>(phases) +
           static_cast<std::uint64_t>(ph);
  };
  std::vector<std::pair<std::uint64_t, std::uint64_t>> layer{
      {encode_pos(start.positions), mask_of(start.positions)}};
  if (goal(start.positions, layer[0].second)) return 0;

  std::size_t joint = 1;
  for (std::size_t i = 0; i < k; ++i) joint *= 3;
  for (Round t = 0; !layer.empty(); ++t) {
    const auto missing = schedule.missing(t);
    const Round next_phase = phase_of(t + 1);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> next;
    for (const auto& [pc, mask] : layer) {
      const auto pos = decode_pos(pc);
      for (std::size_t j = 0; j < joint; ++j) {
        std::vector<Move> moves(k);
        std::size_t code = j;
        for (std::size_t i = 0; i < k; ++i, code /= 3) moves[i] = static_cast<Move>(static_cast<int>(code % 3) - 1);
        const auto after = apply_round(n, Configuration{pos}, moves, missing).after.positions;
        const auto m2 = mask | mask_of(after);
        if (goal(after, m2)) return t + 1;
        const auto pc2 = encode_pos(after);
        const auto id = slot(pc2, m2, next_phase);
        if (seen[id]) continue;
        seen[id] = true;
        next.emplace_back(pc2, m2);
      }
    }
    layer = std::move(next);
  }
  return std::nullopt;
}

}  // namespace patrol
