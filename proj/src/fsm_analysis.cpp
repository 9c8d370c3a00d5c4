#include "patrol/fsm_analysis.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace patrol {

TransitionGraph build_transition_graph(const FsmSpec& spec) {
  if (spec.states < 1) throw FsmError("machine needs at least one state");
  if (static_cast<int>(spec.arcs.size()) != spec.states)
    throw FsmError("transition table row count does not match the state count");
  for (int s = 0; s < spec.states; ++s)
    if (!spec.arcs[static_cast<std::size_t>(s)][0])
      throw FsmError("fault-free sink: state " + std::to_string(s) +
                     " has no arc for the both-present snapshot");
  validate_fsm(spec);
  TransitionGraph g{spec.states, spec.initial, {}};
  for (int s = 0; s < spec.states; ++s)
    for (int c = 0; c < 3; ++c) {
      const auto cls = static_cast<SnapshotClass>(c);
      const auto& a = spec.arc(s, cls);
      g.arcs.push_back({s, cls, a.to, a.move});
    }
  return g;
}

std::vector<int> CycleInfo::vertices() const {
  std::vector<int> v;
  for (const auto& a : arcs) v.push_back(a.from);
  return v;
}

CycleInfo make_cycle(std::vector<Arc> arcs) {
  CycleInfo c;
  c.fault_free = std::all_of(arcs.begin(), arcs.end(), [](const Arc& a) { return a.fault_free(); });
  for (const auto& a : arcs) c.displacement += delta(a.move);
  c.arcs = std::move(arcs);
  return c;
}

InitialCycle initial_fault_free_cycle(const TransitionGraph& g) {
  std::vector<int> seen_at(static_cast<std::size_t>(g.states), -1);
  std::vector<Arc> walk;
  int s = g.initial;
  while (seen_at[static_cast<std::size_t>(s)] < 0) {
    seen_at[static_cast<std::size_t>(s)] = static_cast<int>(walk.size());
    walk.push_back(g.arc(s, SnapshotClass::Both));
    s = walk.back().to;
  }
  const auto split = walk.begin() + seen_at[static_cast<std::size_t>(s)];
  return {std::vector<Arc>(walk.begin(), split), make_cycle(std::vector<Arc>(split, walk.end()))};
}

std::vector<CycleInfo> simple_cycles(const TransitionGraph& g, std::size_t limit) {
  std::vector<CycleInfo> out;
  std::vector<bool> on_path(static_cast<std::size_t>(g.states), false);
  std::vector<Arc> path;
  std::function<void(int, int)> dfs = [&](int start, int v) {
    for (int c = 0; c < 3 && out.size() < limit; ++c) {
      const Arc& a = g.arc(v, static_cast<SnapshotClass>(c));
      if (a.to == start) {
        path.push_back(a);
        out.push_back(make_cycle(path));
        path.pop_back();
      } else if (a.to > start && !on_path[static_cast<std::size_t>(a.to)]) {
        on_path[static_cast<std::size_t>(a.to)] = true;
        path.push_back(a);
        dfs(start, a.to);
        path.pop_back();
        on_path[static_cast<std::size_t>(a.to)] = false;
      }
    }
  };
  for (int s = 0; s < g.states && out.size() < limit; ++s) {
    on_path[static_cast<std::size_t>(s)] = true;
    dfs(s, s);
    on_path[static_cast<std::size_t>(s)] = false;
  }
  return out;
}

std::vector<CycleInfo> fault_free_cycles(const TransitionGraph& g) {
  const auto S = static_cast<std::size_t>(g.states);
  std::vector<int> walk_id(S, -1);
  std::vector<CycleInfo> out;
  for (int s0 = 0; s0 < g.states; ++s0) {
    if (walk_id[static_cast<std::size_t>(s0)] >= 0) continue;
    int s = s0;
    while (walk_id[static_cast<std::size_t>(s)] < 0) {
      walk_id[static_cast<std::size_t>(s)] = s0;
      s = g.arc(s, SnapshotClass::Both).to;
    }
    if (walk_id[static_cast<std::size_t>(s)] != s0) continue;  // joined an older walk
    std::vector<Arc> arcs;
    int v = s;
    do {
      arcs.push_back(g.arc(v, SnapshotClass::Both));
      v = arcs.back().to;
    } while (v != s);
    // Start at the smallest vertex for a numbering-independent listing.
    const auto first = std::min_element(arcs.begin(), arcs.end(),
                                        [](const Arc& a, const Arc& b) { return a.from < b.from; });
    std::rotate(arcs.begin(), first, arcs.end());
    out.push_back(make_cycle(std::move(arcs)));
  }
  return out;
}

std::vector<std::vector<int>> strongly_connected_components(const TransitionGraph& g) {
  const auto S = static_cast<std::size_t>(g.states);
  std::vector<int> index(S, -1), low(S, 0);
  std::vector<bool> on_stack(S, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;
  int counter = 0;
  for (int root = 0; root < g.states; ++root) {
    if (index[static_cast<std::size_t>(root)] >= 0) continue;
    std::vector<std::pair<int, int>> call{{root, 0}};
    index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = true;
    while (!call.empty()) {
      auto& [v, c] = call.back();
      const auto vi = static_cast<std::size_t>(v);
      if (c < 3) {
        const int w = g.arc(v, static_cast<SnapshotClass>(c++)).to;
        const auto wi = static_cast<std::size_t>(w);
        if (index[wi] < 0) {
          index[wi] = low[wi] = counter++;
          stack.push_back(w);
          on_stack[wi] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[wi]) {
          low[vi] = std::min(low[vi], index[wi]);
        }
        continue;
      }
      if (low[vi] == index[vi]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
      const int done = v;
      call.pop_back();
      if (!call.empty()) {
        const auto p = static_cast<std::size_t>(call.back().first);
        low[p] = std::min(low[p], low[static_cast<std::size_t>(done)]);
      }
    }
  }
  return comps;
}

std::string to_string(Verdict v) {
  return v == Verdict::NotPatrolling ? "NOT_PATROLLING" : "LOWER_BOUND";
}

namespace {

// Breadth-first parents over all arcs from `from`.
std::vector<std::optional<Arc>> bfs_parents(const TransitionGraph& g, int from,
                                            std::vector<int>& dist) {
  const auto S = static_cast<std::size_t>(g.states);
  std::vector<std::optional<Arc>> parent(S);
  dist.assign(S, -1);
  std::deque<int> q{from};
  dist[static_cast<std::size_t>(from)] = 0;
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    for (int c = 0; c < 3; ++c) {
      const Arc& a = g.arc(v, static_cast<SnapshotClass>(c));
      const auto w = static_cast<std::size_t>(a.to);
      if (dist[w] >= 0) continue;
      dist[w] = dist[static_cast<std::size_t>(v)] + 1;
      parent[w] = a;
      q.push_back(a.to);
    }
  }
  return parent;
}

std::vector<Arc> path_to(const std::vector<std::optional<Arc>>& parent, int from, int to) {
  std::vector<Arc> path;
  for (int v = to; v != from; v = parent[static_cast<std::size_t>(v)]->from)
    path.push_back(*parent[static_cast<std::size_t>(v)]);
  std::reverse(path.begin(), path.end());
  return path;
}

// Rotate so the cycle starts at its vertex closest to the BFS source.
void rotate_to_nearest(CycleInfo& c, const std::vector<int>& dist) {
  const auto first = std::min_element(c.arcs.begin(), c.arcs.end(), [&](const Arc& a, const Arc& b) {
    return dist[static_cast<std::size_t>(a.from)] < dist[static_cast<std::size_t>(b.from)];
  });
  std::rotate(c.arcs.begin(), first, c.arcs.end());
}

}  // namespace

Classification classify(const TransitionGraph& g, int k, int memory_bits) {
  if (k < 1) throw AnalysisError("at least one agent required");
  if (memory_bits < 0) throw AnalysisError("memory bits must be non-negative");
  if (memory_bits < 31 && g.states > (1 << memory_bits))
    throw AnalysisError(std::to_string(g.states) + " states do not fit in " +
                        std::to_string(memory_bits) + " bits of memory");
  Classification out;
  out.states = g.states;
  out.agents = k;
  out.memory_bits = memory_bits;
  out.certificate.initial = initial_fault_free_cycle(g);
  const int origin = out.certificate.initial.cycle.arcs.front().from;
  std::vector<int> dist;
  const auto parent = bfs_parents(g, origin, dist);

  auto reachable = [&](const CycleInfo& c) { return dist[static_cast<std::size_t>(c.arcs.front().from)] >= 0; };
  auto ff = fault_free_cycles(g);
  std::optional<CycleInfo> zero;
  for (auto& c : ff) {
    if (!reachable(c) || c.displacement != 0) continue;
    rotate_to_nearest(c, dist);
    if (!zero || dist[static_cast<std::size_t>(c.arcs.front().from)] <
                     dist[static_cast<std::size_t>(zero->arcs.front().from)])
      zero = c;
  }

  const auto comps = strongly_connected_components(g);
  std::vector<int> comp_of(static_cast<std::size_t>(g.states));
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (int v : comps[i]) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
  auto component_of = [&](int v) { return comps[static_cast<std::size_t>(comp_of[static_cast<std::size_t>(v)])]; };

  if (zero) {
    out.verdict = Verdict::NotPatrolling;
    out.certificate.cycle = *zero;
  } else {
    // A terminal component reachable from the initial cycle; fault-free
    // walks inside it cannot leave, so it holds a fault-free cycle.
    std::optional<std::size_t> terminal;
    for (std::size_t i = 0; i < comps.size() && !terminal; ++i) {
      if (dist[static_cast<std::size_t>(comps[i].front())] < 0) continue;
      bool closed = true;
      for (int v : comps[i])
        for (int c = 0; c < 3; ++c)
          if (comp_of[static_cast<std::size_t>(g.arc(v, static_cast<SnapshotClass>(c)).to)] !=
              static_cast<int>(i))
            closed = false;
      if (closed) terminal = i;
    }
    for (auto& c : ff) {
      if (comp_of[static_cast<std::size_t>(c.arcs.front().from)] != static_cast<int>(*terminal)) continue;
      rotate_to_nearest(c, dist);
      out.certificate.cycle = c;
      break;
    }
    out.verdict = Verdict::LowerBound;
  }
  const int target = out.certificate.cycle.arcs.front().from;
  out.certificate.path = path_to(parent, origin, target);
  out.certificate.component = component_of(target);
  return out;
}

namespace {

bool arcs_exist(const TransitionGraph& g, const std::vector<Arc>& arcs) {
  return std::all_of(arcs.begin(), arcs.end(), [&](const Arc& a) {
    return a.from >= 0 && a.from < g.states && g.arc(a.from, a.cls) == a;
  });
}

bool chained(const std::vector<Arc>& arcs, int from, int to) {
  int at = from;
  for (const auto& a : arcs) {
    if (a.from != at) return false;
    at = a.to;
  }
  return at == to;
}

bool cycle_ok(const TransitionGraph& g, const CycleInfo& c) {
  if (c.arcs.empty() || !arcs_exist(g, c.arcs)) return false;
  if (!chained(c.arcs, c.arcs.front().from, c.arcs.front().from)) return false;
  const auto again = make_cycle(c.arcs);
  return again.fault_free && c.fault_free && again.displacement == c.displacement;
}

}  // namespace

bool certificate_replays(const TransitionGraph& g, const Classification& c) {
  const auto& cert = c.certificate;
  const auto& init = cert.initial;
  if (!cycle_ok(g, init.cycle) || !cycle_ok(g, cert.cycle)) return false;
  if (!arcs_exist(g, init.prefix) || !arcs_exist(g, cert.path)) return false;
  if (!std::all_of(init.prefix.begin(), init.prefix.end(), [](const Arc& a) { return a.fault_free(); }))
    return false;
  if (!chained(init.prefix, g.initial, init.cycle.arcs.front().from)) return false;
  if (!chained(cert.path, init.cycle.arcs.front().from, cert.cycle.arcs.front().from)) return false;
  const bool zero = cert.cycle.displacement == 0;
  return zero == (c.verdict == Verdict::NotPatrolling);
}

CrossValidation cross_validate(const Classification& c, const FsmSpec& spec, int n, int k,
                               std::size_t budget) {
  const FsmProtocol machine(spec);
  SolverOptions opts;
  opts.budget = budget;
  const auto res = solve_worst_case(machine, n, uniform_configuration(n, k), opts);
  CrossValidation cv;
  cv.solver_worst = res.worst_idle;
  const long long bound = c.bound_value(n);
  cv.vacuous = bound < 1;
  const std::string solver = res.worst_idle ? std::to_string(*res.worst_idle) : "unbounded";
  if (c.verdict == Verdict::NotPatrolling) {
    cv.pass = !res.worst_idle;
    cv.detail = "solver reports " + solver + "; not-patrolling verdict needs unbounded";
  } else {
    cv.pass = res.worst_idle && *res.worst_idle >= std::max(1LL, bound);
    cv.detail = "solver reports " + solver + "; lower-bound verdict needs a finite value >= " +
                std::to_string(std::max(1LL, bound)) + (cv.vacuous ? " (bound vacuous)" : "");
  }
  return cv;
}

}  // namespace patrol
