#include "patrol/engine.hpp"

#include <algorithm>
#include <ostream>
#include <set>

namespace patrol {
namespace {

void check_initial(int n, const Configuration& c) {
  RingTopology ring(n);
  if (c.size() == 0) throw EngineError("at least one agent required");
  for (Node v : c.positions)
    if (v < 0 || v >= n) throw EngineError("initial position " + std::to_string(v) + " off ring");
}

template <class PickEdge>
ExecutionTrace run_loop(const Protocol& protocol, const ScheduleOracle* future,
                        const Configuration& initial, int n, Round horizon, PickEdge pick) {
  check_initial(n, initial);
  if (horizon < 0) throw EngineError("negative horizon");
  ExecutionTrace trace{n, static_cast<int>(initial.size()), initial, {}};
  trace.records.reserve(static_cast<std::size_t>(horizon));
  std::vector<Configuration> history;
  Configuration config = initial;
  auto memory = protocol.initial_memory(n, initial);

  for (Round r = 0; r < horizon; ++r) {
    const std::optional<Edge> missing = pick(r, config, memory, history);
    if (missing && (*missing < 0 || *missing >= n))
      throw EngineError("round " + std::to_string(r) + " removes edge outside the ring");
    const RoundInput in{n, r, &config, missing, memory, future};
    auto decision = protocol.step(in);
    if (decision.moves.size() != config.size() || decision.memory.size() != config.size())
      throw AlgorithmError(protocol.name() + " returned the wrong number of decisions");
    auto outcome = apply_round(n, config, decision.moves, missing);
    trace.records.push_back({r, config, missing, decision.moves, outcome.blocked, outcome.after,
                             decision.memory});
    config = std::move(outcome.after);
    memory = std::move(decision.memory);
    history.push_back(config);
  }
  return trace;
}

}  // namespace

RoundOutcome dry_run(const Protocol& p, int n, Round round, const Configuration& config,
                     std::span<const AgentMemory> memory, std::optional<Edge> missing,
                     RoundDecision* decision) {
  const RoundInput in{n, round, &config, missing, memory, nullptr};
  auto d = p.step(in);
  auto out = apply_round(n, config, d.moves, missing);
  if (decision) *decision = std::move(d);
  return out;
}

bool ExecutionTrace::continuous() const {
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& expected_before = i == 0 ? initial : records[i - 1].after;
    if (!(records[i].before == expected_before)) return false;
  }
  return true;
}

ExecutionTrace run(const Protocol& protocol, const ObliviousSchedule& schedule,
                   const Configuration& initial, Round horizon) {
  const int n = schedule.n();
  if (horizon > 0) {
    const auto check = validate_schedule(schedule, horizon);
    if (!check.ok) throw EngineError("invalid schedule: " + check.reason);
  }
  return run_loop(protocol, &schedule, initial, n, horizon,
                  [&](Round r, auto&, auto&, auto&) { return schedule.missing(r); });
}

ExecutionTrace run(const Protocol& protocol, AdaptiveAdversary& adversary, int n,
                   const Configuration& initial, Round horizon) {
  if (protocol.knowledge() == Knowledge::Known)
    throw EngineError(protocol.name() + " needs a known schedule, not an adaptive adversary");
  return run_loop(protocol, nullptr, initial, n, horizon,
                  [&](Round r, const Configuration& c, const std::vector<AgentMemory>& m,
                      const std::vector<Configuration>& h) {
                    return adversary.choose({n, r, &initial, h, &c, m, &protocol});
                  });
}

VisitLog build_visit_log(const ExecutionTrace& trace) {
  VisitLog log{trace.n, trace.horizon(),
               std::vector<std::vector<Round>>(static_cast<std::size_t>(trace.n), {-1})};
  for (const auto& rec : trace.records) {
    for (Node v : rec.after.positions) {
      auto& list = log.visits[static_cast<std::size_t>(v)];
      if (list.back() != rec.round) list.push_back(rec.round);
    }
  }
  return log;
}

IdleReport idle_report(const VisitLog& log, Round r_s) {
  if (r_s < 0) throw EngineError("stabilization round must be non-negative");
  const auto n = static_cast<std::size_t>(log.n);
  IdleReport rep;
  rep.stabilization = r_s;
  rep.horizon = log.horizon;
  rep.per_node_max_gap.assign(n, 0);
  rep.open_gap.assign(n, 0);
  rep.open_flags.assign(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    Round last = r_s - 1;
    Round best = 0;
    bool closed = false;
    for (Round t : log.visits[v]) {
      if (t < r_s) continue;
      best = std::max(best, t - last);
      last = t;
      closed = true;
    }
    rep.open_gap[v] = log.horizon - last;
    rep.per_node_max_gap[v] = closed ? best : log.horizon - r_s + 1;
    rep.open_flags[v] = !closed || rep.open_gap[v] > best;
    if (rep.per_node_max_gap[v] > rep.idle) {
      rep.idle = rep.per_node_max_gap[v];
      rep.worst_node = static_cast<Node>(v);
    }
  }
  return rep;
}

IdleReport idle_time(const ExecutionTrace& trace, Round r_s) {
  return idle_report(build_visit_log(trace), r_s);
}

Round stable_idle(const ExecutionTrace& trace, Round r_s) { return idle_time(trace, r_s).idle; }

SwipeWalkerCheck verify_swipe_walkers(const ScheduleOracle& schedule, int n, Round r, int h) {
  Configuration walkers;
  for (Node v = 0; v < n; ++v) walkers.positions.push_back(v);
  std::vector<bool> ever_blocked(static_cast<std::size_t>(n), false);
  std::vector<std::set<Node>> seen(static_cast<std::size_t>(n));
  for (Node v = 0; v < n; ++v) seen[static_cast<std::size_t>(v)].insert(v);
  const std::vector<Move> all_cw(static_cast<std::size_t>(n), Move::Cw);
  for (int t = 0; t < h; ++t) {
    auto out = apply_round(n, walkers, all_cw, schedule.missing_at(r + t));
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
      if (out.blocked[i]) ever_blocked[i] = true;
      seen[i].insert(out.after.positions[i]);
    }
    walkers = std::move(out.after);
  }
  SwipeWalkerCheck res;
  res.required = n - h;
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    if (ever_blocked[i]) continue;
    ++res.never_blocked;
    if (static_cast<int>(seen[i].size()) != h + 1) ++res.wrong_coverage;
  }
  res.pass = res.never_blocked >= res.required && res.wrong_coverage == 0;
  return res;
}

void write_trace_csv(std::ostream& out, const ExecutionTrace& trace) {
  out << "round,missing_edge";
  for (int i = 0; i < trace.k; ++i) out << ",a" << i << "_pos,a" << i << "_move,a" << i << "_blocked";
  out << '\n';
  for (const auto& rec : trace.records) {
    out << rec.round << ',';
    if (rec.missing) out << *rec.missing;
    for (std::size_t i = 0; i < rec.after.size(); ++i)
      out << ',' << rec.after.positions[i] << ',' << delta(rec.moves[i]) << ','
          << (rec.blocked[i] ? 1 : 0);
    out << '\n';
  }
}

}  // namespace patrol
