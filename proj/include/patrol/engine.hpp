#pragma once

#include <iosfwd>
#include <optional>
#include <span>

#include "patrol/protocol.hpp"

namespace patrol {

/// What an adaptive scheduler sees before choosing this round's missing edge.
struct AdversaryView {
  int n = 0;
  Round round = 0;
  const Configuration* initial = nullptr;
  /// Configurations after rounds 0..round-1.
  std::span<const Configuration> history;
  const Configuration* config = nullptr;
  std::span<const AgentMemory> memory;
  const Protocol* protocol = nullptr;
};

class AdaptiveAdversary {
 public:
  virtual ~AdaptiveAdversary() = default;
  [[nodiscard]] virtual std::string name() const = 0;
  /// At most one edge; must be deterministic in the view (and its own past).
  virtual std::optional<Edge> choose(const AdversaryView& view) = 0;
};

/// Outcome of dry-running a protocol for one round under a candidate removal.
RoundOutcome dry_run(const Protocol& p, int n, Round round, const Configuration& config,
                     std::span<const AgentMemory> memory, std::optional<Edge> missing,
                     RoundDecision* decision = nullptr);

struct RoundRecord {
  Round round = 0;
  Configuration before;
  std::optional<Edge> missing;
  std::vector<Move> moves;
  std::vector<bool> blocked;
  Configuration after;
  std::vector<AgentMemory> memory_after;
};

struct ExecutionTrace {
  int n = 0;
  int k = 0;
  Configuration initial;
  std::vector<RoundRecord> records;

  [[nodiscard]] Round horizon() const { return static_cast<Round>(records.size()); }
  /// Each record's after-configuration is the next record's before-configuration.
  [[nodiscard]] bool continuous() const;
};

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ExecutionTrace run(const Protocol& protocol, const ObliviousSchedule& schedule,
                   const Configuration& initial, Round horizon);
ExecutionTrace run(const Protocol& protocol, AdaptiveAdversary& adversary, int n,
                   const Configuration& initial, Round horizon);

/// Per node, sorted visit rounds seeded with -1 (post-move positions).
struct VisitLog {
  int n = 0;
  Round horizon = 0;
  std::vector<std::vector<Round>> visits;
};

VisitLog build_visit_log(const ExecutionTrace& trace);

struct IdleReport {
  Round stabilization = 0;
  Round horizon = 0;
  /// Max over nodes of per_node_max_gap.
  Round idle = 0;
  Node worst_node = 0;
  /// Largest closed gap per node; horizon - stabilization + 1 if never visited.
  std::vector<Round> per_node_max_gap;
  /// Rounds since the last visit, measured at the horizon.
  std::vector<Round> open_gap;
  /// The open gap already exceeds every closed gap of that node.
  std::vector<bool> open_flags;
};

/// Gaps among visits at rounds >= r_s, with the seed visit moved to r_s - 1.
IdleReport idle_report(const VisitLog& log, Round r_s = 0);
IdleReport idle_time(const ExecutionTrace& trace, Round r_s = 0);
Round stable_idle(const ExecutionTrace& trace, Round r_s);

struct SwipeWalkerCheck {
  bool pass = false;
  int never_blocked = 0;
  int required = 0;
  /// Never-blocked walkers that did not see exactly h+1 distinct nodes.
  int wrong_coverage = 0;
};

/// n virtual walkers, one per node, all moving clockwise for h rounds from r.
SwipeWalkerCheck verify_swipe_walkers(const ScheduleOracle& schedule, int n, Round r, int h);

/// round,missing_edge,a{i}_pos,a{i}_move,a{i}_blocked with after-move positions.
void write_trace_csv(std::ostream& out, const ExecutionTrace& trace);

}  // namespace patrol
