#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace patrol {

using Node = int;
using Edge = int;
using Round = std::int64_t;

/// Clockwise is the direction of increasing node index.
enum class Direction { Cw, Ccw };

enum class Move : int { Ccw = -1, Stay = 0, Cw = 1 };

inline int delta(Move m) { return static_cast<int>(m); }
inline Move reverse(Move m) { return static_cast<Move>(-delta(m)); }
inline Move toward(Direction d) { return d == Direction::Cw ? Move::Cw : Move::Ccw; }

class RingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RingTopology {
  int n = 0;

  explicit RingTopology(int nodes);

  // Edge j joins node j and node j+1 (mod n).
  [[nodiscard]] Edge cw_edge(Node v) const { return v; }
  [[nodiscard]] Edge ccw_edge(Node v) const { return (v + n - 1) % n; }
  [[nodiscard]] Node step(Node v, Move m) const { return ((v + delta(m)) % n + n) % n; }
  /// Edge an agent at `v` needs for move `m`; nullopt for Stay.
  [[nodiscard]] std::optional<Edge> edge_for(Node v, Move m) const;
};

int ring_distance(int n, Node u, Node v, Direction dir);
/// min(cw, ccw) distance.
int ring_gap(int n, Node u, Node v);

struct Configuration {
  std::vector<Node> positions;

  [[nodiscard]] std::size_t size() const { return positions.size(); }
  bool operator==(const Configuration&) const = default;
};

/// Gaps between consecutive agents in clockwise order, all in {floor(n/k), ceil(n/k)}.
bool is_uniform(int n, const Configuration& c);
/// k agents anchored at `anchor`, larger gaps first.
Configuration uniform_configuration(int n, int k, Node anchor = 0);
/// Gap sequence of the uniform pattern, larger gaps first.
std::vector<int> uniform_gaps(int n, int k);
bool is_injective(const Configuration& c);

/// Read access to the missing edge of any round. KNOWN algorithms receive it.
class ScheduleOracle {
 public:
  virtual ~ScheduleOracle() = default;
  [[nodiscard]] virtual std::optional<Edge> missing_at(Round r) const = 0;
};

/// A round-indexed set of edge removals. Rounds with no entry keep every edge.
/// More than one entry per round is representable so that invalid files can be
/// reported instead of silently truncated.
class ObliviousSchedule : public ScheduleOracle {
 public:
  ObliviousSchedule() = default;
  explicit ObliviousSchedule(int n, std::optional<Round> period = std::nullopt);

  void remove(Round r, Edge e);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] std::optional<Round> period() const { return period_; }
  /// First removed edge at round r (after period reduction).
  [[nodiscard]] std::optional<Edge> missing(Round r) const;
  [[nodiscard]] std::optional<Edge> missing_at(Round r) const override { return missing(r); }
  [[nodiscard]] std::vector<Edge> missing_all(Round r) const;
  /// Explicit entries, period-reduced rounds.
  [[nodiscard]] const std::multimap<Round, Edge>& entries() const { return entries_; }
  /// Last round with an explicit entry, or -1. Aperiodic schedules are
  /// fault-free past this point.
  [[nodiscard]] Round last_entry_round() const;

 private:
  [[nodiscard]] Round reduce(Round r) const;

  int n_ = 0;
  std::optional<Round> period_;
  std::multimap<Round, Edge> entries_;
};

struct ScheduleCheck {
  bool ok = true;
  std::optional<Round> round;
  std::string reason;
};

ScheduleCheck validate_schedule(const ObliviousSchedule& s, Round horizon);

struct RoundOutcome {
  Configuration after;
  std::vector<bool> blocked;
};

/// Simultaneous movement; an agent whose required edge is missing stays and is
/// flagged blocked.
RoundOutcome apply_round(int n, const Configuration& config, const std::vector<Move>& moves,
                         std::optional<Edge> missing);

/// True when an agent at v issuing m would hit the missing edge.
bool would_block(int n, Node v, Move m, std::optional<Edge> missing);

struct LocalSnapshot {
  int agents_here = 0;
  bool cw_present = true;
  bool ccw_present = true;
};

struct GlobalSnapshot {
  int n = 0;
  std::optional<Edge> missing_edge;
  std::vector<Node> positions;
  std::size_t own_index = 0;

  [[nodiscard]] Node own() const { return positions[own_index]; }
};

enum class Visibility { Local, Global };

LocalSnapshot local_snapshot(int n, const Configuration& c, std::optional<Edge> missing,
                             std::size_t agent);
GlobalSnapshot global_snapshot(int n, const Configuration& c, std::optional<Edge> missing,
                               std::size_t agent);
std::variant<LocalSnapshot, GlobalSnapshot> take_snapshot(int n, const Configuration& c,
                                                          std::optional<Edge> missing,
                                                          std::size_t agent, Visibility vis);

}  // namespace patrol
