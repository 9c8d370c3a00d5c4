#pragma once

#include <cstdint>
#include <unordered_map>

#include "patrol/engine.hpp"
#include "patrol/solver.hpp"

namespace patrol {

/// The same edge is missing in every round.
ObliviousSchedule fixed_edge_schedule(int n, Edge e);

/// Alternating start-to-end and end-to-start removal waves for two agents
/// starting on nodes 1 (a) and 0 (b). Up edges 1+i and down edges n-1-i,
/// i in [0, n/2-2]; period 4(n/2-1), up edges on even rounds, down on odd.
ObliviousSchedule wave_schedule(int n);
inline constexpr Node kWaveStartA = 1;
inline constexpr Node kWaveStartB = 0;

/// Each round misses a uniformly drawn edge or nothing; mt19937_64 reduced
/// with `%` so the sequence is identical on every platform.
ObliviousSchedule random_schedule(int n, Round horizon, std::uint64_t seed);

/// Confines one agent to its starting node and the clockwise neighbour by
/// removing whichever prison exit it is about to take.
class TrapAdversary final : public AdaptiveAdversary {
 public:
  explicit TrapAdversary(std::size_t target = 0) : target_(target) {}
  [[nodiscard]] std::string name() const override { return "trap"; }
  std::optional<Edge> choose(const AdversaryView& view) override;

 private:
  std::size_t target_;
};

/// Two-agent adversary in a frame where agent 0 starts on v_{n-1}: keeps some
/// agent inside the prison {v_{n-2}, v_{n-1}} and never lets an agent cross
/// the segment v_{n-3}..v_0 end to end. The strategy is the solution of that
/// safety game over the reachable positions, memories and crossing monitors;
/// among winning removals it prefers doing nothing, then the prison edges.
/// Falls back to trapping agent 0 if the game is lost from the start.
class GateAdversary final : public AdaptiveAdversary {
 public:
  explicit GateAdversary(int n, std::size_t budget = default_state_budget());
  [[nodiscard]] std::string name() const override { return "gate"; }
  std::optional<Edge> choose(const AdversaryView& view) override;

  /// Valid after the first choose().
  [[nodiscard]] bool winning() const { return winning_; }
  /// Real node of frame node f.
  [[nodiscard]] Node real(Node f) const { return (f + shift_) % n_; }
  [[nodiscard]] Node frame(Node v) const { return ((v - shift_) % n_ + n_) % n_; }

 private:
  void solve(const AdversaryView& view);
  [[nodiscard]] std::vector<std::int32_t> key(const Configuration& c,
                                              std::span<const AgentMemory> m,
                                              const std::vector<int>& monitors) const;

  int n_;
  std::size_t budget_;
  Node shift_ = 0;
  bool solved_ = false;
  bool winning_ = false;
  std::vector<int> monitors_;
  Configuration last_;
  std::vector<std::optional<Edge>> preference_;
  std::unordered_map<std::vector<std::int32_t>, int, KeyHash> index_;
  std::vector<std::vector<int>> succ_;
  std::vector<bool> win_;
  TrapAdversary fallback_{0};
};

/// Crossing monitor of the guarded segment {n-3, n-2, n-1, 0} (frame nodes):
/// 0 outside, 1 entered through 0, 2 entered through n-3, 3 inside from the start.
/// Returns -1 when the move completes an end-to-end traversal.
int update_segment_monitor(int n, int monitor, Node from, Node to);
int initial_segment_monitor(int n, Node at);

}  // namespace patrol
