#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "patrol/ring.hpp"

namespace patrol {

/// Persistent memory of one agent, flattened to words so that game-graph
/// search can hash it. Each algorithm owns its own typed state and its
/// encoding into these words.
struct AgentMemory {
  std::vector<std::int32_t> words;

  bool operator==(const AgentMemory&) const = default;
};

enum class Knowledge { Unknown, Known };

struct RoundInput {
  int n = 0;
  Round round = 0;
  const Configuration* config = nullptr;
  std::optional<Edge> missing;
  std::span<const AgentMemory> memory;
  const ScheduleOracle* future = nullptr;
};

struct RoundDecision {
  std::vector<Move> moves;
  std::vector<AgentMemory> memory;
};

class AlgorithmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A deterministic patrolling algorithm. `step` evaluates the Compute phase of
/// every agent for one round; each agent only reads what its snapshot (and, for
/// KNOWN algorithms, the oracle) gives it.
class Protocol {
 public:
  virtual ~Protocol() = default;

  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual Visibility visibility() const = 0;
  [[nodiscard]] virtual Knowledge knowledge() const { return Knowledge::Unknown; }
  /// False when the memory carries unbounded counters (no finite game graph).
  [[nodiscard]] virtual bool finite_memory() const { return true; }

  [[nodiscard]] virtual std::vector<AgentMemory> initial_memory(int n,
                                                                const Configuration& c) const = 0;
  [[nodiscard]] virtual RoundDecision step(const RoundInput& in) const = 0;
};

using ProtocolPtr = std::shared_ptr<const Protocol>;

/// Known names: pingpong, kpingpong, place-and-swipe, spread, clockwise,
/// consecutive-sweep, reverse-on-block, oscillator, idle.
ProtocolPtr make_protocol(const std::string& name);
std::vector<std::string> protocol_names();

}  // namespace patrol
