#pragma once

#include <array>
#include <optional>

#include "patrol/protocol.hpp"

namespace patrol {

/// What a local snapshot says about the two incident edges.
enum class SnapshotClass : int { Both = 0, CwMissing = 1, CcwMissing = 2 };

SnapshotClass classify_snapshot(const LocalSnapshot& s);
std::string to_string(SnapshotClass c);
std::optional<SnapshotClass> snapshot_class_from(const std::string& s);

struct FsmArc {
  int to = 0;
  Move move = Move::Stay;
};

/// Finite-state local-snapshot machine. `arcs[s][c]` is empty when the table
/// leaves that entry undefined (rejected by validation).
struct FsmSpec {
  std::string name = "custom";
  int states = 0;
  int initial = 0;
  std::vector<std::array<std::optional<FsmArc>, 3>> arcs;

  [[nodiscard]] const FsmArc& arc(int s, SnapshotClass c) const;
};

class FsmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws FsmError naming the first undefined or out-of-range entry.
void validate_fsm(const FsmSpec& spec);

/// Built-in machines: reverse-on-block, clockwise, consecutive-sweep,
/// oscillator, two-cycle-demo, idle.
FsmSpec fsm_of(const std::string& name);
std::vector<std::string> fsm_names();

class FsmProtocol final : public Protocol {
 public:
  explicit FsmProtocol(FsmSpec spec);

  [[nodiscard]] std::string name() const override { return spec_.name; }
  [[nodiscard]] Visibility visibility() const override { return Visibility::Local; }
  [[nodiscard]] std::vector<AgentMemory> initial_memory(int n,
                                                        const Configuration& c) const override;
  [[nodiscard]] RoundDecision step(const RoundInput& in) const override;
  [[nodiscard]] const FsmSpec& spec() const { return spec_; }

 private:
  FsmSpec spec_;
};

}  // namespace patrol
