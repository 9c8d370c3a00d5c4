#include "patrol/fsm.hpp"

namespace patrol {

SnapshotClass classify_snapshot(const LocalSnapshot& s) {
  if (!s.cw_present) return SnapshotClass::CwMissing;
  if (!s.ccw_present) return SnapshotClass::CcwMissing;
  return SnapshotClass::Both;
}

std::string to_string(SnapshotClass c) {
  switch (c) {
    case SnapshotClass::Both: return "both";
    case SnapshotClass::CwMissing: return "cwMissing";
    case SnapshotClass::CcwMissing: return "ccwMissing";
  }
  return "?";
}

std::optional<SnapshotClass> snapshot_class_from(const std::string& s) {
  if (s == "both") return SnapshotClass::Both;
  if (s == "cwMissing") return SnapshotClass::CwMissing;
  if (s == "ccwMissing") return SnapshotClass::CcwMissing;
  return std::nullopt;
}

const FsmArc& FsmSpec::arc(int s, SnapshotClass c) const {
  const auto& a = arcs.at(static_cast<std::size_t>(s))[static_cast<std::size_t>(c)];
  if (!a) throw FsmError("non-total transition table: state " + std::to_string(s) + " has no " +
                         to_string(c) + " arc");
  return *a;
}

void validate_fsm(const FsmSpec& spec) {
  if (spec.states < 1) throw FsmError("machine needs at least one state");
  if (static_cast<int>(spec.arcs.size()) != spec.states)
    throw FsmError("transition table has " + std::to_string(spec.arcs.size()) + " rows for " +
                   std::to_string(spec.states) + " states");
  if (spec.initial < 0 || spec.initial >= spec.states) throw FsmError("initial state out of range");
  for (int s = 0; s < spec.states; ++s) {
    for (int c = 0; c < 3; ++c) {
      const auto& a = spec.arcs[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)];
      if (!a)
        throw FsmError("non-total transition table: state " + std::to_string(s) + " has no " +
                       to_string(static_cast<SnapshotClass>(c)) + " arc");
      if (a->to < 0 || a->to >= spec.states)
        throw FsmError("arc from state " + std::to_string(s) + " targets unknown state " +
                       std::to_string(a->to));
    }
  }
}

namespace {

using Row = std::array<std::optional<FsmArc>, 3>;

Row row(FsmArc both, FsmArc cw_missing, FsmArc ccw_missing) {
  return {both, cw_missing, ccw_missing};
}

}  // namespace

FsmSpec fsm_of(const std::string& name) {
  constexpr Move P = Move::Cw, Z = Move::Stay, M = Move::Ccw;
  if (name == "reverse-on-block") {
    // 0 = walking clockwise, 1 = walking counter-clockwise.
    return {name, 2, 0, {row({0, P}, {1, M}, {0, P}), row({1, M}, {1, M}, {0, P})}};
  }
  if (name == "clockwise" || name == "consecutive-sweep")
    return {name, 1, 0, {row({0, P}, {0, P}, {0, P})}};
  if (name == "idle") return {name, 1, 0, {row({0, Z}, {0, Z}, {0, Z})}};
  if (name == "oscillator")
    return {name, 2, 0, {row({1, P}, {0, Z}, {1, P}), row({0, M}, {0, M}, {1, Z})}};
  if (name == "two-cycle-demo") {
    // States A=0, B=1, C=2, D=3.
    return {name,
            4,
            0,
            {row({1, M}, {0, Z}, {3, P}), row({0, P}, {2, M}, {1, Z}), row({0, M}, {2, Z}, {2, Z}),
             row({1, P}, {3, Z}, {3, Z})}};
  }
  throw FsmError("unknown machine '" + name + "'");
}

std::vector<std::string> fsm_names() {
  return {"reverse-on-block", "clockwise", "consecutive-sweep", "oscillator", "two-cycle-demo",
          "idle"};
}

FsmProtocol::FsmProtocol(FsmSpec spec) : spec_(std::move(spec)) { validate_fsm(spec_); }

std::vector<AgentMemory> FsmProtocol::initial_memory(int, const Configuration& c) const {
  return std::vector<AgentMemory>(c.size(), AgentMemory{{spec_.initial}});
}

RoundDecision FsmProtocol::step(const RoundInput& in) const {
  RoundDecision out;
  for (std::size_t i = 0; i < in.config->size(); ++i) {
    const auto cls = classify_snapshot(local_snapshot(in.n, *in.config, in.missing, i));
    const auto& a = spec_.arc(in.memory[i].words.at(0), cls);
    out.moves.push_back(a.move);
    out.memory.push_back({{a.to}});
  }
  return out;
}

}  // namespace patrol
