#include "patrol/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace patrol {

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw FormatError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

ObliviousSchedule schedule_from_json(const Json& j) {
  const int n = field<int>(j, "n");
  std::optional<Round> period;
  if (j.contains("period") && !j.at("period").is_null()) period = field<Round>(j, "period");
  ObliviousSchedule s(n, period);
  if (!j.contains("missing") || !j.at("missing").is_array())
    throw FormatError("field 'missing' must be an array");
  for (const auto& entry : j.at("missing")) {
    const auto r = field<Round>(entry, "round");
    if (period && r >= *period) throw FormatError("round " + std::to_string(r) + " beyond the period");
    s.remove(r, field<Edge>(entry, "edge"));
  }
  const Round horizon = period ? *period : s.last_entry_round() + 1;
  const auto check = validate_schedule(s, std::max<Round>(horizon, 1));
  if (!check.ok) throw FormatError("invalid schedule: " + check.reason);
  return s;
}

Json schedule_to_json(const ObliviousSchedule& s) {
  Json j;
  j["n"] = s.n();
  j["period"] = s.period() ? Json(*s.period()) : Json(nullptr);
  Json missing = Json::array();
  for (const auto& [r, e] : s.entries()) missing.push_back({{"round", r}, {"edge", e}});
  j["missing"] = missing;
  return j;
}

FsmSpec fsm_from_json(const Json& j) {
  FsmSpec spec;
  spec.states = field<int>(j, "states");
  spec.initial = field<int>(j, "initial");
  if (j.contains("name")) spec.name = field<std::string>(j, "name");
  if (spec.states < 1 || spec.states > 1 << 20) throw FormatError("state count out of range");
  spec.arcs.resize(static_cast<std::size_t>(spec.states));
  if (!j.contains("arcs") || !j.at("arcs").is_array()) throw FormatError("field 'arcs' must be an array");
  for (const auto& a : j.at("arcs")) {
    const int from = field<int>(a, "from");
    const auto snap = field<std::string>(a, "snapshot");
    const auto cls = snapshot_class_from(snap);
    if (!cls) throw FormatError("unknown snapshot class '" + snap + "'");
    const int move = field<int>(a, "move");
    if (move < -1 || move > 1) throw FormatError("move must be -1, 0 or 1");
    if (from < 0 || from >= spec.states) throw FormatError("arc from unknown state " + std::to_string(from));
    auto& slot = spec.arcs[static_cast<std::size_t>(from)][static_cast<std::size_t>(*cls)];
    if (slot) throw FormatError("duplicate arc for state " + std::to_string(from) + " on " + snap);
    slot = FsmArc{field<int>(a, "to"), static_cast<Move>(move)};
  }
  try {
    build_transition_graph(spec);
  } catch (const FsmError& e) {
    throw FormatError(e.what());
  }
  return spec;
}

Json fsm_to_json(const FsmSpec& spec) {
  Json arcs = Json::array();
  for (int s = 0; s < spec.states; ++s)
    for (int c = 0; c < 3; ++c) {
      const auto& a = spec.arcs[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)];
      if (!a) continue;
      arcs.push_back({{"from", s},
                      {"snapshot", to_string(static_cast<SnapshotClass>(c))},
                      {"to", a->to},
                      {"move", delta(a->move)}});
    }
  return {{"name", spec.name}, {"states", spec.states}, {"initial", spec.initial}, {"arcs", arcs}};
}

Json to_json(const GameSolverResult& r) {
  Json j;
  j["worst_idle"] = r.worst_idle ? Json(*r.worst_idle) : Json("unbounded");
  j["target_node"] = r.target_node;
  Json w = Json::array();
  for (const auto& e : r.witness) w.push_back(e ? Json(*e) : Json(nullptr));
  j["witness"] = w;
  if (r.lasso_start) j["lasso_start"] = *r.lasso_start;
  j["states"] = r.states;
  return j;
}

Json to_json(const IdleReport& r) {
  Json j;
  j["idle"] = r.idle;
  j["worst_node"] = r.worst_node;
  j["stabilization"] = r.stabilization;
  j["horizon"] = r.horizon;
  j["per_node_max_gap"] = r.per_node_max_gap;
  j["open_gap"] = r.open_gap;
  Json flags = Json::array();
  for (std::size_t v = 0; v < r.open_flags.size(); ++v)
    if (r.open_flags[v]) flags.push_back(v);
  j["open_gap_nodes"] = flags;
  return j;
}

Json to_json(const CycleInfo& c) {
  Json arcs = Json::array();
  for (const auto& a : c.arcs)
    arcs.push_back({{"from", a.from}, {"snapshot", to_string(a.cls)}, {"to", a.to}, {"move", delta(a.move)}});
  return {{"vertices", c.vertices()},
          {"fault_free", c.fault_free},
          {"displacement", c.displacement},
          {"arcs", arcs}};
}

Json to_json(const Classification& c) {
  auto arcs = [](const std::vector<Arc>& v) {
    Json out = Json::array();
    for (const auto& a : v)
      out.push_back({{"from", a.from}, {"snapshot", to_string(a.cls)}, {"to", a.to}, {"move", delta(a.move)}});
    return out;
  };
  Json cert;
  cert["initial_prefix"] = arcs(c.certificate.initial.prefix);
  cert["initial_cycle"] = to_json(c.certificate.initial.cycle);
  cert["path"] = arcs(c.certificate.path);
  cert["cycle"] = to_json(c.certificate.cycle);
  cert["component"] = c.certificate.component;
  return {{"verdict", to_string(c.verdict)},
          {"states", c.states},
          {"bound", "n-7*|S|*k"},
          {"k", c.agents},
          {"memory_bits", c.memory_bits},
          {"note", "analysis runs on the full machine, including executions where agents meet"},
          {"certificate", cert}};
}

}  // namespace patrol
