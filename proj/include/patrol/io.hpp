#pragma once

#include <filesystem>

#include "json.hpp"
#include "patrol/engine.hpp"
#include "patrol/fsm_analysis.hpp"
#include "patrol/solver.hpp"

namespace patrol {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// {"n", "period", "missing": [{"round", "edge"}]}; validated before return.
ObliviousSchedule schedule_from_json(const Json& j);
Json schedule_to_json(const ObliviousSchedule& s);

/// {"states", "initial", "arcs": [{"from", "snapshot", "to", "move"}]}.
FsmSpec fsm_from_json(const Json& j);
Json fsm_to_json(const FsmSpec& spec);

Json to_json(const GameSolverResult& r);
Json to_json(const IdleReport& r);
Json to_json(const Classification& c);
Json to_json(const CycleInfo& c);

}  // namespace patrol
