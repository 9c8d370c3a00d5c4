#include <filesystem>

#include "doctest.h"
#include "patrol/adversaries.hpp"
#include "patrol/io.hpp"

using namespace patrol;

TEST_CASE("schedule round trip") {
  for (const auto& s : {wave_schedule(12), fixed_edge_schedule(7, 2), random_schedule(9, 50, 3)}) {
    const auto back = schedule_from_json(schedule_to_json(s));
    CHECK(back.n() == s.n());
    CHECK(back.period() == s.period());
    CHECK(back.entries() == s.entries());
  }
}

TEST_CASE("schedule rejections") {
  CHECK_THROWS_AS(schedule_from_json(Json::parse(R"({"n": 6})")), FormatError);
  CHECK_THROWS_AS(schedule_from_json(Json::parse(R"({"n": 6, "missing": [{"round": 0, "edge": 6}]})")),
                  FormatError);
  CHECK_THROWS_AS(schedule_from_json(Json::parse(
                      R"({"n": 6, "missing": [{"round": 1, "edge": 0}, {"round": 1, "edge": 3}]})")),
                  FormatError);
  CHECK_THROWS_AS(
      schedule_from_json(Json::parse(R"({"n": 6, "period": 2, "missing": [{"round": 4, "edge": 0}]})")),
      FormatError);
  CHECK_THROWS_AS(schedule_from_json(Json::parse(R"({"n": "six", "missing": []})")), FormatError);
}

TEST_CASE("fsm round trip") {
  for (const auto& name : fsm_names()) {
    const auto spec = fsm_of(name);
    const auto back = fsm_from_json(fsm_to_json(spec));
    CHECK(back.states == spec.states);
    CHECK(back.initial == spec.initial);
    for (int s = 0; s < spec.states; ++s)
      for (int c = 0; c < 3; ++c) {
        const auto a = spec.arc(s, static_cast<SnapshotClass>(c));
        const auto b = back.arc(s, static_cast<SnapshotClass>(c));
        CHECK(a.to == b.to);
        CHECK(a.move == b.move);
      }
  }
}

TEST_CASE("fsm rejections") {
  auto j = fsm_to_json(fsm_of("reverse-on-block"));
  auto dup = j;
  dup["arcs"].push_back(dup["arcs"][0]);
  CHECK_THROWS_WITH_AS(fsm_from_json(dup), doctest::Contains("duplicate"), FormatError);
  auto missing = j;
  missing["arcs"].erase(missing["arcs"].begin() + 1);
  CHECK_THROWS_WITH_AS(fsm_from_json(missing), doctest::Contains("non-total"), std::runtime_error);
  auto bad_move = j;
  bad_move["arcs"][0]["move"] = 2;
  CHECK_THROWS_AS(fsm_from_json(bad_move), FormatError);
  auto bad_snap = j;
  bad_snap["arcs"][0]["snapshot"] = "left";
  CHECK_THROWS_AS(fsm_from_json(bad_snap), FormatError);
}

TEST_CASE("file helpers") {
  const auto path = std::filesystem::temp_directory_path() / "patrol_io_test.json";
  write_text_file(path, schedule_to_json(wave_schedule(10)).dump());
  CHECK(schedule_from_json(read_json_file(path)).entries() == wave_schedule(10).entries());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_json_file(path), FormatError);
}

TEST_CASE("result documents") {
  const auto p = make_protocol("pingpong");
  const auto res = solve_worst_case(*p, 6, uniform_configuration(6, 2));
  const auto j = to_json(res);
  CHECK(j["worst_idle"] == 9);
  CHECK(j["witness"].is_array());
  const auto c = classify(build_transition_graph(fsm_of("two-cycle-demo")), 2, 2);
  const auto cj = to_json(c);
  CHECK(cj["verdict"] == to_string(c.verdict));
  const auto unb = to_json(solve_worst_case(*make_protocol("clockwise"), 6, Configuration{{0}}));
  CHECK(unb["worst_idle"] == "unbounded");
}
