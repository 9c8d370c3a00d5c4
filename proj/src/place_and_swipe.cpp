#include "patrol/place_and_swipe.hpp"

#include <algorithm>
#include <numeric>

namespace patrol {

std::vector<Node> compute_swipe_set(const ScheduleOracle& schedule, int n, Round r, int h) {
  if (h < 0 || h > n - 1) throw AlgorithmError("swipe length must lie in [0, n-1]");
  std::vector<bool> ok(static_cast<std::size_t>(n), true);
  for (int t = 0; t < h; ++t) {
    const auto e = schedule.missing_at(r + t);
    if (!e) continue;
    // The walker starting at s sits on s+t at move t and needs edge s+t.
    ok[static_cast<std::size_t>(((*e - t) % n + n) % n)] = false;
  }
  std::vector<Node> out;
  for (Node s = 0; s < n; ++s)
    if (ok[static_cast<std::size_t>(s)]) out.push_back(s);
  return out;
}

std::optional<std::vector<Node>> select_targets(const std::vector<Node>& allowed, int n, int k) {
  std::vector<bool> in(static_cast<std::size_t>(n), false);
  for (Node v : allowed)
    if (v >= 0 && v < n) in[static_cast<std::size_t>(v)] = true;
  for (Node rho = 0; rho < n; ++rho) {
    auto p = uniform_configuration(n, k, rho).positions;
    if (std::all_of(p.begin(), p.end(), [&](Node v) { return in[static_cast<std::size_t>(v)]; })) {
      std::sort(p.begin(), p.end());
      return p;
    }
  }
  return std::nullopt;
}

namespace {

std::optional<PlacementPlan> try_direction(int n, const Configuration& current,
                                           const std::vector<Node>& targets,
                                           const ScheduleOracle& schedule, Round r, int window,
                                           Direction dir) {
  const std::size_t k = current.size();
  auto agents = clockwise_order(n, current.positions, 0);
  auto tgt = targets;
  std::sort(tgt.begin(), tgt.end());

  // Rotation of the matching with the smallest maximal walk.
  std::size_t best_shift = 0;
  int best = n + 1;
  for (std::size_t s = 0; s < k; ++s) {
    int worst = 0;
    for (std::size_t j = 0; j < k; ++j)
      worst = std::max(worst,
                       ring_distance(n, current.positions[agents[j]], tgt[(j + s) % k], dir));
    if (worst < best) best = worst, best_shift = s;
  }

  PlacementPlan plan{dir, std::vector<Node>(k), {}};
  for (std::size_t j = 0; j < k; ++j) plan.target[agents[j]] = tgt[(j + best_shift) % k];

  Configuration at = current;
  for (int t = 0; t < window; ++t) {
    std::vector<Move> moves(k, Move::Stay);
    for (std::size_t i = 0; i < k; ++i)
      if (at.positions[i] != plan.target[i]) moves[i] = toward(dir);
    at = apply_round(n, at, moves, schedule.missing_at(r + t)).after;
    plan.moves.push_back(std::move(moves));
  }
  for (std::size_t i = 0; i < k; ++i)
    if (at.positions[i] != plan.target[i]) return std::nullopt;
  return plan;
}

}  // namespace

std::optional<PlacementPlan> placement_route(int n, const Configuration& current,
                                             const std::vector<Node>& targets,
                                             const ScheduleOracle& schedule, Round r, int window) {
  if (targets.size() != current.size())
    throw AlgorithmError("placement needs one target per agent");
  if (auto p = try_direction(n, current, targets, schedule, r, window, Direction::Cw)) return p;
  return try_direction(n, current, targets, schedule, r, window, Direction::Ccw);
}

PlaceAndSwipeStep place_and_swipe_step(PlaceAndSwipeState state, const GlobalSnapshot& snap,
                                       Round round, const ScheduleOracle& future) {
  const int n = snap.n;
  const int k = static_cast<int>(snap.positions.size());
  const int L = (n + k - 1) / k;
  const Configuration config{snap.positions};

  if (state.stage == PsStage::Spread) {
    if (!is_uniform(n, config)) {
      auto [s, m] = uniform_spread_step(state.spread, snap);
      state.spread = s;
      return {state, m};
    }
    state.stage = PsStage::Placement;
    state.origin = round;
  }

  const Round ph = (round - state.origin) % (2 * L);
  if (ph == 0) {
    state.origin = round;
    state.stage = PsStage::Placement;
    const auto swipe = compute_swipe_set(future, n, round + L, L - 1);
    const auto targets = select_targets(swipe, n, k);
    if (!targets)
      throw AlgorithmError("no uniform target set inside the swipe set at round " +
                           std::to_string(round));
    const auto plan = placement_route(n, config, *targets, future, round, L);
    if (!plan)
      throw AlgorithmError("neither placement direction arrives in time at round " +
                           std::to_string(round));
    state.target = plan->target[snap.own_index];
    state.direction = plan->direction;
  }

  if (ph < L) {
    const Move m = snap.own() == state.target ? Move::Stay : toward(state.direction);
    return {state, m};
  }
  state.stage = PsStage::Swipe;
  return {state, ph == 2 * L - 1 ? Move::Stay : Move::Cw};
}

AgentMemory PlaceAndSwipeProtocol::encode(const PlaceAndSwipeState& s) {
  return {{static_cast<std::int32_t>(s.stage), static_cast<std::int32_t>(s.origin), s.target,
           static_cast<std::int32_t>(s.direction), static_cast<std::int32_t>(s.spread.mode),
           s.spread.rank}};
}

PlaceAndSwipeState PlaceAndSwipeProtocol::decode(const AgentMemory& m) {
  PlaceAndSwipeState s;
  s.stage = static_cast<PsStage>(m.words.at(0));
  s.origin = m.words.at(1);
  s.target = m.words.at(2);
  s.direction = static_cast<Direction>(m.words.at(3));
  s.spread = {static_cast<SpreadMode>(m.words.at(4)), m.words.at(5)};
  return s;
}

std::vector<AgentMemory> PlaceAndSwipeProtocol::initial_memory(int, const Configuration& c) const {
  return std::vector<AgentMemory>(c.size(), encode({}));
}

RoundDecision PlaceAndSwipeProtocol::step(const RoundInput& in) const {
  if (!in.future) throw AlgorithmError("place-and-swipe needs the future schedule");
  RoundDecision out;
  for (std::size_t i = 0; i < in.config->size(); ++i) {
    auto [s, m] = place_and_swipe_step(decode(in.memory[i]),
                                       global_snapshot(in.n, *in.config, in.missing, i), in.round,
                                       *in.future);
    out.moves.push_back(m);
    out.memory.push_back(encode(s));
  }
  return out;
}

}  // namespace patrol
