#include "patrol/verify.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "patrol/adversaries.hpp"
#include "patrol/fsm_analysis.hpp"
#include "patrol/kpingpong.hpp"
#include "patrol/place_and_swipe.hpp"

namespace patrol {

std::vector<CheckRow> run_tasks(const std::vector<CheckTask>& tasks, unsigned threads) {
  std::vector<CheckRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        rows[i] = tasks[i]();
      } catch (const std::exception& e) {
        rows[i] = {"error", 0, 0, "", e.what(), "", false};
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

std::string rows_to_csv(const std::vector<CheckRow>& rows) {
  std::ostringstream out;
  out << "claim,n,k,adversary,measured,bound,pass\n";
  for (const auto& r : rows)
    out << r.claim << ',' << r.n << ',' << r.k << ',' << r.adversary << ',' << r.measured << ','
        << r.bound << ',' << (r.pass ? "pass" : "FAIL") << '\n';
  return out.str();
}

namespace {

std::string show(std::optional<Round> r) { return r ? std::to_string(*r) : "unbounded"; }

// Closed gaps and still-open gaps alike; the conservative reading for upper bounds.
Round upper_measure(const ExecutionTrace& tr, Round r_s) {
  const auto rep = idle_time(tr, r_s);
  const Round open = *std::max_element(rep.open_gap.begin(), rep.open_gap.end());
  return std::max(rep.idle, open);
}

Round round_uniform(const ExecutionTrace& tr) {
  if (is_uniform(tr.n, tr.initial)) return 0;
  for (const auto& r : tr.records)
    if (is_uniform(tr.n, r.after)) return r.round + 1;
  return -1;
}

// First round after which both K-Ping-Pong groups are formed and spread.
Round respread_end(const ExecutionTrace& tr) {
  for (const auto& r : tr.records) {
    const bool settled = std::all_of(r.memory_after.begin(), r.memory_after.end(), [](const AgentMemory& m) {
      const auto s = KPingPongProtocol::decode(m);
      return s.phase != KPhase::S0 && !s.spreading;
    });
    if (settled) return r.round + 1;
  }
  return -1;
}

Configuration random_injective(int n, int k, std::mt19937_64& rng) {
  std::vector<Node> p;
  while (static_cast<int>(p.size()) < k) {
    const auto v = static_cast<Node>(rng() % static_cast<std::uint64_t>(n));
    if (std::find(p.begin(), p.end(), v) == p.end()) p.push_back(v);
  }
  return Configuration{p};
}

std::vector<CheckTask> table1() {
  std::vector<CheckTask> t;

  for (int n : {6, 8, 10, 12}) {
    t.push_back([n] {
      const auto p = make_protocol("pingpong");
      const auto init = uniform_configuration(n, 2);
      const auto res = solve_worst_case(*p, n, init);
      const bool replay = replay_witness(*p, n, init, res).ok;
      return CheckRow{"pingpong-upper", n, 2, "solver", show(res.worst_idle),
                      "<=" + std::to_string(2 * (n - 1)),
                      replay && res.worst_idle && *res.worst_idle <= 2 * (n - 1)};
    });
    t.push_back([n] {
      const auto p = make_protocol("pingpong");
      GateAdversary gate(n);
      const auto tr = run(*p, gate, n, uniform_configuration(n, 2), 30 * n);
      const Round idle = idle_time(tr).idle;
      return CheckRow{"unknown-two-agent-lower", n, 2, "gate", std::to_string(idle),
                      ">=" + std::to_string(2 * n - 6), idle >= 2 * n - 6};
    });
    t.push_back([n] {
      const auto p = make_protocol("pingpong");
      const auto res = solve_worst_case(*p, n, uniform_configuration(n, 2));
      return CheckRow{"unknown-two-agent-lower", n, 2, "solver", show(res.worst_idle),
                      ">=" + std::to_string(2 * n - 6), !res.worst_idle || *res.worst_idle >= 2 * n - 6};
    });
  }

  auto swipe_rows = [&t](int n, int k) {
    t.push_back([n, k] {
      const auto p = make_protocol("place-and-swipe");
      const Round bound = 3 * ((n + k - 1) / k);
      Round worst = 0;
      int failures = 0;
      for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const auto s = random_schedule(n, 12 * n, seed);
        try {
          worst = std::max(worst, upper_measure(run(*p, s, uniform_configuration(n, k), 10 * n),
                                                table_stabilization(n)));
        } catch (const AlgorithmError&) {
          ++failures;
        }
      }
      return CheckRow{k == 2 ? "place-swipe-two" : "place-swipe-k", n, k, "random x500",
                      std::to_string(worst) + (failures ? " flagged=" + std::to_string(failures) : ""),
                      "<=" + std::to_string(bound), failures == 0 && worst <= bound};
    });
  };
  for (int n : {8, 10, 12, 14}) swipe_rows(n, 2);
  for (int k : {3, 4})
    for (int n : {9, 12, 16}) swipe_rows(n, k);

  for (int n : {8, 10, 12, 14}) {
    t.push_back([n] {
      const auto p = make_protocol("place-and-swipe");
      std::mt19937_64 rng(static_cast<std::uint64_t>(n));
      Round slowest = 0;
      Round worst = 0;
      for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const auto init = random_injective(n, 2, rng);
        const auto tr = run(*p, random_schedule(n, 12 * n, seed), init, 10 * n);
        const Round rs = round_uniform(tr);
        slowest = std::max(slowest, rs < 0 ? Round{10 * n} : rs);
        worst = std::max(worst, upper_measure(tr, table_stabilization(n)));
      }
      const Round bound = 3 * ((n + 1) / 2);
      return CheckRow{"place-swipe-arbitrary-start", n, 2, "random x500",
                      "uniform_after=" + std::to_string(slowest) + " idle=" + std::to_string(worst),
                      "uniform<=" + std::to_string(n / 2) + " idle<=" + std::to_string(bound),
                      slowest <= n / 2 && worst <= bound};
    });
  }

  auto kpp = [&t](int n, int k, Round bound, std::string claim) {
    const bool odd = k % 2 == 1;
    auto measure = [odd, n](const ExecutionTrace& tr) {
      Round rs = odd ? respread_end(tr) : table_stabilization(n);
      if (rs < 0) rs = tr.horizon();
      return upper_measure(tr, rs);
    };
    t.push_back([=] {
      const auto p = make_protocol("kpingpong");
      Round worst = 0;
      for (Edge e = 0; e < n; ++e)
        worst = std::max(worst, measure(run(*p, fixed_edge_schedule(n, e), uniform_configuration(n, k), 10 * n)));
      return CheckRow{claim, n, k, "fixed-edge", std::to_string(worst), "<=" + std::to_string(bound), worst <= bound};
    });
    t.push_back([=] {
      const auto p = make_protocol("kpingpong");
      std::unique_ptr<AdaptiveAdversary> adv;
      if (k == 2) adv = std::make_unique<GateAdversary>(n);
      else adv = std::make_unique<TrapAdversary>(0);
      const Round got = measure(run(*p, *adv, n, uniform_configuration(n, k), 10 * n));
      return CheckRow{claim, n, k, k == 2 ? "gate" : "trap", std::to_string(got), "<=" + std::to_string(bound),
                      got <= bound};
    });
    t.push_back([=] {
      const auto p = make_protocol("kpingpong");
      Round worst = 0;
      for (std::uint64_t seed = 0; seed < 300; ++seed)
        worst = std::max(worst, measure(run(*p, random_schedule(n, 10 * n, seed), uniform_configuration(n, k), 10 * n)));
      return CheckRow{claim, n, k, "random x300", std::to_string(worst), "<=" + std::to_string(bound), worst <= bound};
    });
  };
  for (int k : {2, 4})
    for (int n : {8, 12, 16}) kpp(n, k, 4 * n / k, "kpingpong-upper");
  for (int n : {9, 11, 13}) kpp(n, 2, 4 * n / 2 + 2, "kpingpong-non-divisible");
  for (int n : {10, 14}) kpp(n, 4, 4 * n / 4 + 2, "kpingpong-non-divisible");
  kpp(12, 3, 22, "kpingpong-odd");

  for (int k : {2, 4}) {
    for (const std::string algo : {"pingpong", "kpingpong", "place-and-swipe"}) {
      if (algo == "pingpong" && k != 2) continue;
      const int n = 8;
      t.push_back([=] {
        const auto p = make_protocol(algo);
        // The scheduler picks the edge, so the strongest line counts.
        Round worst = 0;
        for (Edge e = 0; e < n; ++e)
          worst = std::max(worst, idle_time(run(*p, fixed_edge_schedule(n, e), uniform_configuration(n, k), 10 * n),
                                            table_stabilization(n)).idle);
        const Round bound = 2 * n / k;
        return CheckRow{"known-line-lower:" + algo, n, k, "fixed-edge", std::to_string(worst),
                        ">=" + std::to_string(bound), worst >= bound};
      });
    }
  }
  t.push_back([] {
    const int n = 8;
    Round best = 0;
    for (Edge e = 0; e < n; ++e)
      for (Node home = 0; home < n; ++home)
        best = std::max(best, *offline_opt_search(fixed_edge_schedule(n, e), n, uniform_configuration(n, 2), home));
    return CheckRow{"known-line-lower:offline-search", n, 2, "fixed-edge", std::to_string(best),
                    ">=" + std::to_string(2 * n / 2), best >= 2 * n / 2};
  });

  t.push_back([] {
    const int n = 8, k = 3;
    SolverOptions opts;
    opts.choices = std::vector<std::optional<Edge>>{std::nullopt};
    Configuration init{{0, 1, 2}};
    const auto res = solve_worst_case(*make_protocol("consecutive-sweep"), n, init, opts);
    return CheckRow{"consecutive-lower", n, k, "static", show(res.worst_idle), ">=" + std::to_string(n - k),
                    !res.worst_idle || *res.worst_idle >= n - k};
  });

  for (const std::string m : {"clockwise", "reverse-on-block", "oscillator", "idle"}) {
    t.push_back([m] {
      const int n = 10;
      const auto p = make_protocol(m);
      TrapAdversary trap(0);
      const auto tr = run(*p, trap, n, Configuration{{0}}, 10 * n);
      std::vector<bool> seen(n, false);
      seen[0] = true;
      for (const auto& r : tr.records) seen[static_cast<std::size_t>(r.after.positions[0])] = true;
      const auto count = std::count(seen.begin(), seen.end(), true);
      return CheckRow{"single-agent-trap:" + m, n, 1, "trap", std::to_string(count), "<=2", count <= 2};
    });
  }

  for (const std::string m : {"reverse-on-block", "oscillator", "clockwise", "two-cycle-demo", "idle"}) {
    t.push_back([m] {
      const auto spec = fsm_of(m);
      const auto c = classify(build_transition_graph(spec), 2, 2);
      const auto cv = cross_validate(c, spec, 8, 2);
      return CheckRow{"fsm-agreement:" + m, 8, 2, "solver", to_string(c.verdict) + " / " + show(cv.solver_worst),
                      c.verdict == Verdict::NotPatrolling ? "unbounded" : "finite", cv.pass};
    });
  }
  return t;
}

std::vector<CheckTask> obs3() {
  std::vector<CheckTask> t;
  for (int n : {8, 12}) {
    t.push_back([n] {
      int failures = 0;
      int checks = 0;
      for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto s = random_schedule(n, n, seed + 7919ULL * static_cast<std::uint64_t>(n));
        for (int h = 1; h <= n - 1; ++h, ++checks)
          if (!verify_swipe_walkers(s, n, 0, h).pass) ++failures;
      }
      return CheckRow{"swipe-set-size", n, 0, "random x1000", std::to_string(checks - failures) + "/" + std::to_string(checks),
                      "all", failures == 0};
    });
  }
  return t;
}

std::vector<CheckTask> spread() {
  std::vector<CheckTask> t;
  for (int k : {2, 3, 4})
    for (int n = 8; n <= 14; ++n)
      t.push_back([n, k] {
        const auto p = make_protocol("spread");
        std::mt19937_64 rng(static_cast<std::uint64_t>(n * 31 + k));
        Round slowest = 0;
        for (std::uint64_t seed = 0; seed < 500; ++seed) {
          const auto init = random_injective(n, k, rng);
          const Round r = round_uniform(run(*p, random_schedule(n, 2 * n, seed), init, 2 * n));
          slowest = std::max(slowest, r < 0 ? Round{2 * n + 1} : r);
        }
        return CheckRow{"uniform-spread", n, k, "random x500", std::to_string(slowest),
                        "<=" + std::to_string(2 * n), slowest <= 2 * n};
      });
  return t;
}

std::vector<CheckTask> wave() {
  std::vector<CheckTask> t;
  for (int n : {10, 12}) {
    t.push_back([n] {
      const auto s = wave_schedule(n);
      const auto got = offline_opt_search(s, n, Configuration{{kWaveStartA, kWaveStartB}}, kWaveStartA);
      const Round bound = (12 * (n - 1)) / 10;
      return CheckRow{"wave-lower", n, 2, "wave", show(got), ">=" + std::to_string(bound), got && *got >= bound};
    });
    t.push_back([n] {
      const auto ok = validate_schedule(wave_schedule(n), 64).ok;
      return CheckRow{"wave-valid", n, 2, "wave", ok ? "ok" : "invalid", "ok", ok};
    });
  }
  return t;
}

}  // namespace

std::vector<std::string> suite_names() { return {"table1", "obs3", "spread", "wave"}; }

std::vector<CheckTask> suite_tasks(const std::string& suite) {
  if (suite == "table1") return table1();
  if (suite == "obs3") return obs3();
  if (suite == "spread") return spread();
  if (suite == "wave") return wave();
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace patrol
