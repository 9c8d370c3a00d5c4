#pragma once

#include <functional>
#include <string>
#include <vector>

namespace patrol {

struct CheckRow {
  std::string claim;
  int n = 0;
  int k = 0;
  std::string adversary;
  std::string measured;
  std::string bound;
  bool pass = false;
};

using CheckTask = std::function<CheckRow()>;

/// Runs tasks on up to `threads` workers; rows keep task order.
std::vector<CheckRow> run_tasks(const std::vector<CheckTask>& tasks, unsigned threads);

/// table1, obs3, spread, wave.
std::vector<std::string> suite_names();
std::vector<CheckTask> suite_tasks(const std::string& suite);

std::string rows_to_csv(const std::vector<CheckRow>& rows);

/// Rounds after which the measured upper-bound rows start (2n).
inline long long table_stabilization(int n) { return 2LL * n; }

}  // namespace patrol
