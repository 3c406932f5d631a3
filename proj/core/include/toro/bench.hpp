#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "toro/fvs.hpp"
#include "toro/model.hpp"
#include "toro/planner.hpp"
#include "toro/routing.hpp"

namespace toro::bench {

/// Uniformly random object order (labeled) or random order plus random
/// start-goal matching (unlabeled), one start -> goal action each. Throws
/// std::invalid_argument for overlapping instances.
Plan random_baseline_plan(const Instance& inst, std::uint64_t seed);

/// A CSV table with '#' metadata lines. Timing columns are flagged so that
/// determinism checks can drop them.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<bool> timing;
  std::vector<std::vector<std::string>> rows;

  void add_column(std::string name, bool is_timing = false);
  std::string to_csv(bool include_timing = true) const;
  void write(std::ostream& out, bool include_timing = true) const;
};

/// Shared instance distribution: r = 1 discs in a 100 x 100 workspace.
struct InstanceShape {
  Rect workspace{0.0, 0.0, 100.0, 100.0};
  double radius = 1.0;
};

struct NoBenchParams {
  std::vector<int> sizes{10, 50, 100};
  int trials = 100;
  std::uint64_t seed = 0;
  bool labeled = false;
  InstanceShape shape;
  TourLimits limits;
};

/// Rows {n, mean_time, mean_opt_cost, mean_random_ratio}. The optimum is
/// exact within `limits` and the local-search tour beyond.
CsvTable run_no_bench(const NoBenchParams& params);

struct FvsBenchParams {
  std::vector<int> sizes{10, 20, 30};
  double avg_degree = 2.0;
  int max_degree = 4;
  int trials = 100;
  std::vector<FvsMethod> methods{FvsMethod::ilp_constraint, FvsMethod::ilp_enumerate, FvsMethod::msch,
                                 FvsMethod::mch, FvsMethod::mdh};
  std::uint64_t seed = 0;
  FvsOptions options;
};

/// Rows {method, n, mean_time, mean_ratio_to_optimal}; the optimum comes
/// from ILP-Enumerate and an acyclic graph counts as ratio 1. Methods that
/// refuse a size (brute force beyond its guard) are listed in a comment.
CsvTable run_fvs_bench(const FvsBenchParams& params);

struct FvsCountParams {
  std::vector<int> sizes{10, 15, 20};
  std::vector<double> avg_degrees{1.0, 2.0};
  int max_degree = 0;  ///< 0: max(2, ceil(2 * avg_degree))
  int trials = 100;
  std::uint64_t seed = 0;
  std::size_t cap = 1000;
  FvsOptions options;
};

/// Rows {n, avg_deg, mean_optimal_fvs_count, truncated}.
CsvTable run_fvs_count_bench(const FvsCountParams& params);

struct ToroBenchParams {
  std::vector<int> sizes{5, 10};
  std::vector<double> avg_degrees{0.5, 1.0};
  int trials = 10;
  std::uint64_t seed = 0;
  InstanceShape shape;
  FvsMethod method = FvsMethod::ilp_enumerate;
  FvsOptions fvs_options;
  MinDistOptions mindist_options;
};

/// Rows {n, avg_deg, mean_fvs_time, mean_mindist_time, mean_total_time,
/// timeouts}. Instances that hit a solver limit are counted, not averaged.
CsvTable run_toro_bench(const ToroBenchParams& params);

/// Median wall-clock seconds of `repeats` calls.
template <typename F>
double median_seconds(F&& f, int repeats = 3) {
  std::vector<double> times;
  for (int k = 0; k < repeats; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(times.begin(), times.end());
  return times.empty() ? 0.0 : times[times.size() / 2];
}

}  // namespace toro::bench
