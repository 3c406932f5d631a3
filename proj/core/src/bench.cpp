#include "toro/bench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "toro/depgraph.hpp"
#include "toro/errors.hpp"
#include "toro/generators.hpp"
#include "toro/rng.hpp"

namespace toro::bench {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + num(v[i]);
  return out;
}

std::string hardware_line() {
  std::string model = "unknown cpu";
  std::ifstream cpuinfo("/proc/cpuinfo");
  for (std::string line; std::getline(cpuinfo, line);) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) model = line.substr(colon + 2);
      break;
    }
  }
  return "hardware: " + model + ", " + std::to_string(std::thread::hardware_concurrency()) + " threads";
}

CsvTable make_table(const std::string& suite, std::uint64_t seed) {
  CsvTable t;
  t.comments.push_back("suite: " + suite);
  t.comments.push_back("seed: " + std::to_string(seed));
  t.comments.push_back(hardware_line());
  t.comments.push_back("timing: wall clock seconds, median of 3 runs per instance, mean over instances");
  return t;
}

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

int default_max_degree(double avg) { return std::max(2, static_cast<int>(std::ceil(2.0 * avg - 1e-9))); }

}  // namespace

Plan random_baseline_plan(const Instance& inst, std::uint64_t seed) {
  if (!is_non_overlapping(inst)) throw std::invalid_argument("random baseline needs a non-overlapping instance");
  Rng rng(seed);
  std::vector<int> order;
  for (int i = 0; i < inst.size(); ++i) {
    if (!inst.at_goal(i)) order.push_back(i);
  }
  rng.shuffle(order.begin(), order.end());
  std::vector<int> goals = order;
  if (!inst.labeled) rng.shuffle(goals.begin(), goals.end());
  Plan plan;
  for (std::size_t k = 0; k < order.size(); ++k) {
    plan.actions.push_back(Action{order[k], inst.start_of(order[k]), inst.goal_of(goals[k]), PlaceKind::goal});
  }
  return plan;
}

void CsvTable::add_column(std::string name, bool is_timing) {
  columns.push_back(std::move(name));
  timing.push_back(is_timing);
}

void CsvTable::write(std::ostream& out, bool include_timing) const {
  for (const auto& c : comments) out << "# " << c << '\n';
  auto emit = [&](const std::vector<std::string>& fields) {
    bool first = true;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (!include_timing && i < timing.size() && timing[i]) continue;
      if (!first) out << ',';
      out << csv_field(fields[i]);
      first = false;
    }
    out << '\n';
  };
  emit(columns);
  for (const auto& r : rows) emit(r);
}

std::string CsvTable::to_csv(bool include_timing) const {
  std::ostringstream out;
  write(out, include_timing);
  return out.str();
}

CsvTable run_no_bench(const NoBenchParams& p) {
  CsvTable t = make_table("no", p.seed);
  t.comments.push_back(std::string("variant: ") + (p.labeled ? "labeled" : "unlabeled") +
                       ", radius " + num(p.shape.radius) + ", workspace " + num(p.shape.workspace.width()) + " x " +
                       num(p.shape.workspace.height()) + ", trials " + std::to_string(p.trials));
  t.comments.push_back("optimum: exact tour up to n = " +
                       std::to_string(p.labeled ? p.limits.labeled_exact : p.limits.unlabeled_exact) +
                       ", local search beyond (ratios above that are lower bounds)");
  t.comments.push_back("cost: grasp + release + travel with unit weights; ratio = random cost / optimal cost");
  t.add_column("n");
  t.add_column("mean_time", true);
  t.add_column("mean_opt_cost");
  t.add_column("mean_random_ratio");
  for (std::size_t si = 0; si < p.sizes.size(); ++si) {
    const int n = p.sizes[si];
    std::vector<double> times, costs, ratios;
    for (int trial = 0; trial < p.trials; ++trial) {
      const auto seed = mix_seed(mix_seed(p.seed, static_cast<std::uint64_t>(n)), static_cast<std::uint64_t>(trial));
      Instance inst = gen_no_overlap(n, seed, p.shape.workspace, p.shape.radius);
      inst.labeled = p.labeled;
      Plan best;
      times.push_back(median_seconds([&] { best = toro_no_tsp(inst, seed, p.limits); }));
      const double opt = plan_cost(best, inst).total;
      const double rnd = plan_cost(random_baseline_plan(inst, mix_seed(seed, 1)), inst).total;
      costs.push_back(opt);
      ratios.push_back(opt > 0.0 ? rnd / opt : 1.0);
    }
    t.rows.push_back({std::to_string(n), num(mean(times)), num(mean(costs)), num(mean(ratios))});
  }
  return t;
}

CsvTable run_fvs_bench(const FvsBenchParams& p) {
  CsvTable t = make_table("fvs", p.seed);
  t.comments.push_back("graphs: avg degree " + num(p.avg_degree) + ", max degree " + std::to_string(p.max_degree) +
                       ", trials " + std::to_string(p.trials) + ", sizes " + join(p.sizes));
  t.comments.push_back("ratio: |FVS| / |minimum FVS from ilp-e|; acyclic graphs count as 1");
  t.add_column("method");
  t.add_column("n");
  t.add_column("mean_time", true);
  t.add_column("mean_ratio_to_optimal");
  for (int n : p.sizes) {
    std::vector<DepGraph> graphs;
    std::vector<int> optimum;
    for (int trial = 0; trial < p.trials; ++trial) {
      const auto seed = mix_seed(mix_seed(p.seed, static_cast<std::uint64_t>(n)), static_cast<std::uint64_t>(trial));
      graphs.push_back(gen_dep_graph(n, p.avg_degree, p.max_degree, seed));
      optimum.push_back(static_cast<int>(fvs_ilp_enumerate(graphs.back(), p.options).vertices.size()));
    }
    for (FvsMethod m : p.methods) {
      std::vector<double> times, ratios;
      bool refused = false;
      for (std::size_t k = 0; k < graphs.size() && !refused; ++k) {
        try {
          FvsResult r;
          times.push_back(median_seconds([&] { r = solve_fvs(graphs[k], m, p.options); }));
          const int size = static_cast<int>(r.vertices.size());
          ratios.push_back(optimum[k] == 0 ? 1.0 : static_cast<double>(size) / optimum[k]);
        } catch (const SizeGuardError&) {
          refused = true;
        }
      }
      if (refused) {
        t.comments.push_back("skipped: " + std::string(to_string(m)) + " at n = " + std::to_string(n) +
                             " (size guard)");
        continue;
      }
      t.rows.push_back({std::string(to_string(m)), std::to_string(n), num(mean(times)), num(mean(ratios))});
    }
  }
  return t;
}

CsvTable run_fvs_count_bench(const FvsCountParams& p) {
  CsvTable t = make_table("fvs-count", p.seed);
  t.comments.push_back("graphs: sizes " + join(p.sizes) + ", avg degrees " + join(p.avg_degrees) + ", trials " +
                       std::to_string(p.trials) + ", enumeration cap " + std::to_string(p.cap));
  t.comments.push_back("max degree: " + (p.max_degree > 0 ? std::to_string(p.max_degree)
                                                          : std::string("max(2, ceil(2 * avg_deg))")));
  t.add_column("n");
  t.add_column("avg_deg");
  t.add_column("mean_optimal_fvs_count");
  t.add_column("truncated");
  for (int n : p.sizes) {
    for (double avg : p.avg_degrees) {
      const int max_deg = p.max_degree > 0 ? p.max_degree : default_max_degree(avg);
      std::vector<double> counts;
      int truncated = 0;
      for (int trial = 0; trial < p.trials; ++trial) {
        const auto seed = mix_seed(mix_seed(mix_seed(p.seed, static_cast<std::uint64_t>(n)),
                                            static_cast<std::uint64_t>(std::llround(avg * 1000))),
                                   static_cast<std::uint64_t>(trial));
        const auto e = enumerate_optimal_fvs(gen_dep_graph(n, avg, max_deg, seed), p.cap, p.options);
        counts.push_back(static_cast<double>(e.sets.size()));
        truncated += e.truncated ? 1 : 0;
      }
      t.rows.push_back({std::to_string(n), num(avg), num(mean(counts)), std::to_string(truncated)});
    }
  }
  return t;
}

CsvTable run_toro_bench(const ToroBenchParams& p) {
  CsvTable t = make_table("toro", p.seed);
  t.comments.push_back("instances: overlap generator, radius " + num(p.shape.radius) + ", workspace " +
                       num(p.shape.workspace.width()) + " x " + num(p.shape.workspace.height()) + ", trials " +
                       std::to_string(p.trials) + ", fvs method " + std::string(to_string(p.method)));
  t.comments.push_back("fvs time includes building the dependency graph; timeouts are excluded from the means");
  t.add_column("n");
  t.add_column("avg_deg");
  t.add_column("mean_fvs_time", true);
  t.add_column("mean_mindist_time", true);
  t.add_column("mean_total_time", true);
  t.add_column("timeouts");
  for (int n : p.sizes) {
    for (double avg : p.avg_degrees) {
      std::vector<double> fvs_times, plan_times, totals;
      int timeouts = 0;
      for (int trial = 0; trial < p.trials; ++trial) {
        const auto seed = mix_seed(mix_seed(mix_seed(p.seed, static_cast<std::uint64_t>(n)),
                                            static_cast<std::uint64_t>(std::llround(avg * 1000))),
                                   static_cast<std::uint64_t>(trial));
        const Instance inst = gen_overlap(n, seed, avg, p.shape.workspace, p.shape.radius);
        try {
          FvsResult fvs;
          const double tf = median_seconds([&] { fvs = solve_fvs(build_dep_graph(inst), p.method, p.fvs_options); });
          const double tp = median_seconds([&] { min_dist_plan(inst, fvs.vertices, p.mindist_options); });
          fvs_times.push_back(tf);
          plan_times.push_back(tp);
          totals.push_back(tf + tp);
        } catch (const SolverLimitError&) {
          ++timeouts;
        }
      }
      t.rows.push_back({std::to_string(n), num(avg), num(mean(fvs_times)), num(mean(plan_times)), num(mean(totals)),
                        std::to_string(timeouts)});
    }
  }
  return t;
}

}  // namespace toro::bench
