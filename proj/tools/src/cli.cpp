#include "toro/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <set>

#include "toro/bench.hpp"
#include "toro/depgraph.hpp"
#include "toro/errors.hpp"
#include "toro/fvs.hpp"
#include "toro/generators.hpp"
#include "toro/io.hpp"
#include "toro/planner.hpp"
#include "toro/rng.hpp"

namespace toro::cli {

namespace {

const std::vector<std::string> kFvsNames{"ilp-c", "ilp-e", "msch", "mch", "mdh", "brute"};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TORO_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return 0;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

FvsMethod fvs_method(const std::string& name) { return *parse_fvs_method(name); }

std::vector<Point2> random_points(int count, std::uint64_t seed) {
  Rng rng(seed);
  const auto side = static_cast<std::int64_t>(10 * std::max(count, 1));
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  std::vector<Point2> pts;
  while (static_cast<int>(pts.size()) < count) {
    const auto x = rng.uniform_int(0, side);
    const auto y = rng.uniform_int(0, side);
    if (seen.insert({x, y}).second) pts.push_back({static_cast<double>(x), static_cast<double>(y)});
  }
  return pts;
}

/// Random strongly connected digraph with in- and out-degree at most 2: a
/// Hamiltonian cycle plus up to n/2 chords.
DepGraph random_degree2_graph(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  rng.shuffle(perm.begin(), perm.end());
  std::vector<Arc> arcs;
  std::vector<int> out(static_cast<std::size_t>(n), 0), in(static_cast<std::size_t>(n), 0);
  std::set<Arc> present;
  auto add = [&](int a, int b) {
    arcs.emplace_back(a, b);
    present.insert({a, b});
    ++out[static_cast<std::size_t>(a)];
    ++in[static_cast<std::size_t>(b)];
  };
  if (n >= 2) {
    for (int k = 0; k < n; ++k) add(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>((k + 1) % n)]);
  }
  for (int k = 0; k < n / 2; ++k) {
    const auto a = static_cast<int>(rng.uniform_int(0, n - 1));
    const auto b = static_cast<int>(rng.uniform_int(0, n - 1));
    if (a == b || present.count({a, b}) || out[static_cast<std::size_t>(a)] >= 2 || in[static_cast<std::size_t>(b)] >= 2) {
      continue;
    }
    add(a, b);
  }
  return DepGraph::from_arcs(n, arcs);
}

std::vector<int> parse_int_list(const std::vector<std::string>& items) {
  std::vector<int> v;
  for (const auto& s : items) v.push_back(std::stoi(s));
  return v;
}

std::vector<double> parse_double_list(const std::vector<std::string>& items) {
  std::vector<double> v;
  for (const auto& s : items) v.push_back(std::stod(s));
  return v;
}

void print_cost(std::ostream& out, const Plan& plan, const Instance& inst) {
  const PlanCost c = plan_cost(plan, inst);
  double empty = 0.0;
  double loaded = 0.0;
  for (const auto& l : c.legs) {
    empty += l.empty;
    loaded += l.loaded;
  }
  out << "actions: " << plan.grasps() << ", buffers: " << plan.buffers_used() << '\n';
  out << "grasp+release cost: " << num(c.grasp_release_total) << '\n';
  out << "travel: empty " << num(empty) << ", loaded " << num(loaded) << ", final " << num(c.final_leg)
      << ", distance " << num(c.distance()) << '\n';
  out << "travel cost: " << num(c.move_total) << '\n';
  out << "total cost: " << num(c.total) << '\n';
}

struct GenArgs {
  std::string kind;
  int n = 10;
  std::uint64_t seed = 0;
  std::string out;
  double radius = 1.0;
  double width = 100.0;
  double height = 100.0;
  double avg_degree = 2.0;
  int max_degree = 4;
  bool unlabeled = false;
  double epsilon = 0.0;
  std::string graph;
};

int do_gen(const GenArgs& a, std::ostream& out) {
  const Rect ws{0.0, 0.0, a.width, a.height};
  if (a.kind == "depgraph") {
    const DepGraph g = gen_dep_graph(a.n, a.avg_degree, a.max_degree, a.seed);
    io::write_text_file(a.out, format_dep_graph(g));
    out << "wrote dependency graph with " << g.size() << " vertices and " << g.arc_count() << " arcs\n";
    return kExitOk;
  }
  Instance inst;
  if (a.kind == "no-overlap") {
    inst = gen_no_overlap(a.n, a.seed, ws, a.radius);
    inst.labeled = !a.unlabeled;
  } else if (a.kind == "overlap") {
    inst = gen_overlap(a.n, a.seed, a.avg_degree, ws, a.radius);
  } else if (a.kind == "tsp-reduce") {
    const auto pts = random_points(a.n + 1, a.seed);
    const double eps = a.epsilon > 0.0 ? a.epsilon : 1.0 / (8.0 * std::max(a.n, 1));
    inst = reduce_tsp_to_toro_no(pts, eps);
  } else {
    const DepGraph g = a.graph.empty() ? random_degree2_graph(a.n, a.seed) : parse_dep_graph(io::read_text_file(a.graph));
    inst = reduce_fvs_to_toro(g, a.radius);
  }
  io::save_instance(inst, a.out);
  out << "wrote " << (inst.labeled ? "labeled" : "unlabeled") << " instance with " << inst.size() << " objects\n";
  return kExitOk;
}

int do_validate(const std::string& instance_path, const std::string& plan_path, std::ostream& out) {
  const Instance inst = io::load_instance(instance_path);
  if (const auto problems = instance_problems(inst); !problems.empty()) {
    out << "instance invalid: " << problems << '\n';
    return kExitInvalidInput;
  }
  const auto starts = validate_arrangement(inst.start, inst.workspace);
  const auto goals = validate_arrangement(inst.goal, inst.workspace);
  out << "instance ok: " << inst.size() << " objects, " << (inst.labeled ? "labeled" : "unlabeled") << ", "
      << (is_non_overlapping(inst) ? "non-overlapping" : "overlapping") << '\n';
  if (!starts.tangencies.empty() || !goals.tangencies.empty()) {
    out << "warning: " << starts.tangencies.size() + goals.tangencies.size() << " tangent pairs\n";
  }
  if (plan_path.empty()) return kExitOk;
  const io::PlanFile pf = io::load_plan(plan_path);
  const PlanCheck check = plan_is_valid(pf.plan, inst);
  if (!check) {
    out << "plan invalid";
    if (check.action) out << " at action " << *check.action + 1;
    out << ": " << check.message << '\n';
    return kExitInvalidInput;
  }
  out << "plan ok\n";
  print_cost(out, pf.plan, inst);
  if (pf.cost && std::abs(*pf.cost - plan_cost(pf.plan, inst).total) > 1e-6 * std::max(1.0, std::abs(*pf.cost))) {
    out << "warning: recorded cost " << num(*pf.cost) << " differs from the recomputed cost\n";
  }
  return kExitOk;
}

struct SolveArgs {
  std::string instance;
  std::string algo = "fvs-single";
  std::string fvs = "ilp-e";
  std::string out;
  std::uint64_t seed = 0;
  std::size_t cap = 1000;
  double time_budget = 60.0;
};

int do_solve(const SolveArgs& a, std::ostream& out) {
  const Instance inst = io::load_instance(a.instance);
  if (const auto problems = instance_problems(inst); !problems.empty()) {
    throw std::invalid_argument("instance invalid: " + problems);
  }
  FvsOptions fo;
  fo.time_budget = std::chrono::duration<double>(a.time_budget);
  const FvsMethod method = fvs_method(a.fvs);
  Plan plan;
  if (a.algo == "no-tsp") {
    plan = toro_no_tsp(inst, a.seed);
  } else if (a.algo == "fvs-single") {
    plan = toro_fvs_single(inst, method, fo);
  } else if (a.algo == "optimal") {
    const OptimalPlan best = toro_optimal(inst, a.cap, fo);
    if (best.truncated) out << "warning: optimal FVS enumeration stopped at the cap\n";
    plan = best.plan;
  } else {
    plan = feasible_plan(inst, solve_fvs(build_dep_graph(inst), method, fo).vertices);
  }
  print_cost(out, plan, inst);
  if (!a.out.empty()) io::save_plan(plan, plan_cost(plan, inst).total, a.out);
  return kExitOk;
}

struct BenchArgs {
  std::string suite;
  std::vector<std::string> sizes;
  std::vector<std::string> degrees;
  std::vector<std::string> methods;
  int trials = 10;
  int max_degree = 0;
  std::uint64_t seed = 0;
  bool labeled = false;
  std::size_t cap = 1000;
  std::string out;
};

int do_bench(const BenchArgs& a, std::ostream& out) {
  bench::CsvTable table;
  const auto sizes = parse_int_list(a.sizes);
  const auto degrees = parse_double_list(a.degrees);
  if (a.suite == "no") {
    bench::NoBenchParams p;
    if (!sizes.empty()) p.sizes = sizes;
    p.trials = a.trials;
    p.seed = a.seed;
    p.labeled = a.labeled;
    table = bench::run_no_bench(p);
  } else if (a.suite == "fvs") {
    bench::FvsBenchParams p;
    if (!sizes.empty()) p.sizes = sizes;
    if (!degrees.empty()) p.avg_degree = degrees.front();
    if (a.max_degree > 0) p.max_degree = a.max_degree;
    if (!a.methods.empty()) {
      p.methods.clear();
      for (const auto& m : a.methods) p.methods.push_back(fvs_method(m));
    }
    p.trials = a.trials;
    p.seed = a.seed;
    table = bench::run_fvs_bench(p);
  } else if (a.suite == "fvs-count") {
    bench::FvsCountParams p;
    if (!sizes.empty()) p.sizes = sizes;
    if (!degrees.empty()) p.avg_degrees = degrees;
    p.max_degree = a.max_degree;
    p.trials = a.trials;
    p.seed = a.seed;
    p.cap = a.cap;
    table = bench::run_fvs_count_bench(p);
  } else {
    bench::ToroBenchParams p;
    if (!sizes.empty()) p.sizes = sizes;
    if (!degrees.empty()) p.avg_degrees = degrees;
    if (!a.methods.empty()) p.method = fvs_method(a.methods.front());
    p.trials = a.trials;
    p.seed = a.seed;
    table = bench::run_toro_bench(p);
  }
  if (a.out.empty()) {
    table.write(out);
  } else {
    io::write_text_file(a.out, table.to_csv());
    out << "wrote " << table.rows.size() << " rows to " << a.out << '\n';
  }
  return kExitOk;
}

int do_plot(const std::string& instance_path, const std::string& plan_path, const std::string& svg_path,
            std::ostream& out) {
  const Instance inst = io::load_instance(instance_path);
  if (const auto problems = instance_problems(inst); !problems.empty()) {
    throw std::invalid_argument("instance invalid: " + problems);
  }
  std::optional<Plan> plan;
  if (!plan_path.empty()) plan = io::load_plan(plan_path).plan;
  io::write_text_file(svg_path, render_svg(inst, plan ? &*plan : nullptr));
  out << "wrote " << svg_path << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tabletop object rearrangement planner"};
  app.require_subcommand(1);
  const std::uint64_t seed = default_seed();
  std::function<int()> action;

  GenArgs gen;
  gen.seed = seed;
  auto* g = app.add_subcommand("gen", "Generate an instance or dependency graph");
  g->add_option("kind", gen.kind, "Generator")
      ->required()
      ->check(CLI::IsMember({"no-overlap", "overlap", "depgraph", "tsp-reduce", "fvs-reduce"}));
  g->add_option("--n", gen.n, "Object, vertex or point count")->check(CLI::NonNegativeNumber);
  g->add_option("--seed", gen.seed, "Random seed (default: TORO_SEED or 0)");
  g->add_option("--out", gen.out, "Output file")->required();
  g->add_option("--radius", gen.radius, "Disc radius");
  g->add_option("--width", gen.width, "Workspace width");
  g->add_option("--height", gen.height, "Workspace height");
  g->add_option("--avg-deg", gen.avg_degree, "Average dependency degree");
  g->add_option("--max-deg", gen.max_degree, "Maximum total degree (depgraph)");
  g->add_flag("--unlabeled", gen.unlabeled, "Unlabeled instance (no-overlap)");
  g->add_option("--epsilon", gen.epsilon, "Start-goal offset (tsp-reduce; default 1/(8n))");
  g->add_option("--graph", gen.graph, "Dependency graph file (fvs-reduce; default: random)");
  g->callback([&] { action = [&] { return do_gen(gen, out); }; });

  std::string v_instance, v_plan;
  auto* v = app.add_subcommand("validate", "Check an instance and optionally a plan");
  v->add_option("--instance", v_instance, "Instance file")->required();
  v->add_option("--plan", v_plan, "Plan file");
  v->callback([&] { action = [&] { return do_validate(v_instance, v_plan, out); }; });

  SolveArgs solve;
  solve.seed = seed;
  auto* s = app.add_subcommand("solve", "Plan a rearrangement");
  s->add_option("--instance", solve.instance, "Instance file")->required();
  s->add_option("--algo", solve.algo, "Pipeline")
      ->check(CLI::IsMember({"no-tsp", "fvs-single", "optimal", "feasible"}));
  s->add_option("--fvs", solve.fvs, "Feedback vertex set method")->check(CLI::IsMember(kFvsNames));
  s->add_option("--out", solve.out, "Plan output file");
  s->add_option("--seed", solve.seed, "Seed for the tour heuristic");
  s->add_option("--cap", solve.cap, "Optimal FVS enumeration cap");
  s->add_option("--time-budget", solve.time_budget, "FVS solver time budget in seconds");
  s->callback([&] { action = [&] { return do_solve(solve, out); }; });

  BenchArgs bench;
  bench.seed = seed;
  auto* b = app.add_subcommand("bench", "Run an experiment suite and write CSV");
  b->add_option("suite", bench.suite, "Suite")->required()->check(CLI::IsMember({"no", "fvs", "fvs-count", "toro"}));
  b->add_option("--sizes", bench.sizes, "Sizes, comma separated")->delimiter(',');
  b->add_option("--avg-deg", bench.degrees, "Average degrees, comma separated")->delimiter(',');
  b->add_option("--methods", bench.methods, "FVS methods, comma separated")
      ->delimiter(',')
      ->check(CLI::IsMember(kFvsNames));
  b->add_option("--trials", bench.trials, "Trials per setting")->check(CLI::PositiveNumber);
  b->add_option("--max-deg", bench.max_degree, "Maximum total degree");
  b->add_option("--seed", bench.seed, "Random seed (default: TORO_SEED or 0)");
  b->add_flag("--labeled", bench.labeled, "Labeled instances (no suite)");
  b->add_option("--cap", bench.cap, "Optimal FVS enumeration cap (fvs-count)");
  b->add_option("--out", bench.out, "CSV output file (default: stdout)");
  b->callback([&] { action = [&] { return do_bench(bench, out); }; });

  std::string p_instance, p_plan, p_out;
  auto* p = app.add_subcommand("plot", "Draw an instance and plan as SVG");
  p->add_option("--instance", p_instance, "Instance file")->required();
  p->add_option("--plan", p_plan, "Plan file");
  p->add_option("--out", p_out, "SVG output file")->required();
  p->callback([&] { action = [&] { return do_plot(p_instance, p_plan, p_out, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const ParseError& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const SizeGuardError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolverFailure;
  } catch (const SolverLimitError& e) {
    err << "error: solver limit: " << e.what() << '\n';
    return kExitSolverFailure;
  } catch (const InfeasibleError& e) {
    err << "error: infeasible: " << e.what() << '\n';
    return kExitSolverFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolverFailure;
  }
}

}  // namespace toro::cli
