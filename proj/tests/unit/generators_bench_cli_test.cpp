#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "oracles.hpp"
#include "toro/bench.hpp"
#include "toro/cli.hpp"
#include "toro/depgraph.hpp"
#include "toro/errors.hpp"
#include "toro/fvs.hpp"
#include "toro/generators.hpp"
#include "toro/io.hpp"
#include "toro/planner.hpp"

using namespace toro;

namespace {

Arrangement joint(const Instance& inst) {
  Arrangement all{inst.start.poses, inst.radius()};
  all.poses.insert(all.poses.end(), inst.goal.poses.begin(), inst.goal.poses.end());
  return all;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "toro_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Generators, NoOverlap) {
  const Rect ws{0, 0, 100, 100};
  const Instance empty = gen_no_overlap(0, 1, ws, 0.5);
  EXPECT_EQ(empty.size(), 0);
  EXPECT_EQ(instance_problems(empty), "");
  const Instance big = gen_no_overlap(200, 1, ws, 0.5);
  EXPECT_EQ(big.size(), 200);
  EXPECT_TRUE(validate_arrangement(joint(big), ws).ok());
  EXPECT_TRUE(is_non_overlapping(big));
  EXPECT_EQ(big.rest_start, (Point2{0, 0}));
  EXPECT_EQ(big.rest_goal, (Point2{100, 100}));
  const Instance again = gen_no_overlap(200, 1, ws, 0.5);
  EXPECT_EQ(again.start.poses, big.start.poses);
  EXPECT_EQ(again.goal.poses, big.goal.poses);
  EXPECT_NE(gen_no_overlap(200, 2, ws, 0.5).start.poses, big.start.poses);
  EXPECT_THROW(gen_no_overlap(1000, 1, {0, 0, 10, 10}, 1.0), std::invalid_argument);
}

TEST(Generators, DepGraph) {
  const DepGraph g = gen_dep_graph(20, 2.0, 4, 5);
  EXPECT_EQ(g.arc_count(), 40u);
  for (int v = 0; v < g.size(); ++v) EXPECT_LE(g.in_degree(v) + g.out_degree(v), 4);
  EXPECT_EQ(gen_dep_graph(20, 0.0, 4, 5).arc_count(), 0u);
  EXPECT_EQ(gen_dep_graph(20, 2.5, 5, 5).arc_count(), 50u);
  EXPECT_EQ(gen_dep_graph(20, 2.0, 4, 5), g);
  EXPECT_THROW(gen_dep_graph(20, 3.0, 4, 5), std::invalid_argument);
}

TEST(Generators, OverlapDensity) {
  const Rect ws{0, 0, 100, 100};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_EQ(build_dep_graph(gen_overlap(20, seed, 0.0, ws, 1.0)).arc_count(), 0u);
  }
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = gen_overlap(20, seed, 2.0, ws, 1.0);
    EXPECT_TRUE(validate_arrangement(inst.start, ws).ok());
    EXPECT_TRUE(validate_arrangement(inst.goal, ws).ok());
    sum += static_cast<double>(build_dep_graph(inst).arc_count()) / 20.0;
  }
  EXPECT_GE(sum / 100.0, 1.5);
  EXPECT_LE(sum / 100.0, 2.5);
}

TEST(Generators, TspReduction) {
  const std::vector<Point2> line{{0, 0}, {1, 0}, {2, 0}};
  const Instance inst = reduce_tsp_to_toro_no(line, 0.01);
  EXPECT_EQ(inst.size(), 2);
  EXPECT_TRUE(is_non_overlapping(inst));
  EXPECT_EQ(inst.rest_start, inst.rest_goal);
  for (int i = 0; i < inst.size(); ++i) {
    EXPECT_NEAR(inst.goal_of(i).x - inst.start_of(i).x, 0.01, 1e-15);
    EXPECT_EQ(inst.goal_of(i).y, inst.start_of(i).y);
  }
  const Plan plan = toro_no_tsp(inst);
  double carry = 0.0;
  for (const auto& a : plan.actions) carry += geometry::dist(a.pick, a.place);
  EXPECT_NEAR(plan_distance(plan, inst) - carry, oracle::euclidean_tsp(line), 2 * 0.01);
  EXPECT_EQ(reduce_tsp_to_toro_no(std::vector<Point2>{{1, 1}}, 0.1).size(), 0);
  EXPECT_THROW(reduce_tsp_to_toro_no(line, 0.2), std::invalid_argument);
}

TEST(Generators, FvsReduction) {
  const DepGraph two = DepGraph::from_arcs(2, std::vector<Arc>{{0, 1}, {1, 0}});
  const Instance a = reduce_fvs_to_toro(two, 1.0);
  EXPECT_EQ(a.size(), 4);
  EXPECT_EQ(min_grasps(a), 5);
  EXPECT_EQ(build_dep_graph(a), arc_split_graph(two));

  const DepGraph tri = DepGraph::from_arcs(3, std::vector<Arc>{{0, 1}, {1, 2}, {2, 0}});
  const Instance b = reduce_fvs_to_toro(tri, 1.0);
  EXPECT_EQ(b.size(), 6);
  const auto split = arc_split_graph(tri);
  EXPECT_EQ(oracle::min_fvs_size(split.size(), split.arcs()), 1);
  EXPECT_EQ(min_fvs_size(build_dep_graph(b)), 1);

  // Degree-two ring with chords.
  const DepGraph dense = DepGraph::from_arcs(4, std::vector<Arc>{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {2, 0}});
  const Instance c = reduce_fvs_to_toro(dense, 0.5);
  EXPECT_EQ(build_dep_graph(c), arc_split_graph(dense));
  EXPECT_EQ(instance_problems(c), "");

  const DepGraph heavy = DepGraph::from_arcs(4, std::vector<Arc>{{0, 1}, {0, 2}, {0, 3}, {1, 0}, {2, 0}, {3, 0}});
  EXPECT_THROW(reduce_fvs_to_toro(heavy, 1.0), std::invalid_argument);
  const DepGraph split_graph = DepGraph::from_arcs(3, std::vector<Arc>{{0, 1}});
  EXPECT_THROW(reduce_fvs_to_toro(split_graph, 1.0), std::invalid_argument);
}

TEST(Bench, RandomBaseline) {
  const Instance one = gen_no_overlap(1, 3, {0, 0, 100, 100}, 1.0);
  EXPECT_EQ(bench::random_baseline_plan(one, 1), toro_no_tsp(one));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance inst = gen_no_overlap(6, seed, {0, 0, 100, 100}, 1.0);
    inst.labeled = seed % 2 == 0;
    const Plan rnd = bench::random_baseline_plan(inst, seed);
    EXPECT_TRUE(plan_is_valid(rnd, inst));
    EXPECT_GE(plan_cost(rnd, inst).total, plan_cost(toro_no_tsp(inst), inst).total - 1e-9);
  }
}

TEST(Bench, NoSuite) {
  bench::NoBenchParams p;
  p.sizes = {1};
  p.trials = 1;
  const auto t = bench::run_no_bench(p);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"n", "mean_time", "mean_opt_cost", "mean_random_ratio"}));
  EXPECT_EQ(t.rows[0][3], "1");
  p.sizes = {4, 6};
  p.trials = 3;
  EXPECT_EQ(bench::run_no_bench(p).to_csv(false), bench::run_no_bench(p).to_csv(false));
}

TEST(Bench, FvsSuites) {
  bench::FvsBenchParams p;
  p.sizes = {8};
  p.trials = 5;
  p.methods = {FvsMethod::ilp_constraint, FvsMethod::ilp_enumerate, FvsMethod::brute_force, FvsMethod::msch};
  const auto t = bench::run_fvs_bench(p);
  ASSERT_EQ(t.rows.size(), 4u);
  for (const auto& row : t.rows) {
    if (row[0] != "msch") EXPECT_EQ(row[3], "1") << row[0];
  }
  p.avg_degree = 0.0;
  for (const auto& row : bench::run_fvs_bench(p).rows) EXPECT_EQ(row[3], "1");
  p.sizes = {25};
  p.avg_degree = 1.0;
  p.trials = 1;
  const auto skipped = bench::run_fvs_bench(p);
  EXPECT_EQ(skipped.rows.size(), 3u);

  bench::FvsCountParams c;
  c.sizes = {6};
  c.avg_degrees = {0.0};
  c.trials = 3;
  const auto counts = bench::run_fvs_count_bench(c);
  ASSERT_EQ(counts.rows.size(), 1u);
  EXPECT_EQ(counts.rows[0][2], "1");
  EXPECT_EQ(counts.rows[0][3], "0");
}

TEST(Bench, ToroSuiteAndCsv) {
  bench::ToroBenchParams p;
  p.sizes = {4};
  p.avg_degrees = {0.0, 1.0};
  p.trials = 2;
  const auto t = bench::run_toro_bench(p);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][5], "0");
  const std::string csv = t.to_csv(false);
  EXPECT_NE(csv.find("n,avg_deg,timeouts\n"), std::string::npos);
  EXPECT_EQ(csv, bench::run_toro_bench(p).to_csv(false));

  bench::CsvTable q;
  q.add_column("a,b");
  q.rows.push_back({"say \"hi\""});
  EXPECT_EQ(q.to_csv(), "\"a,b\"\n\"say \"\"hi\"\"\"\n");
}

TEST(Cli, SolveAndValidateRoundTrip) {
  const std::string fixture = TORO_FIXTURE_DIR "/swap.json";
  const auto plan = scratch("swap_plan.json").string();
  const auto solved = run_cli({"solve", "--instance", fixture, "--algo", "fvs-single", "--out", plan});
  EXPECT_EQ(solved.code, 0) << solved.err;
  EXPECT_NE(solved.out.find("actions: 3, buffers: 1"), std::string::npos) << solved.out;
  EXPECT_EQ(run_cli({"validate", "--instance", fixture, "--plan", plan}).code, 0);
  for (const char* algo : {"optimal", "feasible"}) {
    EXPECT_EQ(run_cli({"solve", "--instance", fixture, "--algo", algo}).code, 0) << algo;
  }
}

TEST(Cli, ExitCodes) {
  const std::string fixture = TORO_FIXTURE_DIR "/swap.json";
  EXPECT_EQ(run_cli({"solve", "--instance", fixture, "--algo", "magic"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"solve", "--instance", fixture, "--algo", "no-tsp"}).code, cli::kExitInvalidInput);
  const auto broken = scratch("broken.json");
  io::write_text_file(broken, R"({"radius": 1, "workspace": [0,0,1,1], "rest_start": [0,0]})");
  const auto r = run_cli({"validate", "--instance", broken.string()});
  EXPECT_EQ(r.code, cli::kExitInvalidInput);
  EXPECT_NE(r.err.find("instance.rest_goal"), std::string::npos) << r.err;
  const auto bad_plan = scratch("bad_plan.json");
  io::save_plan(Plan{{Action{0, {2, 2}, {5, 3.5}, PlaceKind::goal}}}, std::nullopt, bad_plan);
  EXPECT_EQ(run_cli({"validate", "--instance", fixture, "--plan", bad_plan.string()}).code, cli::kExitInvalidInput);
}

TEST(Cli, GenerateEveryKind) {
  for (const char* kind : {"no-overlap", "overlap", "tsp-reduce", "fvs-reduce"}) {
    const auto path = scratch(std::string(kind) + ".json").string();
    const auto r = run_cli({"gen", kind, "--n", "6", "--seed", "2", "--out", path});
    ASSERT_EQ(r.code, 0) << kind << ": " << r.err;
    EXPECT_EQ(instance_problems(io::load_instance(path)), "") << kind;
    EXPECT_EQ(run_cli({"solve", "--instance", path, "--algo", "fvs-single"}).code, 0) << kind;
  }
  const auto graph = scratch("graph.txt");
  ASSERT_EQ(run_cli({"gen", "depgraph", "--n", "20", "--out", graph.string()}).code, 0);
  EXPECT_EQ(parse_dep_graph(io::read_text_file(graph)).arc_count(), 40u);
}

TEST(Cli, PlotIsWellFormed) {
  const std::string fixture = TORO_FIXTURE_DIR "/swap.json";
  const auto plan = scratch("plot_plan.json").string();
  ASSERT_EQ(run_cli({"solve", "--instance", fixture, "--out", plan}).code, 0);
  const auto svg = scratch("plot.svg");
  ASSERT_EQ(run_cli({"plot", "--instance", fixture, "--plan", plan, "--out", svg.string()}).code, 0);
  const std::string text = io::read_text_file(svg);
  EXPECT_TRUE(oracle::well_formed_xml(text));
  EXPECT_NE(text.find("polyline"), std::string::npos);

  Instance empty;
  empty.rest_goal = {1, 1};
  EXPECT_TRUE(oracle::well_formed_xml(cli::render_svg(empty, nullptr)));
  EXPECT_NE(cli::render_svg(empty, nullptr).find("s_M"), std::string::npos);
}

TEST(Cli, BenchWritesCsv) {
  const auto csv = scratch("bench.csv");
  const auto r = run_cli({"bench", "fvs-count", "--sizes", "6", "--avg-deg", "1", "--trials", "2", "--out", csv.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = io::read_text_file(csv);
  EXPECT_EQ(text.rfind("# suite: fvs-count", 0), 0u);
  EXPECT_NE(text.find("n,avg_deg,mean_optimal_fvs_count,truncated"), std::string::npos);
}
