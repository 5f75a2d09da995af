// Command-line front end: solve single instances, benchmark the DP
// pipelines, compare against a 2-opt baseline on TTP files, and build
// partition-reduction instances.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wtsp/cluster.hpp"
#include "wtsp/cost_function.hpp"
#include "wtsp/hardness.hpp"
#include "wtsp/instance.hpp"
#include "wtsp/json_io.hpp"
#include "wtsp/linear_start.hpp"
#include "wtsp/oracle.hpp"
#include "wtsp/path_dp.hpp"
#include "wtsp/star_approx.hpp"
#include "wtsp/synthetic.hpp"
#include "wtsp/ttp_io.hpp"

namespace {

using nlohmann::json;

// Exit codes: 0 success, 2 usage or solver/metric mismatch, 3 unreadable or
// malformed input, 4 broken internal invariant.
class UsageError : public std::exception {
 public:
  explicit UsageError(std::string msg) : msg_(std::move(msg)) {}
  const char* what() const noexcept override { return msg_.c_str(); }

 private:
  std::string msg_;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read " + path);
  return buf.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path);
}

wtsp::WTspInstance load_instance(const std::string& path) {
  return wtsp::instance_from_json(json::parse(read_text(path)));
}

json json_number(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

json tour_to_json(const wtsp::Tour& tour) {
  return json(tour.order);
}

std::string instance_label(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double v, int precision = 17) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

struct SolveArgs {
  std::string instance_path;
  std::string solver;
  int start = -1;
  double eps = 0.0;
  std::string knapsack = "exact";
  std::string tour_out;
  std::string report_out;
};

int cmd_solve(const SolveArgs& args) {
  wtsp::WTspInstance instance = load_instance(args.instance_path);
  if (args.start >= 0) {
    if (args.start >= instance.n())
      throw UsageError("--start " + std::to_string(args.start) +
                       " out of range for n=" + std::to_string(instance.n()));
    instance = instance.with_start(args.start);
  }

  const bool needs_path =
      args.solver == "path-dp" || args.solver == "path-dp-free";
  if (needs_path && instance.metric_kind() != wtsp::MetricKind::Path)
    throw UsageError("solver " + args.solver + " needs a path instance");
  if (args.solver == "star" &&
      instance.metric_kind() != wtsp::MetricKind::Star)
    throw UsageError("solver star needs a star instance");
  if (args.solver == "linear" &&
      instance.f().kind() != wtsp::CostFunction::Kind::LinearSpeed)
    throw UsageError("solver linear needs a linear-speed cost function");
  if (args.solver == "brute" && instance.n() > 12)
    throw UsageError("brute solver is limited to n <= 12, got n=" +
                     std::to_string(instance.n()));

  json params;
  params["start"] = instance.start();
  params["eps"] = nullptr;
  params["seed"] = nullptr;
  params["k"] = nullptr;

  wtsp::Tour tour;
  double cost = 0.0;
  json extra;

  const auto t0 = std::chrono::steady_clock::now();
  if (args.solver == "path-dp") {
    auto r = wtsp::solve_path_fixed_start(instance);
    tour = std::move(r.tour);
    cost = r.cost;
    extra["zigzag"] = wtsp::is_zigzag(instance, tour);
  } else if (args.solver == "path-dp-free") {
    auto r = wtsp::solve_path_free_start(instance);
    tour = std::move(r.tour);
    cost = r.cost;
    params["start"] = r.start;
    extra["zigzag"] = wtsp::is_zigzag(instance, tour);
  } else if (args.solver == "star") {
    const bool fptas = args.knapsack == "fptas";
    const double eps = args.eps > 0.0 ? args.eps : 0.25;
    auto r = wtsp::solve_star(instance, eps,
                              fptas ? wtsp::KnapsackMode::Fptas
                                    : wtsp::KnapsackMode::Exact);
    tour = std::move(r.tour);
    cost = r.cost;
    params["eps"] = fptas ? json(eps) : json(nullptr);
    params["knapsack"] = args.knapsack;
  } else if (args.solver == "linear") {
    const double eps = args.eps > 0.0 ? args.eps : 1.0 / instance.n();
    auto r = wtsp::solve_linear(instance, eps);
    tour = std::move(r.tour);
    cost = r.cost;
    params["eps"] = eps;
    params["start"] = tour.order.empty() ? instance.start() : tour.order[0];
    extra["duration"] = json_number(r.duration);
    extra["duration_bound"] = json_number(r.bound);
  } else {
    auto r = wtsp::brute_force_wtsp(instance);
    tour = std::move(r.tour);
    cost = r.cost;
  }
  const double elapsed = seconds_since(t0);

  json report;
  report["instance"] = instance_label(args.instance_path);
  report["solver"] = args.solver;
  report["cost"] = json_number(cost);
  report["baseline_cost"] = nullptr;
  report["improvement_percent"] = nullptr;
  report["wall_time_seconds"] = elapsed;
  report["parameters"] = params;
  report["tour"] = tour_to_json(tour);
  for (auto& [key, value] : extra.items()) report[key] = value;

  const std::string tour_path = args.tour_out.empty()
                                    ? args.instance_path + ".tour"
                                    : args.tour_out;
  const std::string report_path = args.report_out.empty()
                                      ? args.instance_path + ".report.json"
                                      : args.report_out;
  write_text(tour_path, wtsp::write_tour_file(tour, 0));
  write_text(report_path, report.dump(2) + "\n");
  std::cout << "solver=" << args.solver << " cost=" << fmt(cost)
            << " time=" << fmt(elapsed, 6) << "s tour=" << tour_path
            << " report=" << report_path << "\n";
  return 0;
}

struct BenchArgs {
  std::vector<int> sizes{101, 501, 1001};
  int reps = 3;
  int items_per_city = 5;
  unsigned seed = 42;
  int k = 0;
  std::string csv_out = "bench.csv";
  std::string summary_out = "bench_summary.csv";
};

int cmd_bench(const BenchArgs& args) {
  struct Row {
    std::string pipeline;
    int n = 0;
    int rep = 0;
    double seconds = 0.0;
    double cost = 0.0;
  };
  std::vector<Row> rows;

  for (int n : args.sizes) {
    if (n < 2) throw UsageError("bench sizes must be >= 2");
    for (int rep = 0; rep < args.reps; ++rep) {
      const unsigned inst_seed =
          args.seed + 97u * static_cast<unsigned>(n) +
          static_cast<unsigned>(rep);
      const wtsp::SyntheticInstance synth =
          wtsp::make_line_instance(n, args.items_per_city, inst_seed);

      auto t0 = std::chrono::steady_clock::now();
      const auto full = wtsp::solve_path_fixed_start(synth.instance);
      rows.push_back({"full-dp", n, rep, seconds_since(t0), full.cost});

      t0 = std::chrono::steady_clock::now();
      const auto clustered =
          wtsp::clustered_solve(synth.instance, synth.items, args.k,
                                inst_seed);
      rows.push_back(
          {"clustered", n, rep, seconds_since(t0), clustered.cost});
    }
  }

  std::ostringstream csv;
  csv << "pipeline,n,rep,seconds,cost\n";
  for (const Row& r : rows)
    csv << r.pipeline << "," << r.n << "," << r.rep << ","
        << fmt(r.seconds, 6) << "," << fmt(r.cost) << "\n";
  write_text(args.csv_out, csv.str());

  std::ostringstream summary;
  summary << "pipeline,n,mean_seconds,median_seconds,mean_cost\n";
  for (const std::string& pipeline : {std::string("full-dp"),
                                      std::string("clustered")}) {
    std::vector<double> log_n, log_t;
    for (int n : args.sizes) {
      std::vector<double> secs, costs;
      for (const Row& r : rows)
        if (r.pipeline == pipeline && r.n == n) {
          secs.push_back(r.seconds);
          costs.push_back(r.cost);
        }
      const double mean_s =
          std::accumulate(secs.begin(), secs.end(), 0.0) / secs.size();
      const double mean_c =
          std::accumulate(costs.begin(), costs.end(), 0.0) / costs.size();
      const double med_s = median(secs);
      summary << pipeline << "," << n << "," << fmt(mean_s, 6) << ","
              << fmt(med_s, 6) << "," << fmt(mean_c) << "\n";
      log_n.push_back(std::log(static_cast<double>(n)));
      log_t.push_back(std::log(med_s));
    }
    if (args.sizes.size() >= 2) {
      const double slope = fit_slope(log_n, log_t);
      std::cout << pipeline << " log-log slope: " << fmt(slope, 4) << "\n";
    }
  }
  write_text(args.summary_out, summary.str());
  std::cout << "rows=" << rows.size() << " csv=" << args.csv_out
            << " summary=" << args.summary_out << "\n";
  return 0;
}

struct CompareArgs {
  std::string ttp_path;
  std::string packing = "greedy";
  std::string plan_path;
  std::string distance = "path";
  unsigned seed = 42;
  int max_moves = 10000;
  std::string report_out;
  std::string baseline_out;
  std::string tour_out;
};

int cmd_compare(const CompareArgs& args) {
  if (args.distance != "path")
    throw UsageError("the path DP needs path-projected distances; only "
                     "--distance path is comparable");
  const wtsp::TtpInstance ttp = wtsp::parse_ttp(read_text(args.ttp_path));

  wtsp::PackingPlan plan;
  if (args.packing == "greedy") {
    wtsp::Tour identity;
    identity.order.resize(ttp.coords.size());
    std::iota(identity.order.begin(), identity.order.end(), 0);
    plan = wtsp::greedy_packing(ttp, identity);
  } else {
    if (args.plan_path.empty())
      throw UsageError("--packing file needs --plan");
    plan = wtsp::parse_packing_plan(read_text(args.plan_path), 1);
  }

  const wtsp::WTspInstance instance =
      wtsp::fix_packing(ttp, plan, wtsp::DistanceMode::PathProjected);

  auto t0 = std::chrono::steady_clock::now();
  const wtsp::Tour baseline =
      wtsp::two_opt_baseline(instance, args.seed, args.max_moves);
  const double baseline_seconds = seconds_since(t0);
  const double baseline_cost = wtsp::tour_cost(instance, baseline);

  t0 = std::chrono::steady_clock::now();
  const auto dp = wtsp::solve_path_fixed_start(instance);
  const double dp_seconds = seconds_since(t0);
  // Both tours go through the same evaluator so the reported improvement is
  // not polluted by the DP table's different summation order.
  const double dp_cost = wtsp::tour_cost(instance, dp.tour);

  double improvement =
      baseline_cost > 0.0
          ? (baseline_cost - dp_cost) / baseline_cost * 100.0
          : 0.0;
  if (improvement < -1e-9)
    throw std::logic_error("exact DP lost to the 2-opt baseline");
  if (improvement < 0.0) improvement = 0.0;

  json report;
  report["instance"] = ttp.name.empty() ? instance_label(args.ttp_path)
                                        : ttp.name;
  report["solver"] = "path-dp";
  report["cost"] = json_number(dp_cost);
  report["baseline_cost"] = json_number(baseline_cost);
  report["improvement_percent"] = improvement;
  report["wall_time_seconds"] =
      json{{"baseline", baseline_seconds}, {"path_dp", dp_seconds}};
  report["parameters"] = json{{"packing", args.packing},
                              {"seed", args.seed},
                              {"max_moves", args.max_moves},
                              {"selected_items",
                               static_cast<int>(plan.selected.size())}};

  const std::string report_path = args.report_out.empty()
                                      ? args.ttp_path + ".compare.json"
                                      : args.report_out;
  const std::string baseline_path = args.baseline_out.empty()
                                        ? args.ttp_path + ".baseline.tour"
                                        : args.baseline_out;
  const std::string tour_path = args.tour_out.empty()
                                    ? args.ttp_path + ".dp.tour"
                                    : args.tour_out;
  write_text(baseline_path, wtsp::write_tour_file(baseline, 1));
  write_text(tour_path, wtsp::write_tour_file(dp.tour, 1));
  write_text(report_path, report.dump(2) + "\n");
  std::cout << "baseline=" << fmt(baseline_cost) << " dp=" << fmt(dp_cost)
            << " improvement=" << fmt(improvement, 4) << "% report="
            << report_path << "\n";
  return 0;
}

struct ReduceArgs {
  std::vector<std::int64_t> entries;
  std::string out = "reduced.json";
  bool check = false;
};

int cmd_reduce(const ReduceArgs& args) {
  const wtsp::ReducedInstance reduced = [&] {
    try {
      return wtsp::reduce_partition(args.entries);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();

  write_text(args.out,
             wtsp::instance_to_json(reduced.instance).dump(2) + "\n");
  std::cout << "n=" << reduced.instance.n() << " lambda=" << reduced.lambda
            << " s_max=" << reduced.s_max
            << " threshold=" << reduced.s_max + reduced.lambda
            << " instance=" << args.out << "\n";
  if (args.check) {
    const wtsp::ThresholdCheck check = wtsp::check_threshold(args.entries);
    std::cout << "optimal_cost=" << fmt(check.optimal_cost)
              << " partitionable=" << (check.partitionable ? "yes" : "no")
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted TSP toolkit: exact path DP, star and linear-speed "
               "approximations, clustering, and TTP comparisons"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand(
      "solve", "Solve one instance JSON and write tour plus report");
  solve->add_option("instance", solve_args.instance_path, "Instance JSON file")
      ->required();
  solve->add_option("--solver", solve_args.solver,
                    "path-dp | path-dp-free | star | linear | brute")
      ->required()
      ->check(CLI::IsMember(
          {"path-dp", "path-dp-free", "star", "linear", "brute"}));
  solve->add_option("--start", solve_args.start,
                    "Start node override (0-based)");
  solve->add_option("--eps", solve_args.eps,
                    "Approximation epsilon (0 picks a solver default)");
  solve->add_option("--knapsack", solve_args.knapsack,
                    "Knapsack mode for the star solver")
      ->check(CLI::IsMember({"exact", "fptas"}));
  solve->add_option("--out", solve_args.tour_out, "Tour file path");
  solve->add_option("--report", solve_args.report_out, "Report JSON path");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand(
      "bench", "Time the full and clustered DP pipelines on synthetic "
               "line instances");
  bench->add_option("--sizes", bench_args.sizes, "City counts to benchmark")
      ->expected(-1);
  bench->add_option("--reps", bench_args.reps, "Repetitions per size")
      ->check(CLI::PositiveNumber);
  bench->add_option("--items-per-city", bench_args.items_per_city,
                    "Items generated per non-start city")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_args.seed, "Base RNG seed")
      ->envname("WTSP_SEED");
  bench->add_option("--k", bench_args.k,
                    "Cluster count (0 = square root of the city count)");
  bench->add_option("--out", bench_args.csv_out, "Per-repetition CSV path");
  bench->add_option("--summary", bench_args.summary_out,
                    "Aggregated CSV path");

  CompareArgs compare_args;
  CLI::App* compare = app.add_subcommand(
      "compare", "Fix a packing on a TTP file and pit the path DP against "
                 "a 2-opt baseline");
  compare->add_option("ttp", compare_args.ttp_path, "TTP instance file")
      ->required();
  compare->add_option("--packing", compare_args.packing,
                      "Packing source: greedy | file")
      ->check(CLI::IsMember({"greedy", "file"}));
  compare->add_option("--plan", compare_args.plan_path,
                      "Packing-plan file (with --packing file)");
  compare->add_option("--distance", compare_args.distance,
                      "Distance mode: path | general")
      ->check(CLI::IsMember({"path", "general"}));
  compare->add_option("--seed", compare_args.seed, "Baseline shuffle seed")
      ->envname("WTSP_SEED");
  compare->add_option("--max-moves", compare_args.max_moves,
                      "Accepted 2-opt move budget")
      ->check(CLI::PositiveNumber);
  compare->add_option("--report", compare_args.report_out,
                      "Report JSON path");
  compare->add_option("--out-baseline", compare_args.baseline_out,
                      "Baseline tour file path");
  compare->add_option("--out-tour", compare_args.tour_out,
                      "DP tour file path");

  ReduceArgs reduce_args;
  CLI::App* reduce = app.add_subcommand(
      "reduce", "Build the star instance whose optimum encodes a "
                "partition question");
  reduce->add_option("entries", reduce_args.entries,
                     "Positive integers to partition")
      ->required()
      ->expected(-1);
  reduce->add_option("--out", reduce_args.out, "Instance JSON path");
  reduce->add_flag("--check", reduce_args.check,
                   "Also brute-force the instance and report the verdict");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) return cmd_solve(solve_args);
    if (*bench) return cmd_bench(bench_args);
    if (*compare) return cmd_compare(compare_args);
    return cmd_reduce(reduce_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wtsp::TtpParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
