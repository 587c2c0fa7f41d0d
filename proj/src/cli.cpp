#include "pprlab/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "pprlab/complexity.hpp"
#include "pprlab/estimators.hpp"
#include "pprlab/exact.hpp"
#include "pprlab/json_io.hpp"
#include "pprlab/lab.hpp"
#include "pprlab/validate.hpp"

namespace pprlab {

namespace {

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

WalkMode parse_mode(const std::string& s) {
  if (s == "full") return WalkMode::FullIndependent;
  if (s == "pairwise") return WalkMode::Pairwise;
  throw CLI::ValidationError("--mode", "expected 'full' or 'pairwise'");
}

std::vector<Vertex> parse_id_list(const std::string& s) {
  std::vector<Vertex> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(static_cast<Vertex>(std::stoul(item)));
  }
  return out;
}

void print_report(const EstimateReport& rep, const std::string& output, std::ostream& out) {
  if (output == "json") {
    out << dump_json(to_json(rep));
    return;
  }
  out << "mode:        " << estimator_mode_name(rep.mode) << "\n";
  out << "estimate:    " << g17(rep.estimate) << "\n";
  out << "stop_round:  " << rep.stop_round << " (" << stop_reason_name(rep.stop_reason)
      << ")\n";
  if (rep.mode == EstimatorMode::InstanceSmart)
    out << "degree_test: " << (rep.degree_test_passed ? "positive" : "negative") << "\n";
  out << "queries:     " << rep.queries.total;
  for (std::size_t k = 0; k < kQueryKinds; ++k)
    out << " " << query_kind_name(static_cast<QueryKind>(k)) << "="
        << rep.queries.by_kind[k];
  out << "\n";
  for (const auto& r : rep.rounds)
    out << "  round " << r.round << ": r_push=" << g17(r.r_push) << " tau=" << g17(r.tau)
        << " x1=" << g17(r.x1) << " x2=" << g17(r.x2) << " x3=" << g17(r.x3)
        << " cost=" << r.cost_spent << " walks=" << r.walks << "\n";
}

unsigned bench_threads() {
  if (const char* env = std::getenv("PPRLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

struct BenchRow {
  std::string kind;
  std::uint32_t n;
  double t_star;
  double mean_cost;
  double mean_rel_err;
};

int cmd_bench(const std::vector<std::uint32_t>& sizes, int trials, std::uint64_t seed,
              double alpha, const std::string& output, std::ostream& out) {
  std::vector<BenchRow> rows;
  const std::vector<GraphKind> kinds = {GraphKind::Path, GraphKind::Star,
                                        GraphKind::Complete, GraphKind::MostlyDegreeN,
                                        GraphKind::Random};
  for (GraphKind kind : kinds) {
    for (std::uint32_t n : sizes) {
      GenParams p;
      p.n = n;
      if (kind == GraphKind::MostlyDegreeN) p.deficient = 3;
      if (kind == GraphKind::Random) p.edges = 8ull * n;
      const Graph g = generate(kind, p, seed);
      const Vertex t = (kind == GraphKind::Path || kind == GraphKind::Star) ? n - 1 : 0;

      const PprVector ppr = exact_ppr(g, t, alpha);
      const double exact = ppr.pagerank();
      const ComplexityProfile prof = compute_profile(g, t, ppr);

      std::vector<double> costs(static_cast<std::size_t>(trials));
      std::vector<double> errs(static_cast<std::size_t>(trials));
      const unsigned nthreads = std::min<unsigned>(bench_threads(), trials);
      auto work = [&](unsigned worker) {
        for (int i = static_cast<int>(worker); i < trials;
             i += static_cast<int>(nthreads)) {
          const std::uint64_t s = hash_combine(stream_seed(seed, "trial"), i);
          const auto rep = adaptive_pagerank(g, t, alpha, AdaptiveSeeds::from_root(s));
          costs[i] = static_cast<double>(total_cost(rep));
          errs[i] = std::abs(rep.estimate - exact) / exact;
        }
      };
      if (nthreads <= 1) {
        work(0);
      } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nthreads; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
      }
      double mc = 0, me = 0;
      for (int i = 0; i < trials; ++i) {
        mc += costs[i];
        me += errs[i];
      }
      rows.push_back({graph_kind_name(kind), n, prof.t_star, mc / trials, me / trials});
    }
  }

  if (output == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json j;
      j["kind"] = r.kind;
      j["n"] = r.n;
      j["t_star"] = r.t_star;
      j["mean_cost"] = r.mean_cost;
      j["mean_rel_err"] = r.mean_rel_err;
      arr.push_back(std::move(j));
    }
    out << dump_json(arr);
  } else {
    out << "kind n t_star mean_cost mean_rel_err\n";
    for (const auto& r : rows)
      out << r.kind << " " << r.n << " " << g17(r.t_star) << " " << g17(r.mean_cost)
          << " " << g17(r.mean_rel_err) << "\n";
  }
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"pprlab: adaptive bidirectional PageRank estimation toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a generated graph as an edge list");
  std::string gen_kind = "path", gen_out;
  GenParams gen_params;
  std::uint64_t gen_seed = 1;
  gen->add_option("--kind", gen_kind, "path|complete|star|mostly|random");
  gen->add_option("--n", gen_params.n, "vertex count")->required();
  gen->add_option("--deficient", gen_params.deficient, "mostly: vertices with degree < n");
  gen->add_option("--edges", gen_params.edges, "random: sampled edge count");
  gen->add_flag("--raw", [&](std::int64_t) { gen_params.normalize = false; },
                "skip dangling normalization");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output file")->required();

  // shared estimator options
  struct {
    std::string graph;
    std::uint32_t target = 0;
    double alpha = 0.2;
    double tol = 1e-12;
    std::uint64_t seed = 1;
    std::string mode = "full";
    std::string output = "text";
  } run;

  auto add_common = [&](CLI::App* cmd, bool with_seed) {
    cmd->add_option("--graph", run.graph, "edge-list file")->required();
    cmd->add_option("--target", run.target, "target vertex")->required();
    cmd->add_option("--alpha", run.alpha, "termination probability (0,1)");
    cmd->add_option("--output", run.output, "text|json");
    if (with_seed) {
      cmd->add_option("--seed", run.seed, "root seed");
      cmd->add_option("--mode", run.mode, "walk randomness: full|pairwise");
    }
  };

  auto* exact_cmd = app.add_subcommand("exact", "exact pagerank of the target");
  bool exact_full = false;
  add_common(exact_cmd, false);
  exact_cmd->add_option("--tol", run.tol, "solver tolerance");
  exact_cmd->add_flag("--full", exact_full, "also print the whole PPR column");

  auto* est_cmd = app.add_subcommand("estimate", "adaptive round-doubling estimator");
  add_common(est_cmd, true);

  auto* base_cmd = app.add_subcommand("baseline", "fixed-threshold bidirectional estimator");
  double base_rmax = 0.1;
  std::uint64_t base_walks = 1024;
  add_common(base_cmd, true);
  base_cmd->add_option("--rmax", base_rmax, "push threshold in (0,1]");
  base_cmd->add_option("--walks", base_walks, "number of walks");

  auto* smart_cmd = app.add_subcommand("smart", "degree-test shortcut, adaptive fallback");
  add_common(smart_cmd, true);

  auto* prof_cmd = app.add_subcommand("complexity", "instance-complexity profile");
  bool prof_no_breakpoints = false;
  add_common(prof_cmd, false);
  prof_cmd->add_option("--tol", run.tol, "solver tolerance");
  prof_cmd->add_flag("--no-breakpoints", prof_no_breakpoints, "omit the breakpoint table");

  // surgery
  auto* surg = app.add_subcommand("surgery", "graph transformations");
  std::string surg_op, surg_graph, surg_out, surg_record, surg_sources, surg_w;
  std::uint32_t surg_u = 0, surg_v = 0, surg_x = 0, surg_y = 0, surg_yprime = 0,
                surg_target = 0;
  double surg_eps = 0.5, surg_alpha = 0.2;
  surg->add_option("--op", surg_op, "subdivide|remove-in|gminus|gplus")->required();
  surg->add_option("--graph", surg_graph, "input edge-list file")->required();
  surg->add_option("--out", surg_out, "output edge-list file")->required();
  surg->add_option("--record", surg_record, "write the surgery record as JSON");
  surg->add_option("--u", surg_u, "subdivide: edge source");
  surg->add_option("--v", surg_v, "subdivide/remove-in: vertex");
  surg->add_option("--sources", surg_sources, "remove-in: comma-separated edge sources");
  surg->add_option("--w", surg_w, "gminus/gplus: comma-separated W");
  surg->add_option("--eps", surg_eps, "gminus/gplus: isolation fraction");
  surg->add_option("--x", surg_x, "gplus: designated edge source");
  surg->add_option("--y", surg_y, "gplus: designated edge target");
  surg->add_option("--yprime", surg_yprime, "gplus: W-exit vertex");
  surg->add_option("--target", surg_target, "gplus: pagerank target");
  surg->add_option("--alpha", surg_alpha, "gplus: termination probability");

  // validate
  auto* val = app.add_subcommand("validate", "run the property validators");
  std::string val_suite = "all";
  ValidateOptions vopt;
  val->add_option("--suite", val_suite, "lemmas|push|surgery|degree|all");
  val->add_option("--seed", vopt.seed, "root seed");
  val->add_option("--trials", vopt.trials, "randomized trials per bound");
  val->add_option("--alpha", vopt.alpha, "termination probability");

  // bench
  auto* bench = app.add_subcommand("bench", "estimator cost/error across the generator suite");
  std::string bench_sizes = "1024,4096";
  int bench_trials = 20;
  std::uint64_t bench_seed = 1;
  double bench_alpha = 0.2;
  std::string bench_output = "text";
  bench->add_option("--sizes", bench_sizes, "comma-separated vertex counts");
  bench->add_option("--trials", bench_trials, "runs per instance");
  bench->add_option("--seed", bench_seed, "root seed");
  bench->add_option("--alpha", bench_alpha, "termination probability");
  bench->add_option("--output", bench_output, "text|json");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (gen->parsed()) {
      const Graph g = generate(parse_graph_kind(gen_kind), gen_params, gen_seed);
      save_graph_file(g, gen_out);
      out << "wrote " << gen_out << " (n=" << g.order() << ", m=" << g.size() << ")\n";
      return 0;
    }
    if (exact_cmd->parsed()) {
      const Graph g = load_graph_file(run.graph);
      const PprVector ppr = exact_ppr(g, run.target, run.alpha, run.tol);
      if (run.output == "json") {
        Json j;
        j["target"] = run.target;
        j["alpha"] = run.alpha;
        j["pagerank"] = ppr.pagerank();
        if (exact_full) j["ppr"] = ppr.values;
        out << dump_json(j);
      } else {
        out << g17(ppr.pagerank()) << "\n";
        if (exact_full)
          for (Vertex v = 0; v < g.order(); ++v)
            out << v << " " << g17(ppr.values[v]) << "\n";
      }
      return 0;
    }
    if (est_cmd->parsed()) {
      const Graph g = load_graph_file(run.graph);
      const auto rep = adaptive_pagerank(g, run.target, run.alpha,
                                         AdaptiveSeeds::from_root(run.seed),
                                         parse_mode(run.mode));
      print_report(rep, run.output, out);
      return 0;
    }
    if (base_cmd->parsed()) {
      const Graph g = load_graph_file(run.graph);
      const auto rep = bidirectional_ppr(g, run.target, base_rmax, base_walks, run.seed,
                                         run.alpha, parse_mode(run.mode));
      print_report(rep, run.output, out);
      return 0;
    }
    if (smart_cmd->parsed()) {
      const Graph g = load_graph_file(run.graph);
      const auto rep =
          instance_smart(g, run.target, run.alpha, run.seed, parse_mode(run.mode));
      print_report(rep, run.output, out);
      return 0;
    }
    if (prof_cmd->parsed()) {
      const Graph g = load_graph_file(run.graph);
      const PprVector ppr = exact_ppr(g, run.target, run.alpha, run.tol);
      const auto prof = compute_profile(g, run.target, ppr);
      if (run.output == "json") {
        out << dump_json(to_json(prof, !prof_no_breakpoints));
      } else {
        out << "pagerank " << g17(prof.pagerank) << "\n";
        out << "t_star   " << g17(prof.t_star) << " at r=" << g17(prof.r_star) << "\n";
        out << "breakpoints " << prof.breakpoints.size() << "\n";
      }
      return 0;
    }
    if (surg->parsed()) {
      const Graph g = load_graph_file(surg_graph, /*normalize_dangling=*/false);
      Graph result;
      SurgeryRecord rec;
      if (surg_op == "subdivide") {
        std::tie(result, rec) = subdivide_edge(g, surg_u, surg_v);
      } else if (surg_op == "remove-in") {
        std::tie(result, rec) = remove_in_edges(g, surg_v, parse_id_list(surg_sources));
      } else if (surg_op == "gminus") {
        std::tie(result, rec) = build_g_minus(g, parse_id_list(surg_w), surg_eps);
      } else if (surg_op == "gplus") {
        auto [gminus, minus_rec] = build_g_minus(g, parse_id_list(surg_w), surg_eps);
        std::tie(result, rec) = build_g_plus(gminus, minus_rec, {surg_x, surg_y},
                                             surg_yprime, surg_target, surg_alpha);
      } else {
        err << "error: unknown surgery op '" << surg_op << "'\n";
        return 1;
      }
      save_graph_file(result, surg_out);
      if (!surg_record.empty()) {
        std::ofstream rf(surg_record);
        rf << dump_json(to_json(rec));
      }
      out << "wrote " << surg_out << " (n=" << result.order() << ", m=" << result.size()
          << ")\n";
      return 0;
    }
    if (val->parsed()) {
      const auto results = run_validation_suite(val_suite, vopt);
      bool all_pass = true;
      for (const auto& r : results) {
        out << (r.pass ? "PASS" : "FAIL") << " " << r.name;
        if (!r.detail.empty()) out << " (" << r.detail << ")";
        out << "\n";
        all_pass = all_pass && r.pass;
      }
      out << (all_pass ? "all checks passed" : "validation FAILED") << "\n";
      return all_pass ? 0 : 2;
    }
    if (bench->parsed()) {
      std::vector<std::uint32_t> sizes;
      for (Vertex v : parse_id_list(bench_sizes)) sizes.push_back(v);
      if (sizes.empty()) {
        err << "error: --sizes must name at least one size\n";
        return 1;
      }
      return cmd_bench(sizes, bench_trials, bench_seed, bench_alpha, bench_output, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace pprlab
