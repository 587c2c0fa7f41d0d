#include "pprlab/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace pprlab {

namespace {

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

Graph random_digraph(std::uint32_t n, std::uint64_t m, std::uint64_t seed) {
  GenParams p;
  p.n = n;
  p.edges = m;
  p.normalize = true;
  return generate(GraphKind::Random, p, seed);
}

// First surviving edge (u,v), both endpoints outside `excluded`, maximizing
// ppr[v]; ties to the lowest (v, u).
std::pair<Vertex, Vertex> best_outside_edge(const Graph& g,
                                            const std::vector<char>& excluded,
                                            const std::vector<double>& ppr) {
  Vertex bx = g.order(), by = g.order();
  double best = -1.0;
  for (Vertex u = 0; u < g.order(); ++u) {
    if (excluded[u]) continue;
    for (Vertex v : g.out_lists()[u]) {
      if (excluded[v]) continue;
      if (ppr[v] > best || (ppr[v] == best && (v < by || (v == by && u < bx)))) {
        best = ppr[v];
        bx = u;
        by = v;
      }
    }
  }
  if (bx == g.order()) throw std::runtime_error("no edge outside the excluded set");
  return {bx, by};
}

struct BoundTracker {
  double worst = std::numeric_limits<double>::infinity();
  int violations = 0;
  int trials = 0;

  void observe(double margin) {  // margin >= 0 means the bound held
    ++trials;
    worst = std::min(worst, margin);
    if (margin < 0) ++violations;
  }

  CheckResult result(const std::string& name) const {
    CheckResult r;
    r.name = name;
    r.pass = violations == 0 && trials > 0;
    r.detail = std::to_string(trials) + " trials, worst margin " + fmt(worst);
    return r;
  }
};

}  // namespace

std::vector<double> exact_through_ppr(const Graph& g, Vertex t,
                                      const std::vector<Vertex>& through, double alpha,
                                      double tol) {
  const auto& out = g.out_lists();
  const std::uint32_t n = g.order();
  const PprVector full = exact_ppr(g, t, alpha, tol);

  std::vector<char> pinned(n, 0);
  std::vector<double> x(n, 0.0), nx(n, 0.0);
  for (Vertex v : through) {
    pinned[v] = 1;
    x[v] = full.values[v];  // already visited: the walk continues unrestricted
  }

  const double stop = tol * alpha;
  for (std::uint64_t it = 0; it < (1u << 20); ++it) {
    double delta = 0.0;
    for (Vertex v = 0; v < n; ++v) {
      if (pinned[v]) {
        nx[v] = x[v];
        continue;
      }
      double val = 0.0;
      if (!out[v].empty()) {
        double s = 0.0;
        for (Vertex w : out[v]) s += x[w];
        val = (1.0 - alpha) * s / static_cast<double>(out[v].size());
      }
      delta = std::max(delta, std::abs(val - x[v]));
      nx[v] = val;
    }
    x.swap(nx);
    if (delta < stop) return x;
  }
  throw std::runtime_error("exact_through_ppr: did not converge");
}

double push_identity_residual(const std::vector<std::vector<double>>& ppr_matrix,
                              const PushState& st, Vertex t) {
  const std::size_t n = ppr_matrix.size();
  double worst = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    double acc = st.reserve(static_cast<Vertex>(s));
    for (std::size_t v = 0; v < n; ++v) {
      const double r = st.residue(static_cast<Vertex>(v));
      if (r > 0.0) acc += ppr_matrix[v][s] * r;
    }
    worst = std::max(worst, std::abs(ppr_matrix[t][s] - acc));
  }
  return worst;
}

bool push_sandwich_holds(const std::vector<double>& ppr_column, const PushState& st,
                         double tol, double* worst_violation) {
  const double r_max = st.max_residue();
  double worst = 0.0;
  for (std::size_t s = 0; s < ppr_column.size(); ++s) {
    const double p = st.reserve(static_cast<Vertex>(s));
    worst = std::max(worst, p - ppr_column[s]);                  // lower side
    worst = std::max(worst, ppr_column[s] - (p + r_max));        // upper side
  }
  if (worst_violation) *worst_violation = worst;
  return worst <= tol;
}

std::uint64_t total_cost(const EstimateReport& report) {
  std::uint64_t cost = report.rounds.empty() ? 0 : report.rounds.back().cost_spent;
  for (const auto& r : report.rounds) cost += 3 * r.walks;
  return cost;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> validate_subdivision_bound(const ValidateOptions& opt) {
  std::vector<CheckResult> results;
  const double limit = 2.0 - opt.alpha;

  {  // singleton self-loop: the bound is attained exactly
    Graph g = load_graph_string("1 1\n0 0\n");
    auto [g2, rec] = subdivide_edge(g, 0, 0);
    const double before = exact_ppr(g, 0, opt.alpha, opt.solver_tol).values[0];
    const double after = exact_ppr(g2, 0, opt.alpha, opt.solver_tol).values[0];
    CheckResult r;
    r.name = "subdivision.equality-witness";
    r.pass = std::abs(before - 1.0) < opt.tol &&
             std::abs(after - 1.0 / (2.0 - opt.alpha)) < opt.tol;
    r.detail = "pi=" + fmt(before) + " -> " + fmt(after);
    results.push_back(r);
  }

  BoundTracker bound;
  SplitMix64 rng(stream_seed(opt.seed, "subdivision"));
  for (int trial = 0; trial < opt.trials; ++trial) {
    Graph g = random_digraph(20, 50, rng.next());
    // random existing edge
    const std::uint64_t eidx = uniform_below(g.size(), [&] { return rng.next(); });
    Vertex u = 0;
    std::uint64_t left = eidx;
    while (left >= g.out_degree(u)) left -= g.out_degree(u), ++u;
    const Vertex v = g.out_neighbor(u, left);
    const Vertex t = static_cast<Vertex>(uniform_below(g.order(), [&] { return rng.next(); }));

    auto [g2, rec] = subdivide_edge(g, u, v);
    const auto before = exact_ppr(g, t, opt.alpha, opt.solver_tol).values;
    const auto after = exact_ppr(g2, t, opt.alpha, opt.solver_tol).values;
    for (Vertex s = 0; s < g.order(); ++s)
      bound.observe(limit * after[s] - before[s] + opt.tol);
  }
  results.push_back(bound.result("subdivision.ratio-bound"));

  {  // subdividing an edge with no path to the target changes nothing
    Graph g = load_graph_string("4 3\n0 1\n2 3\n1 1\n");
    auto [g2, rec] = subdivide_edge(g, 2, 3);
    const auto before = exact_ppr(g, 1, opt.alpha, opt.solver_tol).values;
    const auto after = exact_ppr(g2, 1, opt.alpha, opt.solver_tol).values;
    double worst = 0.0;
    for (Vertex s = 0; s < g.order(); ++s)
      worst = std::max(worst, std::abs(before[s] - after[s]));
    CheckResult r;
    r.name = "subdivision.unreachable-unchanged";
    r.pass = worst <= opt.tol;
    r.detail = "max change " + fmt(worst);
    results.push_back(r);
  }
  return results;
}

std::vector<CheckResult> validate_exit_vertex_bound(const ValidateOptions& opt) {
  BoundTracker bound;
  SplitMix64 rng(stream_seed(opt.seed, "exit-vertex"));
  int done = 0;
  while (done < opt.trials) {
    Graph g = random_digraph(20, 50, rng.next());
    const Vertex t = static_cast<Vertex>(uniform_below(g.order(), [&] { return rng.next(); }));
    const std::uint64_t usize = 1 + uniform_below(5, [&] { return rng.next(); });
    std::unordered_set<Vertex> uset;
    while (uset.size() < usize) {
      Vertex v = static_cast<Vertex>(uniform_below(g.order(), [&] { return rng.next(); }));
      if (v != t) uset.insert(v);
    }
    std::vector<Vertex> u(uset.begin(), uset.end());
    std::sort(u.begin(), u.end());

    Vertex mu;
    try {
      mu = mu_of_u(g, u, t, opt.alpha, opt.solver_tol);
    } catch (const std::invalid_argument&) {
      continue;  // U had no outside out-neighbors; resample
    }
    const auto avoid = exact_restricted_ppr(g, t, u, opt.alpha, opt.solver_tol).values;
    const auto full = exact_ppr(g, t, opt.alpha, opt.solver_tol).values;
    for (Vertex s = 0; s < g.order(); ++s) {
      const double lhs = std::max(avoid[s], avoid[mu]);
      bound.observe(lhs - (opt.alpha / 2.0) * full[s] + opt.tol);
    }
    ++done;
  }
  return {bound.result("exit-vertex.alpha-half-bound")};
}

std::vector<CheckResult> validate_in_edge_removal_bound(const ValidateOptions& opt) {
  std::vector<CheckResult> results;
  BoundTracker plain, avoiding;
  SplitMix64 rng(stream_seed(opt.seed, "in-edge-removal"));
  for (int trial = 0; trial < opt.trials; ++trial) {
    Graph g = random_digraph(20, 50, rng.next());
    const bool self_target = trial % 5 == 0;  // exercise v == t as well
    const Vertex v = static_cast<Vertex>(uniform_below(g.order(), [&] { return rng.next(); }));
    const Vertex t =
        self_target ? v
                    : static_cast<Vertex>(uniform_below(g.order(), [&] { return rng.next(); }));

    const auto& in_list = g.in_lists()[v];
    std::vector<Vertex> removed;
    for (Vertex u : in_list)
      if (rng.next() & 1) removed.push_back(u);
    if (removed.empty() && !in_list.empty()) removed.push_back(in_list.front());

    auto [g2, rec] = remove_in_edges(g, v, removed);

    std::vector<Vertex> u;
    const std::uint64_t usize = uniform_below(4, [&] { return rng.next(); });
    std::unordered_set<Vertex> uset;
    while (uset.size() < usize)
      uset.insert(static_cast<Vertex>(uniform_below(g.order(), [&] { return rng.next(); })));
    u.assign(uset.begin(), uset.end());
    std::sort(u.begin(), u.end());

    const double before = exact_ppr(g, t, opt.alpha, opt.solver_tol).values[v];
    const double after = exact_ppr(g2, t, opt.alpha, opt.solver_tol).values[v];
    plain.observe(after - opt.alpha * before + opt.tol);

    const double before_avoid =
        exact_restricted_ppr(g, t, u, opt.alpha, opt.solver_tol).values[v];
    const double after_avoid =
        exact_restricted_ppr(g2, t, u, opt.alpha, opt.solver_tol).values[v];
    avoiding.observe(after_avoid - opt.alpha * before_avoid + opt.tol);
  }
  results.push_back(plain.result("in-edge-removal.ratio-bound"));
  results.push_back(avoiding.result("in-edge-removal.avoiding-ratio-bound"));

  {  // removing nothing changes nothing
    Graph g = random_digraph(10, 20, stream_seed(opt.seed, "noop"));
    auto [g2, rec] = remove_in_edges(g, 3, {});
    const auto a = exact_ppr(g, 5, opt.alpha, opt.solver_tol).values;
    const auto b = exact_ppr(g2, 5, opt.alpha, opt.solver_tol).values;
    CheckResult r;
    r.name = "in-edge-removal.empty-noop";
    r.pass = a == b;
    results.push_back(r);
  }
  return results;
}

std::vector<CheckResult> validate_decomposition(const ValidateOptions& opt) {
  BoundTracker bound;
  SplitMix64 rng(stream_seed(opt.seed, "decomposition"));
  const double fine_tol = opt.solver_tol / 8.0;
  for (int trial = 0; trial < opt.trials; ++trial) {
    Graph g = random_digraph(25, 60, rng.next());
    const Vertex t = static_cast<Vertex>(uniform_below(g.order(), [&] { return rng.next(); }));
    std::unordered_set<Vertex> uset;
    const std::uint64_t usize = 1 + uniform_below(5, [&] { return rng.next(); });
    while (uset.size() < usize)
      uset.insert(static_cast<Vertex>(uniform_below(g.order(), [&] { return rng.next(); })));
    std::vector<Vertex> u(uset.begin(), uset.end());
    std::sort(u.begin(), u.end());

    const auto full = exact_ppr(g, t, opt.alpha, fine_tol).values;
    const auto avoid = exact_restricted_ppr(g, t, u, opt.alpha, fine_tol).values;
    const auto through = exact_through_ppr(g, t, u, opt.alpha, fine_tol);
    for (Vertex s = 0; s < g.order(); ++s) {
      const double resid = std::abs(full[s] - avoid[s] - through[s]);
      bound.observe(2.0 * opt.solver_tol - resid);
    }
  }
  return {bound.result("decomposition.through-plus-avoid")};
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> validate_push_invariants(const ValidateOptions& opt) {
  BoundTracker identity, sandwich, threshold, eligibility, round_pushes, budget, monotone;
  SplitMix64 rng(stream_seed(opt.seed, "push"));

  for (int trial = 0; trial < opt.trials; ++trial) {
    const std::uint32_t n = 10 + static_cast<std::uint32_t>(uniform_below(41, [&] { return rng.next(); }));
    Graph g = random_digraph(n, 3 * n, rng.next());
    const Vertex t = static_cast<Vertex>(uniform_below(n, [&] { return rng.next(); }));
    const auto matrix = exact_ppr_matrix(g, opt.alpha, opt.solver_tol);

    QueryLog log(LogDetail::Counts);
    GraphOracle oracle(g, log);

    auto check_state = [&](const PushState& st) {
      identity.observe(opt.tol - push_identity_residual(matrix, st, t));
      double worst = 0.0;
      push_sandwich_holds(matrix[t], st, opt.tol, &worst);
      sandwich.observe(opt.tol - worst);
      threshold.observe(2.0 * st.push_threshold() / st.alpha() - st.max_residue() + opt.tol);
    };

    if (trial % 2 == 0) {
      // Arbitrary admissible push sequence.
      PushState st = push_init(g, t, opt.alpha);
      check_state(st);
      for (int step = 0; step < 40; ++step) {
        std::vector<Vertex> positive;
        for (Vertex v = 0; v < n; ++v)
          if (st.residue(v) > 0.0) positive.push_back(v);
        if (positive.empty()) break;
        const Vertex v = positive[uniform_below(positive.size(), [&] { return rng.next(); })];
        pushback(st, oracle, v);
        identity.observe(opt.tol - push_identity_residual(matrix, st, t));
        double worst = 0.0;
        push_sandwich_holds(matrix[t], st, opt.tol, &worst);
        sandwich.observe(opt.tol - worst);
      }
    } else {
      // Budget-driven runs with randomized increments.
      PushState st = push_init(g, t, opt.alpha);
      double prev_threshold = st.push_threshold();
      std::vector<double> prev_reserve(n, 0.0);
      std::uint64_t granted = 1;
      const double round_cap = (3.0 / opt.alpha) * std::log2(static_cast<double>(n));
      for (int round = 1; round <= 8; ++round) {
        const std::uint64_t b = uniform_below(1ull << round, [&] { return rng.next(); });
        granted += b;
        increase_push_budget(st, oracle, b, [&](const PushState& s, Vertex) {
          eligibility.observe(s.last_push_residue() - s.push_threshold() + opt.tol);
          check_state(s);
        });
        round_pushes.observe(round_cap - st.max_round_pushes() + opt.tol);
        budget.observe(static_cast<double>(granted) - static_cast<double>(st.cost_spent()));
        monotone.observe(prev_threshold - st.push_threshold());
        prev_threshold = st.push_threshold();
        for (Vertex v = 0; v < n; ++v) {
          monotone.observe(st.reserve(v) - prev_reserve[v]);
          prev_reserve[v] = st.reserve(v);
        }
        if (st.phase() != PushPhase::Active) break;
      }
    }
  }

  return {identity.result("push.reserve-residue-identity"),
          sandwich.result("push.reserve-sandwich"),
          threshold.result("push.threshold-residue-bound"),
          eligibility.result("push.push-eligibility"),
          round_pushes.result("push.per-round-push-count"),
          budget.result("push.budget-accounting"),
          monotone.result("push.monotonicity")};
}

std::vector<CheckResult> validate_budget_profile_sandwich(const ValidateOptions& opt) {
  BoundTracker lower, upper;
  SplitMix64 rng(stream_seed(opt.seed, "sandwich"));

  struct Inst {
    Graph g;
    Vertex t;
  };
  std::vector<Inst> suite;
  {
    GenParams p;
    p.n = 256;
    suite.push_back({generate(GraphKind::Path, p, 1), 255});
    suite.push_back({generate(GraphKind::Star, p, 1), 255});
    GenParams pc;
    pc.n = 64;
    suite.push_back({generate(GraphKind::Complete, pc, 1), 7});
    GenParams pr;
    pr.n = 128;
    pr.edges = 512;
    suite.push_back({generate(GraphKind::Random, pr, 5), 0});
  }

  const int runs = std::max(1, opt.trials / 20);
  for (const auto& inst : suite) {
    const auto ppr = exact_ppr(inst.g, inst.t, opt.alpha, opt.solver_tol);
    const auto prof = compute_profile(inst.g, inst.t, ppr);
    const double factor = (3.0 / opt.alpha) * std::log2(static_cast<double>(inst.g.order()));
    for (int run = 0; run < runs; ++run) {
      const auto rep = adaptive_pagerank(inst.g, inst.t, opt.alpha,
                                         AdaptiveSeeds::from_root(rng.next()));
      for (const auto& round : rep.rounds) {
        const double budget = std::exp2(static_cast<double>(round.round));
        lower.observe(budget - static_cast<double>(prof.t_r(2.0 * round.r_push)));
        if (rep.stop_reason == StopReason::PushComplete && round.round == rep.stop_round)
          continue;  // no walk/push spend backs the final budget doubling
        upper.observe(factor * static_cast<double>(prof.t_r(opt.alpha * round.r_push)) -
                      budget);
      }
    }
  }
  return {lower.result("sandwich.pushed-profile-lower"),
          upper.result("sandwich.eligible-profile-upper")};
}

// ---------------------------------------------------------------------------

FunnelFixture make_funnelfixture_impl(std::uint32_t k1, std::uint32_t k2,
                                      std::uint32_t w_count, std::uint32_t spares) {
  if (k1 < 16 || k2 < 1 || w_count < 2)
    throw std::invalid_argument("funnel fixture: layers too small");
  FunnelFixture fx;
  fx.t = 0;
  const Vertex l1 = 1;
  const Vertex l2 = l1 + k1;
  const Vertex wbase = l2 + k2;
  const Vertex junk = wbase + w_count;
  const Vertex spare = junk + w_count;
  const std::uint32_t n = spare + spares;

  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(static_cast<std::size_t>(k1) + 8ull * k2 + 2ull * w_count + spares + 1);
  edges.emplace_back(fx.t, fx.t);
  for (std::uint32_t i = 0; i < k1; ++i) edges.emplace_back(l1 + i, fx.t);
  const std::uint32_t stride = std::max(1u, k1 / 8);
  for (std::uint32_t j = 0; j < k2; ++j) {
    const std::uint32_t base = (j * 13) % k1;
    for (std::uint32_t i = 0; i < 8; ++i)
      edges.emplace_back(l2 + j, l1 + (base + i * stride) % k1);
  }
  for (std::uint32_t i = 0; i < w_count; ++i) {
    edges.emplace_back(wbase + i, junk + i);
    edges.emplace_back(junk + i, junk + i);
    fx.w.push_back(wbase + i);
  }
  for (std::uint32_t i = 0; i < spares; ++i) edges.emplace_back(spare + i, spare + i);

  fx.g = Graph::from_edges(n, edges, /*sort_lists=*/true);
  fx.edge_xy = {l2 + 0, l1 + 0};  // first target of L2[0] has base offset 0
  fx.y_prime = junk + 0;
  fx.eps = 0.5;
  return fx;
}

FunnelFixture make_funnel_fixture(std::uint32_t layer1, std::uint32_t layer2,
                                  std::uint32_t w_count, std::uint32_t spares) {
  return make_funnelfixture_impl(layer1, layer2, w_count, spares);
}

std::vector<CheckResult> validate_surgery_equivalence(const ValidateOptions& opt) {
  std::vector<CheckResult> results;
  SplitMix64 rng(stream_seed(opt.seed, "surgery"));

  // Random-family audits: degree preservation, funnel value relation, and the
  // strict pagerank gap between the isolated and funneled graphs.
  BoundTracker gap, funnel_relation;
  int audited = 0;
  const int wanted = std::max(1, opt.trials / 10);
  while (audited < wanted) {
    Graph g = random_digraph(100, 300, rng.next());
    const Vertex t = static_cast<Vertex>(uniform_below(g.order(), [&] { return rng.next(); }));
    std::unordered_set<Vertex> wset;
    while (wset.size() < 20) {
      Vertex v = static_cast<Vertex>(uniform_below(g.order(), [&] { return rng.next(); }));
      if (v != t) wset.insert(v);
    }
    std::vector<Vertex> w(wset.begin(), wset.end());
    std::sort(w.begin(), w.end());

    Graph gminus;
    SurgeryRecord rec;
    try {
      std::tie(gminus, rec) = build_g_minus(g, w, 0.5);
    } catch (const std::invalid_argument&) {
      continue;  // admissibility violated; resample
    }

    const auto base = exact_ppr(gminus, t, opt.alpha, opt.solver_tol).values;
    std::vector<char> excluded(g.order(), 0);
    for (Vertex v : w) excluded[v] = 1;
    excluded[t] = 1;  // keep (x,y) away from the target itself
    std::pair<Vertex, Vertex> xy;
    try {
      xy = best_outside_edge(gminus, excluded, base);
    } catch (const std::runtime_error&) {
      continue;
    }
    if (base[xy.second] <= 1e-6) continue;  // need a measurable downstream value

    // y': out-neighbor of W_ext outside W with the largest base value.
    Vertex y_prime = gminus.order();
    double best = -1.0;
    for (Vertex wx : rec.w_ext)
      for (Vertex v : gminus.out_lists()[wx])
        if (!wset.count(v) && v != t && base[v] > best) {
          best = base[v];
          y_prime = v;
        }
    if (y_prime == gminus.order()) continue;

    Graph gplus;
    SurgeryRecord prec;
    std::tie(gplus, prec) = build_g_plus(gminus, rec, xy, y_prime, t, opt.alpha,
                                         opt.solver_tol);

    const auto plus = exact_ppr(gplus, t, opt.alpha, opt.solver_tol);
    const double x_star_val = plus.values[*prec.x_star];
    for (Vertex wiso : prec.w_iso) {
      if (wiso == *prec.x_star) continue;
      funnel_relation.observe(opt.tol -
                              std::abs(plus.values[wiso] - (1.0 - opt.alpha) * x_star_val));
    }
    const double minus_pr = exact_pagerank(gminus, t, opt.alpha, opt.solver_tol);
    gap.observe(plus.pagerank() - minus_pr - 10.0 * opt.solver_tol);
    ++audited;
  }
  results.push_back(gap.result("surgery.pagerank-gap"));
  results.push_back(funnel_relation.result("surgery.funnel-value-relation"));

  {  // admissibility violation is reported with the offending vertex
    Graph g = load_graph_string("6 5\n0 1\n0 2\n0 3\n0 4\n4 5\n");
    CheckResult r;
    r.name = "surgery.admissibility-error";
    try {
      build_g_minus(g, {1, 2, 3}, 0.5);
      r.pass = false;
      r.detail = "no error raised";
    } catch (const std::invalid_argument& e) {
      r.pass = std::string(e.what()).find("vertex 0") != std::string::npos;
      r.detail = e.what();
    }
    results.push_back(r);
  }

  // Transcript equivalence on the layered fixture: seeds whose visit log
  // avoids W and the pair {x,y} must replay identically on the funneled graph.
  {
    FunnelFixture fx = make_funnel_fixture(9000, 9000, 5, 1989);
    auto [gminus, rec] = build_g_minus(fx.g, fx.w, fx.eps);
    auto [gplus, prec] =
        build_g_plus(gminus, rec, fx.edge_xy, fx.y_prime, fx.t, opt.alpha, opt.solver_tol);

    int qualifying = 0, matching = 0, estimates_equal = 0;
    const int seeds = 24;
    for (int s = 1; s <= seeds; ++s) {
      QueryLog log_g(LogDetail::Full);
      const auto rep_g = adaptive_pagerank(fx.g, fx.t, opt.alpha,
                                           AdaptiveSeeds::from_root(s),
                                           WalkMode::FullIndependent, &log_g);
      const bool avoids = !log_g.visits_any(fx.w) &&
                          !log_g.pair_visited(fx.edge_xy.first, fx.edge_xy.second);
      if (!avoids) continue;
      ++qualifying;
      QueryLog log_p(LogDetail::Full);
      const auto rep_p = adaptive_pagerank(gplus, fx.t, opt.alpha,
                                           AdaptiveSeeds::from_root(s),
                                           WalkMode::FullIndependent, &log_p);
      if (transcripts_equal(log_g.transcript(), log_p.transcript())) ++matching;
      if (rep_g.estimate == rep_p.estimate) ++estimates_equal;
    }

    CheckResult r;
    r.name = "surgery.transcript-equivalence";
    r.pass = qualifying > 0 && matching == qualifying && estimates_equal == qualifying;
    r.detail = std::to_string(qualifying) + "/" + std::to_string(seeds) +
               " qualifying seeds, " + std::to_string(matching) + " transcript-identical";
    results.push_back(r);

    const double minus_pr = exact_pagerank(gminus, fx.t, opt.alpha, opt.solver_tol);
    const double plus_pr = exact_pagerank(gplus, fx.t, opt.alpha, opt.solver_tol);
    CheckResult r2;
    r2.name = "surgery.fixture-pagerank-gap";
    r2.pass = plus_pr > minus_pr + 10.0 * opt.solver_tol;
    r2.detail = "gap " + fmt(plus_pr - minus_pr);
    results.push_back(r2);
  }
  return results;
}

std::vector<CheckResult> validate_degree_test(const ValidateOptions& opt) {
  std::vector<CheckResult> results;

  {
    Graph g = Graph::complete_with_loops(256);
    SplitMix64 rng(stream_seed(opt.seed, "degree-complete"));
    bool all = true;
    for (int i = 0; i < 50; ++i) all = all && mostly_degree_n_test(g, 18, rng);
    results.push_back({"degree-test.complete-always-positive", all, ""});
  }
  {
    GenParams p;
    p.n = 256;
    Graph g = generate(GraphKind::Path, p, 1);
    SplitMix64 rng(stream_seed(opt.seed, "degree-path"));
    bool any = false;
    for (int i = 0; i < 50; ++i) any = any || mostly_degree_n_test(g, 18, rng);
    results.push_back({"degree-test.path-always-negative", !any, ""});
  }
  {
    // False-positive rate on a graph that misses the mostly-degree-n bar:
    // 103 >= 1024/log2(1024) deficient vertices, sampled at the nominal size.
    const std::uint32_t n = 1024;
    const std::uint32_t deficient = 103;
    std::vector<std::pair<Vertex, Vertex>> removed;
    for (Vertex v = 0; v < deficient; ++v) removed.emplace_back(v, v);
    Graph g = Graph::mostly_degree_n(n, removed);

    const double l2n = std::log2(static_cast<double>(n));
    const std::uint64_t samples = static_cast<std::uint64_t>(std::ceil(std::pow(l2n, 1.25)));
    const double closed_form = std::pow(1.0 - 1.0 / l2n, static_cast<double>(samples));
    const int trials = std::max(1000, opt.trials * 100);
    SplitMix64 rng(stream_seed(opt.seed, "degree-fp"));
    int positives = 0;
    for (int i = 0; i < trials; ++i)
      if (mostly_degree_n_test(g, samples, rng)) ++positives;
    const double rate = static_cast<double>(positives) / trials;
    const double sigma = std::sqrt(closed_form * (1.0 - closed_form) / trials);

    CheckResult r;
    r.name = "degree-test.false-positive-rate";
    r.pass = rate <= closed_form + 3.0 * sigma;
    r.detail = "rate " + fmt(rate) + " vs bound " + fmt(closed_form) + " + 3*" + fmt(sigma);
    results.push_back(r);
  }
  {
    // Pagerank concentration on generated mostly-degree-n instances.
    BoundTracker conc;
    SplitMix64 rng(stream_seed(opt.seed, "degree-conc"));
    for (std::uint32_t n : {64u, 256u, 1024u}) {
      GenParams p;
      p.n = n;
      p.deficient = n == 64 ? 2 : 3;
      Graph g = generate(GraphKind::MostlyDegreeN, p, rng.next());
      const double slack = 1.0 / std::pow(std::log2(static_cast<double>(n)), 0.25);
      for (int k = 0; k < 3; ++k) {
        const Vertex t = static_cast<Vertex>(uniform_below(n, [&] { return rng.next(); }));
        const double pr = exact_pagerank(g, t, opt.alpha, opt.solver_tol);
        conc.observe(slack / n - std::abs(pr - 1.0 / n));
      }
    }
    results.push_back(conc.result("degree-test.pagerank-concentration"));
  }
  return results;
}

std::vector<CheckResult> run_validation_suite(const std::string& suite,
                                              const ValidateOptions& opt) {
  std::vector<CheckResult> all;
  auto append = [&](std::vector<CheckResult> rs) {
    for (auto& r : rs) all.push_back(std::move(r));
  };
  // "lemmas" covers the value bounds plus the push-loop invariants; the
  // finer-grained names select one group.
  const bool bounds = suite == "lemmas" || suite == "bounds" || suite == "all";
  const bool push = suite == "lemmas" || suite == "push" || suite == "all";
  const bool surgery = suite == "surgery" || suite == "all";
  const bool degree = suite == "degree" || suite == "all";
  if (!bounds && !push && !surgery && !degree)
    throw std::invalid_argument("unknown validation suite: " + suite);

  if (bounds) {
    append(validate_subdivision_bound(opt));
    append(validate_exit_vertex_bound(opt));
    append(validate_in_edge_removal_bound(opt));
    append(validate_decomposition(opt));
  }
  if (push) {
    append(validate_push_invariants(opt));
    append(validate_budget_profile_sandwich(opt));
  }
  if (surgery) append(validate_surgery_equivalence(opt));
  if (degree) append(validate_degree_test(opt));
  return all;
}

}  // namespace pprlab
