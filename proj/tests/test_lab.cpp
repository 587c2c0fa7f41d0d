#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pprlab/exact.hpp"
#include "pprlab/lab.hpp"
#include "pprlab/validate.hpp"

using namespace pprlab;

namespace {
constexpr double kAlpha = 0.2;
constexpr double kTol = 1e-12;
}  // namespace

TEST_CASE("path generator shape") {
  GenParams p;
  p.n = 5;
  Graph g = generate(GraphKind::Path, p, 1);
  CHECK(g.size() == 5);  // 4 path edges + the self-loop at the end
  for (Vertex i = 0; i + 1 < 5; ++i) CHECK(g.out_neighbor(i, 0) == i + 1);
  CHECK(g.out_neighbor(4, 0) == 4);
}

TEST_CASE("complete generator has all degrees equal to n") {
  GenParams p;
  p.n = 8;
  Graph g = generate(GraphKind::Complete, p, 1);
  for (Vertex v = 0; v < 8; ++v) {
    CHECK(g.in_degree(v) == 8);
    CHECK(g.out_degree(v) == 8);
  }
}

TEST_CASE("mostly-degree-n generator: exact deficiency count and concentration") {
  GenParams p;
  p.n = 64;
  p.deficient = 2;
  Graph g = generate(GraphKind::MostlyDegreeN, p, 123);
  int deficient = 0;
  for (Vertex v = 0; v < 64; ++v)
    if (g.in_degree(v) < 64 || g.out_degree(v) < 64) ++deficient;
  CHECK(deficient == 2);

  // Every pagerank value concentrates within the advertised slack of 1/n.
  const double slack = 1.0 / std::pow(std::log2(64.0), 0.25);
  SplitMix64 rng(4);
  for (int k = 0; k < 4; ++k) {
    const Vertex t = static_cast<Vertex>(uniform_below(64, [&] { return rng.next(); }));
    const double pr = exact_pagerank(g, t, kAlpha, kTol);
    CHECK(std::abs(pr - 1.0 / 64) <= slack / 64);
  }
}

TEST_CASE("mostly-degree-n generator rejects too many deficient vertices") {
  GenParams p;
  p.n = 64;
  p.deficient = 11;  // 64/log2(64) = 10.67
  CHECK_THROWS_AS(generate(GraphKind::MostlyDegreeN, p, 1), std::invalid_argument);
}

TEST_CASE("generators are deterministic in the seed") {
  GenParams p;
  p.n = 40;
  p.edges = 100;
  Graph a = generate(GraphKind::Random, p, 7);
  Graph b = generate(GraphKind::Random, p, 7);
  Graph c = generate(GraphKind::Random, p, 8);
  CHECK(a.out_lists() == b.out_lists());
  CHECK(a.out_lists() != c.out_lists());
}

TEST_CASE("subdividing the singleton loop attains the bound exactly") {
  Graph g = load_graph_string("1 1\n0 0\n");
  auto [g2, rec] = subdivide_edge(g, 0, 0);
  CHECK(g2.order() == 2);
  CHECK(g2.size() == 2);
  CHECK(rec.new_vertex == 1);
  const double before = exact_ppr(g, 0, kAlpha, kTol).values[0];
  const double after = exact_ppr(g2, 0, kAlpha, kTol).values[0];
  CHECK(before == doctest::Approx(1.0));
  CHECK(after == doctest::Approx(1.0 / (2.0 - kAlpha)));
  CHECK(before / after == doctest::Approx(2.0 - kAlpha));
}

TEST_CASE("subdivide_edge requires the edge to exist") {
  Graph g = load_graph_string("3 2\n0 1\n1 2\n");
  CHECK_THROWS_AS(subdivide_edge(g, 0, 2), std::invalid_argument);
}

TEST_CASE("subdivision never shrinks values by more than the bound") {
  ValidateOptions opt;
  opt.trials = 25;
  for (const auto& r : validate_subdivision_bound(opt)) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
  }
}

TEST_CASE("in-edge removal keeps at least an alpha fraction") {
  ValidateOptions opt;
  opt.trials = 25;
  for (const auto& r : validate_in_edge_removal_bound(opt)) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
  }
}

TEST_CASE("removing all in-edges of the target itself") {
  Graph g = load_graph_string("4 5\n0 1\n1 2\n2 0\n0 3\n3 0\n");
  const Vertex t = 0;
  const auto& sources = g.in_lists()[t];
  std::vector<Vertex> all(sources.begin(), sources.end());
  auto [g2, rec] = remove_in_edges(g, t, all);
  CHECK(g2.in_degree(t) == 0);
  const double before = exact_ppr(g, t, kAlpha, kTol).values[t];
  const double after = exact_ppr(g2, t, kAlpha, kTol).values[t];
  CHECK(after >= kAlpha * before - 1e-9);
}

TEST_CASE("remove_in_edges rejects non-in-edges") {
  Graph g = load_graph_string("3 2\n0 1\n1 2\n");
  CHECK_THROWS_AS(remove_in_edges(g, 2, {0}), std::invalid_argument);
}

TEST_CASE("mu of a single-vertex set with one exit is that exit") {
  Graph g = load_graph_string("3 3\n0 1\n1 2\n2 2\n", false);
  CHECK(mu_of_u(g, {0}, 2, kAlpha, kTol) == 1);
  CHECK_THROWS_AS(mu_of_u(g, {2}, 2, kAlpha, kTol), std::invalid_argument);  // t in U
  // U whose only out-neighbors lie inside U has no candidates.
  CHECK_THROWS_AS(mu_of_u(g, {2}, 0, kAlpha, kTol), std::invalid_argument);
}

TEST_CASE("exit-vertex value bound holds on random sets") {
  ValidateOptions opt;
  opt.trials = 25;
  for (const auto& r : validate_exit_vertex_bound(opt)) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
  }
}

TEST_CASE("rewiring W with no incident or internal edges only partitions") {
  // W = {3, 4} sits in its own corner with no edges at all.
  Graph g = load_graph_string("5 3\n0 1\n1 2\n2 0\n", false);
  auto [gm, rec] = build_g_minus(g, {3, 4}, 0.5);
  CHECK(rec.w_iso == std::vector<Vertex>{3});
  CHECK(rec.w_ext == std::vector<Vertex>{4});
  CHECK(gm.size() == g.size());
  for (Vertex v = 0; v < 5; ++v) {
    CHECK(gm.in_degree(v) == g.in_degree(v));
    CHECK(gm.out_degree(v) == g.out_degree(v));
  }
}

TEST_CASE("rewiring preserves outside degrees and isolates the W_iso slice") {
  SplitMix64 rng(55);
  int done = 0;
  while (done < 5) {
    GenParams p;
    p.n = 100;
    p.edges = 300;
    Graph g = generate(GraphKind::Random, p, rng.next());
    std::vector<Vertex> w;
    for (Vertex v = 20; v < 40; ++v) w.push_back(v);
    Graph gm;
    SurgeryRecord rec;
    try {
      std::tie(gm, rec) = build_g_minus(g, w, 0.5);
    } catch (const std::invalid_argument&) {
      continue;  // dense spot hit the admissibility cap; resample
    }
    ++done;
    for (Vertex v = 0; v < g.order(); ++v) {
      if (std::find(w.begin(), w.end(), v) != w.end()) continue;
      REQUIRE(gm.in_degree(v) == g.in_degree(v));
      REQUIRE(gm.out_degree(v) == g.out_degree(v));
    }
    for (Vertex v : rec.w_iso) {
      REQUIRE(gm.in_degree(v) == 0);
      REQUIRE(gm.out_degree(v) == 0);
    }
    // No surviving edge touches W_iso, and W-internal edges are gone.
    for (Vertex u = 0; u < g.order(); ++u)
      for (Vertex x : gm.out_lists()[u]) {
        const bool u_in_w = std::find(w.begin(), w.end(), u) != w.end();
        const bool x_in_w = std::find(w.begin(), w.end(), x) != w.end();
        REQUIRE(!(u_in_w && x_in_w));
      }
  }
}

TEST_CASE("admissibility violations name the offending vertex") {
  // Vertex 0 points at all three W members: 3 >= (1 - 0.25) * 3 = 2.25.
  Graph g = load_graph_string("6 5\n0 1\n0 2\n0 3\n0 4\n4 5\n", false);
  CHECK_THROWS_WITH_AS(build_g_minus(g, {1, 2, 3}, 0.5), doctest::Contains("vertex 0"),
                       std::invalid_argument);
}

TEST_CASE("funnel construction on the layered fixture") {
  FunnelFixture fx = make_funnel_fixture(64, 32, 5, 10);
  REQUIRE(fx.g.normalized());
  auto [gm, rec] = build_g_minus(fx.g, fx.w, fx.eps);
  auto [gp, prec] = build_g_plus(gm, rec, fx.edge_xy, fx.y_prime, fx.t, kAlpha, kTol);

  CHECK(prec.edge_second.has_value());
  CHECK(*prec.edge_second == fx.edge_xy);  // the designated edge wins on value

  const auto plus = exact_ppr(gp, fx.t, kAlpha, kTol);
  const double x_star = plus.values[*prec.x_star];
  CHECK(x_star > 0.0);
  for (Vertex w : prec.w_iso)
    if (w != *prec.x_star)
      CHECK(plus.values[w] == doctest::Approx((1.0 - kAlpha) * x_star).epsilon(1e-9));

  const double minus_pr = exact_pagerank(gm, fx.t, kAlpha, kTol);
  CHECK(plus.pagerank() > minus_pr);

  // A lone W_iso vertex yields the bare subdivision.
  auto [gm2, rec2] = build_g_minus(fx.g, {fx.w[0], fx.w[1]}, 0.5);
  REQUIRE(rec2.w_iso.size() == 1);
  auto [gp2, prec2] = build_g_plus(gm2, rec2, fx.edge_xy, fx.y_prime, fx.t, kAlpha, kTol);
  CHECK(gp2.size() == gm2.size() + 1);
  CHECK(exact_ppr(gp2, fx.t, kAlpha, kTol).values[*prec2.x_star] > 0.0);
}

TEST_CASE("seeded runs that avoid W replay identically on the rewired graph") {
  // Large enough that most seeds never touch W; the isolated slice turns the
  // rewired graph dangling, and normalizing it only adds W-internal loops.
  FunnelFixture fx = make_funnel_fixture(4000, 4000, 4, 500);
  auto [gm, rec] = build_g_minus(fx.g, fx.w, fx.eps);
  Graph gm_norm = normalize(gm);

  int qualifying = 0, matching = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    QueryLog lg(LogDetail::Full);
    const auto rg = adaptive_pagerank(fx.g, fx.t, kAlpha, AdaptiveSeeds::from_root(seed),
                                      WalkMode::FullIndependent, &lg);
    if (lg.visits_any(fx.w)) continue;
    ++qualifying;
    QueryLog lm(LogDetail::Full);
    const auto rm = adaptive_pagerank(gm_norm, fx.t, kAlpha, AdaptiveSeeds::from_root(seed),
                                      WalkMode::FullIndependent, &lm);
    if (transcripts_equal(lg.transcript(), lm.transcript()) && rg.estimate == rm.estimate)
      ++matching;
  }
  REQUIRE(qualifying >= 1);
  CHECK(matching == qualifying);
}

TEST_CASE("degree test basics") {
  ValidateOptions opt;
  opt.trials = 10;
  for (const auto& r : validate_degree_test(opt)) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
  }
}
