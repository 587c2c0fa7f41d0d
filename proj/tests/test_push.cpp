#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pprlab/exact.hpp"
#include "pprlab/push.hpp"
#include "pprlab/validate.hpp"

using namespace pprlab;

namespace {
constexpr double kAlpha = 0.2;

struct Harness {
  Graph g;
  QueryLog log{LogDetail::Counts};
  GraphOracle oracle;
  explicit Harness(Graph graph) : g(std::move(graph)), oracle(g, log) {}
};
}  // namespace

TEST_CASE("push-init: unit residue at the target, nothing else") {
  Harness h(load_graph_string("3 2\n0 1\n1 2\n"));
  PushState st = push_init(h.g, 2, kAlpha);
  CHECK(st.sum_residue() == 1.0);
  CHECK(st.residue(2) == 1.0);
  CHECK(st.sum_reserve() == 0.0);
  CHECK(st.push_threshold() == 1.0);
  CHECK(st.push_candidate() == 2);
  CHECK(st.budget() == 1);
  CHECK(st.cost_spent() == 0);
  CHECK(st.phase() == PushPhase::Active);

  PushState st2 = push_init(h.g, 2, kAlpha);
  CHECK(st2.residues() == st.residues());
  CHECK(st2.reserves() == st.reserves());
  CHECK(st2.push_threshold() == st.push_threshold());
}

TEST_CASE("pushback on a sink hub spreads the whole discounted residue") {
  // 4 leaves -> 4; the hub has no out-edges, each leaf has out-degree 1.
  Harness h(load_graph_string("5 4\n0 4\n1 4\n2 4\n3 4\n", /*normalize_dangling=*/false));
  PushState st = push_init(h.g, 4, kAlpha);
  pushback(st, h.oracle, 4);
  CHECK(st.reserve(4) == doctest::Approx(kAlpha));
  CHECK(st.residue(4) == 0.0);
  for (Vertex leaf = 0; leaf < 4; ++leaf)
    CHECK(st.residue(leaf) == doctest::Approx(1.0 - kAlpha));
  CHECK(st.cost_spent() == 5);  // indeg(4) + 1
}

TEST_CASE("pushback on a self-loop feeds the vertex itself") {
  Harness h(load_graph_string("1 1\n0 0\n"));
  PushState st = push_init(h.g, 0, kAlpha);
  pushback(st, h.oracle, 0);
  CHECK(st.reserve(0) == doctest::Approx(kAlpha));
  CHECK(st.residue(0) == doctest::Approx(1.0 - kAlpha));
}

TEST_CASE("pushback rejects zero residue") {
  Harness h(load_graph_string("3 2\n0 1\n1 2\n"));
  PushState st = push_init(h.g, 2, kAlpha);
  CHECK_THROWS_AS(pushback(st, h.oracle, 0), std::invalid_argument);
}

TEST_CASE("budget loop on the two-edge path, hand-simulated") {
  // Normalized path 0 -> 1 -> 2 with a self-loop at 2; indeg(2) = 2.
  Harness h(load_graph_string("3 2\n0 1\n1 2\n"));

  SUBCASE("a budget that only matches the in-degree does not push") {
    PushState st = push_init(h.g, 2, kAlpha);
    increase_push_budget(st, h.oracle, 1);  // budget 2, needs > indeg(2) = 2
    CHECK(st.budget() == 2);
    CHECK(st.total_pushes() == 0);
    CHECK(st.sum_reserve() == 0.0);
    CHECK(st.push_threshold() == 1.0);
  }

  SUBCASE("zero extra budget is a no-op") {
    PushState st = push_init(h.g, 2, kAlpha);
    increase_push_budget(st, h.oracle, 0);
    CHECK(st.budget() == 1);
    CHECK(st.total_pushes() == 0);
  }

  SUBCASE("one push fires and the threshold halves to reach the leftovers") {
    PushState st = push_init(h.g, 2, kAlpha);
    increase_push_budget(st, h.oracle, 2);  // budget 3 > indeg(2) = 2
    CHECK(st.total_pushes() == 1);
    CHECK(st.reserve(2) == doctest::Approx(0.2));
    CHECK(st.residue(0) == 0.0);
    CHECK(st.residue(1) == doctest::Approx(0.8));  // via 1 -> 2, outdeg(1) = 1
    CHECK(st.residue(2) == doctest::Approx(0.8));  // via the self-loop
    CHECK(st.cost_spent() == 3);
    CHECK(st.budget() == 0);
    CHECK(st.push_threshold() == 0.5);
    CHECK(st.push_candidate() == 1);  // lowest id in the top bucket
    CHECK(st.phase() == PushPhase::Active);
  }
}

TEST_CASE("a target with no in-edges drains the residue completely") {
  // 1 -> 0 and 0 -> 0; target 1 has out-degree 1 and in-degree 0.
  Harness h(load_graph_string("2 2\n1 0\n0 0\n"));
  PushState st = push_init(h.g, 1, kAlpha);
  increase_push_budget(st, h.oracle, 1);
  CHECK(st.phase() == PushPhase::Complete);
  CHECK(st.sum_residue() == 0.0);
  CHECK(st.reserve(1) == doctest::Approx(kAlpha));
  // The reserve average is now the exact pagerank.
  const double exact = exact_pagerank(h.g, 1, kAlpha, 1e-13);
  CHECK(st.sum_reserve() / 2.0 == doctest::Approx(exact).epsilon(1e-11));

  // Further budget is retained without effect.
  increase_push_budget(st, h.oracle, 100);
  CHECK(st.phase() == PushPhase::Complete);
  CHECK(st.total_pushes() == 1);
}

TEST_CASE("identical seeds produce identical push sequences") {
  GenParams p;
  p.n = 30;
  p.edges = 90;
  Graph g = generate(GraphKind::Random, p, 8);
  auto run_sequence = [&] {
    Harness h(g);
    PushState st = push_init(h.g, 0, kAlpha);
    std::vector<Vertex> pushed;
    for (int round = 1; round <= 6; ++round)
      increase_push_budget(st, h.oracle, 1u << round,
                           [&](const PushState&, Vertex v) { pushed.push_back(v); });
    return pushed;
  };
  CHECK(run_sequence() == run_sequence());
}

TEST_CASE("push invariants hold on randomized runs") {
  ValidateOptions opt;
  opt.trials = 30;
  for (const auto& r : validate_push_invariants(opt)) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
  }
}

TEST_CASE("budget-vs-profile sandwich on the small suite") {
  ValidateOptions opt;
  opt.trials = 40;
  for (const auto& r : validate_budget_profile_sandwich(opt)) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
  }
}
