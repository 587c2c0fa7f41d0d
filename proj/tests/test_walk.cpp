#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pprlab/exact.hpp"
#include "pprlab/lab.hpp"
#include "pprlab/walk.hpp"

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

TEST_CASE("walks on the self-loop singleton always end there") {
  Harness h(load_graph_string("1 1\n0 0\n"));
  WalkRandomness rng(5, WalkMode::FullIndependent);
  for (std::uint64_t j = 0; j < 50; ++j) CHECK(sample_walk(h.oracle, 0, kAlpha, rng, j) == 0);
}

TEST_CASE("a walk is a pure function of (seed, mode, walk id)") {
  GenParams p;
  p.n = 40;
  p.edges = 120;
  Graph g = generate(GraphKind::Random, p, 2);
  for (WalkMode mode : {WalkMode::FullIndependent, WalkMode::Pairwise}) {
    Harness a(g), b(g);
    WalkRandomness rng(123, mode);
    for (std::uint64_t j = 0; j < 30; ++j) {
      std::uint64_t steps_a = 0, steps_b = 0;
      const Vertex ta = sample_walk(a.oracle, 3, kAlpha, rng, j, &steps_a);
      const Vertex tb = sample_walk(b.oracle, 3, kAlpha, rng, j, &steps_b);
      REQUIRE(ta == tb);
      REQUIRE(steps_a == steps_b);
    }
    CHECK(transcripts_equal(a.log.transcript(), b.log.transcript()));
  }
}

TEST_CASE("path termination frequency follows the geometric law") {
  const std::uint32_t n = 8;
  GenParams p;
  p.n = n;
  Graph g = generate(GraphKind::Path, p, 1);
  const Vertex start = 3;  // distance 4 from the end
  const double expected = std::pow(1.0 - kAlpha, n - 1 - start);

  for (WalkMode mode : {WalkMode::FullIndependent, WalkMode::Pairwise}) {
    Harness h(g);
    WalkRandomness rng(77, mode);
    const std::uint64_t walks = 100000;
    std::uint64_t hits = 0;
    std::uint64_t capped = 0;
    for (std::uint64_t j = 0; j < walks; ++j) {
      bool cap = false;
      if (sample_walk(h.oracle, start, kAlpha, rng, j, nullptr, &cap) == n - 1) ++hits;
      if (cap) ++capped;
    }
    CHECK(capped == 0);
    const double freq = static_cast<double>(hits) / walks;
    const double se = std::sqrt(expected * (1 - expected) / walks);
    CHECK(std::abs(freq - expected) <= 4.0 * se);
  }
}

TEST_CASE("monte carlo with zero residue is constant regardless of seed") {
  Harness h(load_graph_string("2 2\n1 0\n0 0\n"));
  PushState st = push_init(h.g, 1, kAlpha);
  increase_push_budget(st, h.oracle, 1);  // drains everything (no in-edges)
  REQUIRE(st.phase() == PushPhase::Complete);
  const double expect = st.sum_reserve() / 2.0;
  for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
    const auto est = monte_carlo(h.oracle, st, 64, WalkRandomness(seed));
    CHECK(est.value == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("monte carlo on the fresh state counts terminations at the target") {
  GenParams p;
  p.n = 16;
  p.edges = 48;
  Graph g = generate(GraphKind::Random, p, 6);
  Harness h(g);
  PushState st = push_init(h.g, 5, kAlpha);  // r(5) = 1, everything else 0
  const std::uint64_t q = 512;
  const auto est = monte_carlo(h.oracle, st, q, WalkRandomness(31));
  std::uint64_t at_target = 0;
  if (auto it = est.terminal_counts.find(5); it != est.terminal_counts.end())
    at_target = it->second;
  CHECK(est.value ==
        doctest::Approx(static_cast<double>(at_target) / q).epsilon(1e-12));
  CHECK(est.cap_hits == 0);
}

TEST_CASE("the estimate is recomputable from the reported fields") {
  GenParams p;
  p.n = 24;
  p.edges = 70;
  Graph g = generate(GraphKind::Random, p, 11);
  Harness h(g);
  PushState st = push_init(h.g, 2, kAlpha);
  for (int i = 1; i <= 4; ++i) increase_push_budget(st, h.oracle, 1u << i);

  const std::uint64_t q = 256;
  const auto est = monte_carlo(h.oracle, st, q, WalkRandomness(4242));
  double recomputed = st.sum_reserve() / g.order();
  std::uint64_t total = 0;
  for (const auto& [v, c] : est.terminal_counts) {
    recomputed += st.residue(v) * static_cast<double>(c) / q;
    total += c;
  }
  CHECK(total == q);
  CHECK(est.value == doctest::Approx(recomputed).epsilon(1e-12));
}

TEST_CASE("seed-averaged estimates match the exact pagerank in both modes") {
  GenParams p;
  p.n = 30;
  p.edges = 80;
  Graph g = generate(GraphKind::Random, p, 13);
  const Vertex t = 4;
  const double exact = exact_pagerank(g, t, kAlpha, 1e-13);

  Harness h(g);
  PushState st = push_init(h.g, t, kAlpha);
  for (int i = 1; i <= 4; ++i) increase_push_budget(st, h.oracle, 1u << i);
  const double r_max = st.max_residue();

  for (WalkMode mode : {WalkMode::FullIndependent, WalkMode::Pairwise}) {
    const int seeds = 1000;
    const std::uint64_t q = 32;
    double sum = 0.0, sq = 0.0;
    for (int s = 1; s <= seeds; ++s) {
      const auto est = monte_carlo(h.oracle, st, q, WalkRandomness(s, mode));
      sum += est.value;
      sq += est.value * est.value;
    }
    const double mean = sum / seeds;
    const double var = sq / seeds - mean * mean;
    const double se = std::sqrt(var / seeds);
    INFO("mode ", mode == WalkMode::Pairwise ? "pairwise" : "full");
    CHECK(std::abs(mean - exact) <= 4.0 * se + 1e-9);
    // Variance bound with generous slack for estimation noise.
    CHECK(var <= 1.5 * r_max * exact / q + 1e-12);
  }
}
