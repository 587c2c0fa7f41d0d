#include "pprlab/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "pprlab/lab.hpp"

namespace pprlab {

namespace {

QueryTotals totals_from(const QueryLog& log) {
  QueryTotals t;
  t.by_kind = log.counts();
  t.total = log.total();
  return t;
}

void require_ready(const Graph& g, Vertex t) {
  if (g.order() == 0) throw std::invalid_argument("estimator: empty graph");
  if (t >= g.order()) throw std::invalid_argument("estimator: target out of range");
  if (!g.normalized())
    throw std::invalid_argument("estimator: graph must be normalized (no dangling vertices)");
}

}  // namespace

const char* estimator_mode_name(EstimatorMode m) {
  switch (m) {
    case EstimatorMode::Adaptive:
      return "adaptive";
    case EstimatorMode::Baseline:
      return "baseline";
    case EstimatorMode::InstanceSmart:
      return "instance-smart";
  }
  return "?";
}

const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::Rule:
      return "rule";
    case StopReason::PushComplete:
      return "push-complete";
    case StopReason::RoundCap:
      return "round-cap";
  }
  return "?";
}

AdaptiveSeeds AdaptiveSeeds::from_root(std::uint64_t root) {
  return {stream_seed(root, "walks-1"), stream_seed(root, "walks-2"),
          stream_seed(root, "walks-3")};
}

std::uint32_t max_rounds(std::uint32_t n, double alpha) {
  const double l2n = std::log2(static_cast<double>(n));
  const double v = (2.0 * n / (alpha * alpha)) * l2n;
  if (!(v > 1.0)) return 1;
  return static_cast<std::uint32_t>(std::ceil(std::log2(v)));
}

EstimateReport adaptive_pagerank(const Graph& g, Vertex t, double alpha,
                                 const AdaptiveSeeds& seeds, WalkMode mode,
                                 QueryLog* external_log) {
  require_ready(g, t);

  QueryLog own(LogDetail::Counts);
  QueryLog& log = external_log ? *external_log : own;
  GraphOracle oracle(g, log);

  const WalkRandomness rng1(seeds.r1, mode), rng2(seeds.r2, mode), rng3(seeds.r3, mode);
  PushState st = push_init(g, t, alpha);

  EstimateReport rep;
  rep.mode = EstimatorMode::Adaptive;
  rep.n = g.order();
  rep.target = t;
  rep.alpha = alpha;

  const double l2n = std::log2(static_cast<double>(g.order()));
  const std::uint32_t cap = max_rounds(g.order(), alpha);

  for (std::uint32_t i = 1; i <= cap; ++i) {
    increase_push_budget(st, oracle, 1ull << (i - 1));
    const double tau = st.push_threshold() * l2n / (alpha * std::exp2(static_cast<double>(i) - 2.0));

    if (st.phase() == PushPhase::Complete) {
      // Zero residue left: every Monte Carlo estimate collapses to the exact
      // reserve average, so return it without spending walks.
      const double exact = st.sum_reserve() / static_cast<double>(g.order());
      rep.rounds.push_back({i, st.push_threshold(), tau, exact, exact, exact,
                            st.cost_spent(), 0});
      rep.estimate = exact;
      rep.stop_round = i;
      rep.stop_reason = StopReason::PushComplete;
      rep.queries = totals_from(log);
      return rep;
    }

    const std::uint64_t q = 1ull << i;
    const double x1 = monte_carlo(oracle, st, q, rng1).value;
    const double x2 = monte_carlo(oracle, st, q, rng2).value;
    const double x3 = monte_carlo(oracle, st, q, rng3).value;
    rep.rounds.push_back({i, st.push_threshold(), tau, x1, x2, x3, st.cost_spent(), q});

    if (std::max(x1, x2) >= tau) {
      rep.estimate = x3;
      rep.stop_round = i;
      rep.stop_reason = StopReason::Rule;
      rep.queries = totals_from(log);
      return rep;
    }
  }

  rep.estimate = rep.rounds.back().x3;
  rep.stop_round = cap;
  rep.stop_reason = StopReason::RoundCap;
  rep.queries = totals_from(log);
  return rep;
}

EstimateReport bidirectional_ppr(const Graph& g, Vertex t, double r_max, std::uint64_t q,
                                 std::uint64_t seed, double alpha, WalkMode mode,
                                 QueryLog* external_log) {
  require_ready(g, t);
  if (!(r_max > 0.0 && r_max <= 1.0))
    throw std::invalid_argument("bidirectional_ppr: r_max must be in (0,1]");
  if (q < 1) throw std::invalid_argument("bidirectional_ppr: need at least one walk");

  QueryLog own(LogDetail::Counts);
  QueryLog& log = external_log ? *external_log : own;
  GraphOracle oracle(g, log);

  PushState st = push_init(g, t, alpha);
  while (st.has_candidate(r_max)) pushback(st, oracle, st.pick_candidate(r_max));

  const WalkRandomness rng(stream_seed(seed, "walks-1"), mode);
  const McEstimate mc = monte_carlo(oracle, st, q, rng);

  EstimateReport rep;
  rep.mode = EstimatorMode::Baseline;
  rep.n = g.order();
  rep.target = t;
  rep.alpha = alpha;
  rep.estimate = mc.value;
  rep.stop_round = 1;
  rep.stop_reason = StopReason::Rule;
  rep.rounds.push_back({1, r_max, 0.0, mc.value, mc.value, mc.value, st.cost_spent(), q});
  rep.queries = totals_from(log);
  return rep;
}

EstimateReport instance_smart(const Graph& g, Vertex t, double alpha, std::uint64_t seed,
                              WalkMode mode, QueryLog* external_log) {
  require_ready(g, t);

  QueryLog own(LogDetail::Counts);
  QueryLog& log = external_log ? *external_log : own;

  const double l2n = std::log2(static_cast<double>(g.order()));
  const std::uint64_t samples =
      static_cast<std::uint64_t>(std::ceil(std::pow(std::max(0.0, l2n), 1.25)));

  SplitMix64 jump_rng(stream_seed(seed, "jump"));
  const bool all_full_degree = mostly_degree_n_test(g, samples, jump_rng, &log);

  if (all_full_degree) {
    EstimateReport rep;
    rep.mode = EstimatorMode::InstanceSmart;
    rep.n = g.order();
    rep.target = t;
    rep.alpha = alpha;
    rep.estimate = 1.0 / static_cast<double>(g.order());
    rep.stop_round = 0;
    rep.stop_reason = StopReason::Rule;
    rep.degree_test_passed = true;
    rep.queries = totals_from(log);
    return rep;
  }

  EstimateReport rep =
      adaptive_pagerank(g, t, alpha, AdaptiveSeeds::from_root(seed), mode, &log);
  rep.mode = EstimatorMode::InstanceSmart;
  rep.degree_test_passed = false;
  rep.queries = totals_from(log);
  return rep;
}

}  // namespace pprlab
