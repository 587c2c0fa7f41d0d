#pragma once
// Top-level estimators of the PageRank centrality pi(t):
//
//  * adaptive_pagerank  -- round-doubling bidirectional search: each round i
//    grants 2^(i-1) extra push budget, runs three independent Monte Carlo
//    estimates on 2^i walks, and stops once max(X1, X2) clears the threshold
//    tau = r_push * log2(n) / (alpha * 2^(i-2)). X3 is returned so the
//    stopping decision never looks at the reported estimate.
//  * bidirectional_ppr  -- the non-adaptive baseline: push every residue down
//    to a fixed threshold r_max, then estimate with q walks.
//  * instance_smart     -- degree-samples ceil(log2(n)^(5/4)) vertices first;
//    if all have indeg = outdeg = n the answer is 1/n, otherwise it defers to
//    adaptive_pagerank.

#include <cstdint>
#include <vector>

#include "pprlab/graph.hpp"
#include "pprlab/push.hpp"
#include "pprlab/walk.hpp"

namespace pprlab {

enum class EstimatorMode { Adaptive, Baseline, InstanceSmart };
enum class StopReason {
  Rule,          // max(X1, X2) >= tau
  PushComplete,  // all residue consumed; the reserve average is exact
  RoundCap,      // hard cap i^T reached (never observed on valid inputs)
};

const char* estimator_mode_name(EstimatorMode m);
const char* stop_reason_name(StopReason r);

struct RoundRecord {
  std::uint32_t round = 0;
  double r_push = 1.0;          // threshold at the round's end
  double tau = 0.0;
  double x1 = 0.0, x2 = 0.0, x3 = 0.0;
  std::uint64_t cost_spent = 0;  // cumulative push cost sum(indeg+1)
  std::uint64_t walks = 0;       // walks per estimator this round
};

struct QueryTotals {
  std::array<std::uint64_t, kQueryKinds> by_kind{};
  std::uint64_t total = 0;
};

struct EstimateReport {
  EstimatorMode mode = EstimatorMode::Adaptive;
  double estimate = 0.0;
  std::uint32_t stop_round = 0;
  StopReason stop_reason = StopReason::Rule;
  std::vector<RoundRecord> rounds;
  QueryTotals queries;
  std::uint32_t n = 0;
  Vertex target = 0;
  double alpha = 0.2;
  bool degree_test_passed = false;  // InstanceSmart only
};

struct AdaptiveSeeds {
  std::uint64_t r1 = 0, r2 = 0, r3 = 0;
  // Named substreams of a root seed: "walks-1", "walks-2", "walks-3".
  static AdaptiveSeeds from_root(std::uint64_t root);
};

// Hard round cap: ceil(log2((2n/alpha^2) * log2(n))), at least 1.
std::uint32_t max_rounds(std::uint32_t n, double alpha);

EstimateReport adaptive_pagerank(const Graph& g, Vertex t, double alpha,
                                 const AdaptiveSeeds& seeds,
                                 WalkMode mode = WalkMode::FullIndependent,
                                 QueryLog* log = nullptr);

EstimateReport bidirectional_ppr(const Graph& g, Vertex t, double r_max, std::uint64_t q,
                                 std::uint64_t seed, double alpha = 0.2,
                                 WalkMode mode = WalkMode::FullIndependent,
                                 QueryLog* log = nullptr);

EstimateReport instance_smart(const Graph& g, Vertex t, double alpha, std::uint64_t seed,
                              WalkMode mode = WalkMode::FullIndependent,
                              QueryLog* log = nullptr);

}  // namespace pprlab
