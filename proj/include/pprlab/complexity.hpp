#pragma once
// Instance-complexity profile of a (graph, target) pair: for each threshold r
// the set V_r of vertices with pi(v,t) >= r carries weight
// T_r = sum_{v in V_r} (1 + indeg(v)), and the profile's headline number is
//
//   t_star = max over r in (0,1] of min(T_r, r / pagerank(t)).
//
// T_r is a right-continuous step function of r, so the maximum is attained at
// a breakpoint (a distinct PPR value); both the breakpoints and their
// one-sided limits are evaluated.

#include <cstdint>
#include <vector>

#include "pprlab/exact.hpp"
#include "pprlab/graph.hpp"

namespace pprlab {

struct ComplexityProfile {
  Vertex target = 0;
  double alpha = 0.2;
  double pagerank = 0.0;              // exact pi(t), mean of the PPR column
  std::vector<double> breakpoints;    // distinct positive PPR values, descending
  std::vector<std::uint64_t> t_at;    // inclusive T_r at each breakpoint
  std::vector<std::uint64_t> t_above; // exclusive prefix: T_r just above it
  double r_star = 0.0;
  double t_star = 0.0;

  // T_r for arbitrary r > 0 (0 when r exceeds every PPR value).
  std::uint64_t t_r(double r) const;
};

ComplexityProfile compute_profile(const Graph& g, Vertex t, const PprVector& ppr);

}  // namespace pprlab
