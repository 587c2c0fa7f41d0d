#include "pprlab/complexity.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pprlab {

std::uint64_t ComplexityProfile::t_r(double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("t_r: r must be positive");
  // breakpoints descending; want the last index k with breakpoints[k] >= r.
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), r,
                             [](double bp, double val) { return bp >= val; });
  // `it` is the first element < r; everything before it is >= r.
  if (it == breakpoints.begin()) return 0;
  return t_at[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

ComplexityProfile compute_profile(const Graph& g, Vertex t, const PprVector& ppr) {
  if (ppr.target != t || ppr.values.size() != g.order())
    throw std::invalid_argument("compute_profile: ppr vector does not match (g, t)");

  ComplexityProfile prof;
  prof.target = t;
  prof.alpha = ppr.alpha;
  prof.pagerank = ppr.pagerank();

  std::vector<Vertex> order(g.order());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    if (ppr.values[a] != ppr.values[b]) return ppr.values[a] > ppr.values[b];
    return a < b;
  });

  // Group equal values; prefix-sum the (1 + indeg) weights.
  std::uint64_t prefix = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double val = ppr.values[order[i]];
    if (!(val > 0.0)) break;  // zero-PPR tail never enters a candidate set
    const std::uint64_t before = prefix;
    std::size_t j = i;
    while (j < order.size() && ppr.values[order[j]] == val) {
      prefix += 1 + g.in_degree(order[j]);
      ++j;
    }
    prof.breakpoints.push_back(val);
    prof.t_above.push_back(before);
    prof.t_at.push_back(prefix);
    i = j;
  }

  // min(T_r, r/pagerank) is nondecreasing on each constant piece of T_r, so
  // the supremum over a piece sits at its right end (a breakpoint); the
  // one-sided limits are evaluated as well and can only tie from below.
  prof.t_star = 0.0;
  prof.r_star = 0.0;
  for (std::size_t k = 0; k < prof.breakpoints.size(); ++k) {
    const double r = prof.breakpoints[k];
    const double ratio = r / prof.pagerank;
    const double at = std::min(static_cast<double>(prof.t_at[k]), ratio);
    const double above = std::min(static_cast<double>(prof.t_above[k]), ratio);
    const double best = std::max(at, above);
    if (best > prof.t_star) {
      prof.t_star = best;
      prof.r_star = r;
    }
  }
  return prof;
}

}  // namespace pprlab
