#pragma once
// Ground-truth PPR / PageRank values by damped fixed-point (Jacobi) iteration
// on the first-step recurrence
//
//   pi(v,t) = alpha*[v=t] + (1-alpha) * mean over out-neighbors w of pi(w,t),
//
// solved to a certified sup-norm tolerance via the (1-alpha) contraction.
// Out-degree-0 vertices are pinned to [v=t]: a walk there terminates on the
// spot, which coincides with the self-loop normalization value, so the solver
// accepts unnormalized graphs for oracle-only use.

#include <cstdint>
#include <vector>

#include "pprlab/graph.hpp"

namespace pprlab {

struct PprVector {
  Vertex target = 0;
  double alpha = 0.2;
  double tol = 1e-12;                // certified sup-norm error bound
  std::vector<double> values;        // values[v] = pi(v, target)

  double pagerank() const;           // mean of values
};

struct RestrictedPprVector {
  Vertex target = 0;
  double alpha = 0.2;
  double tol = 1e-12;
  std::vector<Vertex> blocked;       // the avoided set U
  std::vector<double> values;        // values[v] = pi(v, U-bar, target)
};

inline constexpr double kDefaultAlpha = 0.2;
inline constexpr double kDefaultTol = 1e-12;

PprVector exact_ppr(const Graph& g, Vertex t, double alpha = kDefaultAlpha,
                    double tol = kDefaultTol);

double exact_pagerank(const Graph& g, Vertex t, double alpha = kDefaultAlpha,
                      double tol = kDefaultTol);

// Walks that touch any vertex of `blocked` are annihilated, including at
// step 0: values are 0 on blocked vertices, and identically 0 if the target
// itself is blocked.
RestrictedPprVector exact_restricted_ppr(const Graph& g, Vertex t,
                                         const std::vector<Vertex>& blocked,
                                         double alpha = kDefaultAlpha,
                                         double tol = kDefaultTol);

// All n columns: matrix[t] = exact_ppr(g, t).values. Small graphs only.
std::vector<std::vector<double>> exact_ppr_matrix(const Graph& g,
                                                  double alpha = kDefaultAlpha,
                                                  double tol = kDefaultTol);

}  // namespace pprlab
