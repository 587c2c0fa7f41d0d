#include "pprlab/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace pprlab {

namespace {

constexpr std::uint64_t kMaxSweeps = 1u << 20;

void check_args(const Graph& g, Vertex t, double alpha, double tol) {
  if (g.order() == 0) throw std::invalid_argument("exact solver: empty graph");
  if (t >= g.order()) throw std::invalid_argument("exact solver: target out of range");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("exact solver: alpha must be in (0,1)");
  if (!(tol > 0.0)) throw std::invalid_argument("exact solver: tol must be positive");
}

// One Jacobi sweep; returns the sup-norm update. `blocked` entries (if any)
// are held at zero.
double sweep(const Graph& g, Vertex t, double alpha, const std::vector<char>* blocked,
             const std::vector<double>& x, std::vector<double>& nx) {
  const std::uint32_t n = g.order();
  const double keep = 1.0 - alpha;
  double delta = 0.0;

  switch (g.backing()) {
    case Graph::Backing::Explicit: {
      const auto& out = g.out_lists();
      for (Vertex v = 0; v < n; ++v) {
        double val;
        if (blocked && (*blocked)[v]) {
          val = 0.0;
        } else if (out[v].empty()) {
          val = (v == t) ? 1.0 : 0.0;
        } else {
          double s = 0.0;
          for (Vertex w : out[v]) s += x[w];
          val = alpha * (v == t) + keep * s / static_cast<double>(out[v].size());
        }
        delta = std::max(delta, std::abs(val - x[v]));
        nx[v] = val;
      }
      break;
    }
    case Graph::Backing::Complete:
    case Graph::Backing::MostlyDegreeN: {
      // Neighbor sums via the total minus the few removed entries.
      double total = 0.0;
      for (Vertex v = 0; v < n; ++v) total += x[v];
      for (Vertex v = 0; v < n; ++v) {
        double val;
        if (blocked && (*blocked)[v]) {
          val = 0.0;
        } else {
          double s = total;
          std::uint64_t d = n;
          if (g.backing() == Graph::Backing::MostlyDegreeN) {
            if (const auto* rem = g.removed_out(v)) {
              for (Vertex w : *rem) s -= x[w];
              d -= rem->size();
            }
          }
          val = alpha * (v == t) + keep * s / static_cast<double>(d);
        }
        delta = std::max(delta, std::abs(val - x[v]));
        nx[v] = val;
      }
      break;
    }
  }
  return delta;
}

std::vector<double> solve(const Graph& g, Vertex t, double alpha, double tol,
                          const std::vector<char>* blocked) {
  const std::uint32_t n = g.order();
  std::vector<double> x(n, 0.0), nx(n, 0.0);
  // Stopping at update < tol*alpha certifies sup-norm error
  // <= update * (1-alpha)/alpha < tol.
  const double stop = tol * alpha;
  for (std::uint64_t it = 0; it < kMaxSweeps; ++it) {
    double delta = sweep(g, t, alpha, blocked, x, nx);
    x.swap(nx);
    if (delta < stop) return x;
  }
  throw std::runtime_error("exact solver: did not converge");
}

}  // namespace

double PprVector::pagerank() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

PprVector exact_ppr(const Graph& g, Vertex t, double alpha, double tol) {
  check_args(g, t, alpha, tol);
  PprVector r;
  r.target = t;
  r.alpha = alpha;
  r.tol = tol;
  r.values = solve(g, t, alpha, tol, nullptr);
  return r;
}

double exact_pagerank(const Graph& g, Vertex t, double alpha, double tol) {
  return exact_ppr(g, t, alpha, tol).pagerank();
}

RestrictedPprVector exact_restricted_ppr(const Graph& g, Vertex t,
                                         const std::vector<Vertex>& blocked,
                                         double alpha, double tol) {
  check_args(g, t, alpha, tol);
  RestrictedPprVector r;
  r.target = t;
  r.alpha = alpha;
  r.tol = tol;
  r.blocked = blocked;

  std::vector<char> mask(g.order(), 0);
  bool target_blocked = false;
  for (Vertex v : blocked) {
    if (v >= g.order())
      throw std::invalid_argument("exact_restricted_ppr: blocked vertex out of range");
    mask[v] = 1;
    if (v == t) target_blocked = true;
  }
  if (target_blocked) {
    r.values.assign(g.order(), 0.0);
    return r;
  }
  r.values = solve(g, t, alpha, tol, &mask);
  return r;
}

std::vector<std::vector<double>> exact_ppr_matrix(const Graph& g, double alpha, double tol) {
  std::vector<std::vector<double>> m(g.order());
  for (Vertex t = 0; t < g.order(); ++t) m[t] = exact_ppr(g, t, alpha, tol).values;
  return m;
}

}  // namespace pprlab
