#pragma once
// Executable validators for the structural facts the estimator relies on:
// subdivision / in-edge-removal / set-exit value bounds, the through-vs-avoid
// decomposition, the push-loop invariants, the per-round budget-vs-profile
// sandwich, and the surgery equivalence machinery (degree preservation,
// transcript-identical seeded runs, and the pagerank gap of the funnel
// construction). Shared by the test suites and the CLI `validate` command.

#include <cstdint>
#include <string>
#include <vector>

#include "pprlab/complexity.hpp"
#include "pprlab/estimators.hpp"
#include "pprlab/exact.hpp"
#include "pprlab/lab.hpp"
#include "pprlab/push.hpp"

namespace pprlab {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidateOptions {
  std::uint64_t seed = 1;
  int trials = 100;
  double alpha = 0.2;
  double tol = 1e-9;         // tolerance for the structural value bounds
  double solver_tol = 1e-12; // exact-solver certification
};

// Probability of terminating at t after visiting at least one vertex of
// `through` (the complement of the avoiding probability): vertices inside
// the set are pinned to their unrestricted values, everything else follows
// the plain first-step recurrence. Explicit graphs only.
std::vector<double> exact_through_ppr(const Graph& g, Vertex t,
                                      const std::vector<Vertex>& through, double alpha,
                                      double tol);

// max over sources s of |pi(s,t) - p(s) - sum_v pi(s,v) r(v)| given the full
// PPR matrix (matrix[target][source]).
double push_identity_residual(const std::vector<std::vector<double>>& ppr_matrix,
                              const PushState& st, Vertex t);

// Reserve sandwich: p(s) <= pi(s,t) <= p(s) + max residue, for every s.
bool push_sandwich_holds(const std::vector<double>& ppr_column, const PushState& st,
                         double tol, double* worst_violation = nullptr);

// Push cost plus three-estimator walk counts, the yardstick for scaling
// checks against t_star * log2(n).
std::uint64_t total_cost(const EstimateReport& report);

// Layered fixture for the equivalence tests: a wide in-star onto t fed by a
// second layer (so the adaptive run stops on walks alone, before any push),
// plus a W of pendant vertices whose edges point at private junk vertices.
struct FunnelFixture {
  Graph g;
  Vertex t = 0;
  std::vector<Vertex> w;
  std::pair<Vertex, Vertex> edge_xy{0, 0};
  Vertex y_prime = 0;
  double eps = 0.5;
};
FunnelFixture make_funnel_fixture(std::uint32_t layer1, std::uint32_t layer2,
                                  std::uint32_t w_count, std::uint32_t spares);

std::vector<CheckResult> validate_subdivision_bound(const ValidateOptions& opt);
std::vector<CheckResult> validate_exit_vertex_bound(const ValidateOptions& opt);
std::vector<CheckResult> validate_in_edge_removal_bound(const ValidateOptions& opt);
std::vector<CheckResult> validate_decomposition(const ValidateOptions& opt);
std::vector<CheckResult> validate_push_invariants(const ValidateOptions& opt);
std::vector<CheckResult> validate_budget_profile_sandwich(const ValidateOptions& opt);
std::vector<CheckResult> validate_surgery_equivalence(const ValidateOptions& opt);
std::vector<CheckResult> validate_degree_test(const ValidateOptions& opt);

// The named suites exposed by the CLI.
std::vector<CheckResult> run_validation_suite(const std::string& suite,
                                              const ValidateOptions& opt);

}  // namespace pprlab
