#pragma once
// Graph generators for the benchmark families and the constructive
// surgeries used by the equivalence machinery: edge subdivision, in-edge
// removal, the set-exit maximizer mu(U), and the W-rewiring that isolates a
// slice of W while preserving every degree outside it.
//
// Surgeries on explicit graphs replace adjacency-list slots in place: entries
// untouched by the surgery keep their positions, so indexable neighbor
// queries outside the modified region answer identically before and after.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pprlab/exact.hpp"
#include "pprlab/graph.hpp"
#include "pprlab/rng.hpp"

namespace pprlab {

enum class GraphKind { Path, Complete, Star, MostlyDegreeN, Random };

struct GenParams {
  std::uint32_t n = 1;
  std::uint32_t deficient = 0;   // MostlyDegreeN: vertices with degree < n
  std::uint64_t edges = 0;       // Random: number of sampled edges
  bool normalize = true;
};

// Deterministic given (kind, params, seed). Path: 0 -> 1 -> ... -> n-1 with a
// self-loop at the end after normalization. Star: every leaf points at hub
// n-1. Complete and MostlyDegreeN include all self-loops, so full-degree
// vertices have indeg = outdeg = n.
Graph generate(GraphKind kind, const GenParams& params, std::uint64_t seed);

GraphKind parse_graph_kind(const std::string& name);
const char* graph_kind_name(GraphKind kind);

enum class SurgeryKind { Subdivide, RemoveInEdges, RewireW, AddFunnel };

struct SurgeryRecord {
  SurgeryKind kind;
  std::optional<std::pair<Vertex, Vertex>> edge;  // subdivided / designated (x,y)
  std::optional<Vertex> new_vertex;               // Subdivide
  std::vector<std::pair<Vertex, Vertex>> removed_edges;
  std::vector<Vertex> w, w_iso, w_ext;
  double eps = 0.0;
  std::optional<Vertex> x_star;                   // funnel middle vertex
  std::optional<std::pair<Vertex, Vertex>> edge_second;  // chosen (x'', y'')
  // Degree audit over vertices outside W (indexed by vertex id; entries for
  // W members are zeroed).
  std::vector<std::uint64_t> outside_in_deg_before, outside_out_deg_before;
  std::vector<std::uint64_t> outside_in_deg_after, outside_out_deg_after;
};

// Replace (u,v) by (u,v') and (v',v) through a fresh vertex v' = n. The slot
// of v in u's out-list (and of u in v's in-list) is overwritten in place.
std::pair<Graph, SurgeryRecord> subdivide_edge(const Graph& g, Vertex u, Vertex v);

// Remove the listed in-edges of v (sources with multiplicity).
std::pair<Graph, SurgeryRecord> remove_in_edges(const Graph& g, Vertex v,
                                                const std::vector<Vertex>& sources);

// argmax over out-neighbors of U (excluding U) of pi(., U-bar, t); ties go to
// the lowest id. Throws when the candidate set is empty or t is in U.
Vertex mu_of_u(const Graph& g, const std::vector<Vertex>& u_set, Vertex t,
               double alpha = kDefaultAlpha, double tol = kDefaultTol);

// Deletes the edges internal to W, splits W into W_iso (the lowest
// ceil(eps/2*|W|) ids, left fully isolated) and W_ext, and reassigns every
// W-incident slot of an outside vertex to a W_ext member round-robin,
// skipping duplicates where possible. Requires every outside vertex to have
// fewer than (1-eps/2)|W| in-edges from W and out-edges to W.
std::pair<Graph, SurgeryRecord> build_g_minus(const Graph& g, const std::vector<Vertex>& w,
                                              double eps);

// On top of a RewireW result: picks (x'',y'') among {(x,y), (x',y')} with the
// larger pi(y'', t) in gminus (x' = lowest-id W_ext in-neighbor of y_prime),
// subdivides it through x* = lowest W_iso id, and adds (w, x*) for every
// other w in W_iso, so pi(w,t) = (1-alpha) * pi(x*,t) afterwards.
std::pair<Graph, SurgeryRecord> build_g_plus(const Graph& gminus, const SurgeryRecord& rec,
                                             std::pair<Vertex, Vertex> edge_xy,
                                             Vertex y_prime, Vertex t,
                                             double alpha = kDefaultAlpha,
                                             double tol = kDefaultTol);

// Samples `samples` vertices with replacement via jump; true iff every sample
// has indeg = outdeg = n. Oracle queries are logged when `log` is given.
bool mostly_degree_n_test(const Graph& g, std::uint64_t samples, SplitMix64& rng,
                          QueryLog* log = nullptr);

}  // namespace pprlab
