#include "pprlab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace pprlab {

namespace {

std::vector<Vertex> sample_distinct(std::uint32_t n, std::uint32_t count, SplitMix64& rng) {
  std::unordered_set<Vertex> picked;
  std::vector<Vertex> out;
  out.reserve(count);
  while (out.size() < count) {
    Vertex v = static_cast<Vertex>(uniform_below(n, [&] { return rng.next(); }));
    if (picked.insert(v).second) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Graph generate(GraphKind kind, const GenParams& p, std::uint64_t seed) {
  if (p.n == 0) throw std::invalid_argument("generate: n must be >= 1");
  SplitMix64 rng(stream_seed(seed, "generator"));

  switch (kind) {
    case GraphKind::Path: {
      std::vector<std::pair<Vertex, Vertex>> edges;
      for (Vertex i = 0; i + 1 < p.n; ++i) edges.emplace_back(i, i + 1);
      Graph g = Graph::from_edges(p.n, edges);
      return p.normalize ? normalize(g) : g;
    }
    case GraphKind::Star: {
      std::vector<std::pair<Vertex, Vertex>> edges;
      const Vertex hub = p.n - 1;
      for (Vertex i = 0; i < hub; ++i) edges.emplace_back(i, hub);
      Graph g = Graph::from_edges(p.n, edges);
      return p.normalize ? normalize(g) : g;
    }
    case GraphKind::Complete:
      return Graph::complete_with_loops(p.n);
    case GraphKind::MostlyDegreeN: {
      const double limit =
          static_cast<double>(p.n) / std::max(1.0, std::log2(static_cast<double>(p.n)));
      if (static_cast<double>(p.deficient) >= limit)
        throw std::invalid_argument(
            "generate: deficient count must be below n/log2(n)");
      std::vector<Vertex> d = sample_distinct(p.n, p.deficient, rng);
      std::vector<std::pair<Vertex, Vertex>> removed;
      // Dropping the self-loop makes both degrees of a chosen vertex < n;
      // other edges inside the deficient set go with probability 1/2.
      for (Vertex u : d) removed.emplace_back(u, u);
      for (Vertex u : d)
        for (Vertex v : d)
          if (u != v && (rng.next() & 1)) removed.emplace_back(u, v);
      return Graph::mostly_degree_n(p.n, removed);
    }
    case GraphKind::Random: {
      std::vector<std::pair<Vertex, Vertex>> edges;
      edges.reserve(p.edges);
      for (std::uint64_t i = 0; i < p.edges; ++i) {
        Vertex u = static_cast<Vertex>(uniform_below(p.n, [&] { return rng.next(); }));
        Vertex v = static_cast<Vertex>(uniform_below(p.n, [&] { return rng.next(); }));
        edges.emplace_back(u, v);
      }
      Graph g = Graph::from_edges(p.n, edges);
      return p.normalize ? normalize(g) : g;
    }
  }
  throw std::invalid_argument("generate: unknown graph kind");
}

GraphKind parse_graph_kind(const std::string& name) {
  if (name == "path") return GraphKind::Path;
  if (name == "complete") return GraphKind::Complete;
  if (name == "star") return GraphKind::Star;
  if (name == "mostly" || name == "mostly-degree-n") return GraphKind::MostlyDegreeN;
  if (name == "random") return GraphKind::Random;
  throw std::invalid_argument("unknown graph kind: " + name);
}

const char* graph_kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::Path:
      return "path";
    case GraphKind::Complete:
      return "complete";
    case GraphKind::Star:
      return "star";
    case GraphKind::MostlyDegreeN:
      return "mostly-degree-n";
    case GraphKind::Random:
      return "random";
  }
  return "?";
}

std::pair<Graph, SurgeryRecord> subdivide_edge(const Graph& g, Vertex u, Vertex v) {
  auto out = g.out_lists();  // copies
  auto in = g.in_lists();
  if (u >= g.order() || v >= g.order())
    throw std::invalid_argument("subdivide_edge: vertex out of range");

  auto out_slot = std::find(out[u].begin(), out[u].end(), v);
  if (out_slot == out[u].end())
    throw std::invalid_argument("subdivide_edge: edge (" + std::to_string(u) + "," +
                                std::to_string(v) + ") not present");
  auto in_slot = std::find(in[v].begin(), in[v].end(), u);

  const Vertex fresh = g.order();
  *out_slot = fresh;
  *in_slot = fresh;
  out.emplace_back(std::vector<Vertex>{v});
  in.emplace_back(std::vector<Vertex>{u});

  SurgeryRecord rec;
  rec.kind = SurgeryKind::Subdivide;
  rec.edge = {u, v};
  rec.new_vertex = fresh;
  return {Graph::from_lists(std::move(out), std::move(in)), rec};
}

std::pair<Graph, SurgeryRecord> remove_in_edges(const Graph& g, Vertex v,
                                                const std::vector<Vertex>& sources) {
  if (v >= g.order()) throw std::invalid_argument("remove_in_edges: vertex out of range");
  auto out = g.out_lists();
  auto in = g.in_lists();

  SurgeryRecord rec;
  rec.kind = SurgeryKind::RemoveInEdges;
  for (Vertex u : sources) {
    auto in_slot = std::find(in[v].begin(), in[v].end(), u);
    if (in_slot == in[v].end())
      throw std::invalid_argument("remove_in_edges: (" + std::to_string(u) + "," +
                                  std::to_string(v) + ") is not an in-edge of " +
                                  std::to_string(v));
    in[v].erase(in_slot);
    auto out_slot = std::find(out[u].begin(), out[u].end(), v);
    out[u].erase(out_slot);
    rec.removed_edges.emplace_back(u, v);
  }
  return {Graph::from_lists(std::move(out), std::move(in)), rec};
}

Vertex mu_of_u(const Graph& g, const std::vector<Vertex>& u_set, Vertex t, double alpha,
               double tol) {
  std::unordered_set<Vertex> inside(u_set.begin(), u_set.end());
  if (inside.count(t)) throw std::invalid_argument("mu_of_u: target must lie outside U");

  std::unordered_set<Vertex> cand_set;
  for (Vertex u : u_set) {
    const std::uint64_t d = g.out_degree(u);
    for (std::uint64_t i = 0; i < d; ++i) {
      Vertex w = g.out_neighbor(u, i);
      if (!inside.count(w)) cand_set.insert(w);
    }
  }
  if (cand_set.empty())
    throw std::invalid_argument("mu_of_u: U has no out-neighbors outside U");

  std::vector<Vertex> candidates(cand_set.begin(), cand_set.end());
  std::sort(candidates.begin(), candidates.end());

  const RestrictedPprVector avoid = exact_restricted_ppr(g, t, u_set, alpha, tol);
  Vertex best = candidates.front();
  for (Vertex c : candidates)
    if (avoid.values[c] > avoid.values[best]) best = c;
  return best;
}

std::pair<Graph, SurgeryRecord> build_g_minus(const Graph& g, const std::vector<Vertex>& w,
                                              double eps) {
  if (!g.is_explicit())
    throw std::invalid_argument("build_g_minus: explicit graph required");
  if (w.empty()) throw std::invalid_argument("build_g_minus: W must be nonempty");
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("build_g_minus: eps must be in (0,1]");

  const std::uint32_t n = g.order();
  std::vector<char> in_w(n, 0);
  for (Vertex v : w) {
    if (v >= n) throw std::invalid_argument("build_g_minus: W vertex out of range");
    if (in_w[v]) throw std::invalid_argument("build_g_minus: duplicate W vertex");
    in_w[v] = 1;
  }

  // Every outside vertex must have spare room in W_ext for its W-incident
  // edges; this is the admissibility condition checked up front.
  const double cap = (1.0 - eps / 2.0) * static_cast<double>(w.size());
  for (Vertex v = 0; v < n; ++v) {
    if (in_w[v]) continue;
    std::uint64_t from_w = 0, to_w = 0;
    for (Vertex u : g.in_lists()[v]) from_w += in_w[u];
    for (Vertex u : g.out_lists()[v]) to_w += in_w[u];
    if (static_cast<double>(from_w) >= cap || static_cast<double>(to_w) >= cap)
      throw std::invalid_argument("build_g_minus: vertex " + std::to_string(v) +
                                  " has too many W-incident edges (" +
                                  std::to_string(std::max(from_w, to_w)) + " >= " +
                                  std::to_string(cap) + ")");
  }

  SurgeryRecord rec;
  rec.kind = SurgeryKind::RewireW;
  rec.eps = eps;
  rec.w = w;
  std::sort(rec.w.begin(), rec.w.end());
  const std::size_t iso_count =
      static_cast<std::size_t>(std::ceil(eps / 2.0 * static_cast<double>(w.size())));
  rec.w_iso.assign(rec.w.begin(), rec.w.begin() + iso_count);
  rec.w_ext.assign(rec.w.begin() + iso_count, rec.w.end());

  rec.outside_in_deg_before.assign(n, 0);
  rec.outside_out_deg_before.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (in_w[v]) continue;
    rec.outside_in_deg_before[v] = g.in_degree(v);
    rec.outside_out_deg_before[v] = g.out_degree(v);
  }

  auto out = g.out_lists();
  auto in = g.in_lists();
  for (Vertex v : rec.w) {
    out[v].clear();
    in[v].clear();
  }

  std::size_t cursor = 0;
  auto pick = [&](const std::unordered_set<Vertex>& used) -> Vertex {
    const std::size_t k = rec.w_ext.size();
    if (k == 0) throw std::logic_error("build_g_minus: no W_ext members to rewire onto");
    for (std::size_t j = 0; j < k; ++j) {
      Vertex cand = rec.w_ext[(cursor + j) % k];
      if (!used.count(cand)) {
        cursor = (cursor + j + 1) % k;
        return cand;
      }
    }
    Vertex cand = rec.w_ext[cursor % k];  // parallel edge, no duplicate-free choice
    cursor = (cursor + 1) % k;
    return cand;
  };

  // Slot-by-slot reassignment keeps the positions of untouched entries.
  for (Vertex v = 0; v < n; ++v) {
    if (in_w[v]) continue;
    std::unordered_set<Vertex> used_in, used_out;
    for (auto& slot : in[v]) {
      if (!in_w[slot]) continue;
      Vertex cand = pick(used_in);
      slot = cand;
      used_in.insert(cand);
      out[cand].push_back(v);
    }
    for (auto& slot : out[v]) {
      if (!in_w[slot]) continue;
      Vertex cand = pick(used_out);
      slot = cand;
      used_out.insert(cand);
      in[cand].push_back(v);
    }
  }

  Graph result = Graph::from_lists(std::move(out), std::move(in));

  rec.outside_in_deg_after.assign(n, 0);
  rec.outside_out_deg_after.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (in_w[v]) continue;
    rec.outside_in_deg_after[v] = result.in_degree(v);
    rec.outside_out_deg_after[v] = result.out_degree(v);
    if (rec.outside_in_deg_after[v] != rec.outside_in_deg_before[v] ||
        rec.outside_out_deg_after[v] != rec.outside_out_deg_before[v])
      throw std::logic_error("build_g_minus: degree not preserved at vertex " +
                             std::to_string(v));
  }
  return {std::move(result), rec};
}

std::pair<Graph, SurgeryRecord> build_g_plus(const Graph& gminus, const SurgeryRecord& rec,
                                             std::pair<Vertex, Vertex> edge_xy,
                                             Vertex y_prime, Vertex t, double alpha,
                                             double tol) {
  if (rec.kind != SurgeryKind::RewireW)
    throw std::invalid_argument("build_g_plus: record must come from build_g_minus");
  if (rec.w_iso.empty()) throw std::invalid_argument("build_g_plus: W_iso is empty");
  if (!gminus.is_explicit())
    throw std::invalid_argument("build_g_plus: explicit graph required");

  const auto [x, y] = edge_xy;
  std::unordered_set<Vertex> in_w(rec.w.begin(), rec.w.end());
  if (in_w.count(x) || in_w.count(y) || in_w.count(t) || in_w.count(y_prime))
    throw std::invalid_argument("build_g_plus: x, y, t, y' must lie outside W");

  auto out = gminus.out_lists();
  auto in = gminus.in_lists();
  if (std::find(out[x].begin(), out[x].end(), y) == out[x].end())
    throw std::invalid_argument("build_g_plus: edge (x,y) not present in G-minus");

  // x' = lowest-id W_ext in-neighbor of y'.
  Vertex x_prime = gminus.order();
  for (Vertex u : in[y_prime])
    if (in_w.count(u) && u < x_prime) x_prime = u;
  if (x_prime == gminus.order())
    throw std::invalid_argument("build_g_plus: y' is not an out-neighbor of W_ext");

  const PprVector base = exact_ppr(gminus, t, alpha, tol);
  Vertex x2 = x, y2 = y;
  const double val_y = base.values[y], val_yp = base.values[y_prime];
  if (val_yp > val_y || (val_yp == val_y && (y_prime < y || (y_prime == y && x_prime < x)))) {
    x2 = x_prime;
    y2 = y_prime;
  }

  const Vertex x_star = rec.w_iso.front();
  if (!out[x_star].empty() || !in[x_star].empty())
    throw std::logic_error("build_g_plus: x* is not isolated in G-minus");

  // Subdivide (x2, y2) through x*, in place.
  *std::find(out[x2].begin(), out[x2].end(), y2) = x_star;
  *std::find(in[y2].begin(), in[y2].end(), x2) = x_star;
  out[x_star].push_back(y2);
  in[x_star].push_back(x2);

  // Funnel the rest of W_iso into x*.
  for (Vertex w : rec.w_iso) {
    if (w == x_star) continue;
    if (!out[w].empty() || !in[w].empty())
      throw std::logic_error("build_g_plus: W_iso vertex not isolated in G-minus");
    out[w].push_back(x_star);
    in[x_star].push_back(w);
  }

  SurgeryRecord plus;
  plus.kind = SurgeryKind::AddFunnel;
  plus.edge = edge_xy;
  plus.edge_second = {x2, y2};
  plus.x_star = x_star;
  plus.eps = rec.eps;
  plus.w = rec.w;
  plus.w_iso = rec.w_iso;
  plus.w_ext = rec.w_ext;

  Graph result = Graph::from_lists(std::move(out), std::move(in));

  const std::uint32_t n = result.order();
  plus.outside_in_deg_before.assign(n, 0);
  plus.outside_out_deg_before.assign(n, 0);
  plus.outside_in_deg_after.assign(n, 0);
  plus.outside_out_deg_after.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (in_w.count(v)) continue;
    plus.outside_in_deg_before[v] = gminus.in_degree(v);
    plus.outside_out_deg_before[v] = gminus.out_degree(v);
    plus.outside_in_deg_after[v] = result.in_degree(v);
    plus.outside_out_deg_after[v] = result.out_degree(v);
    if (plus.outside_in_deg_after[v] != plus.outside_in_deg_before[v] ||
        plus.outside_out_deg_after[v] != plus.outside_out_deg_before[v])
      throw std::logic_error("build_g_plus: degree not preserved at vertex " +
                             std::to_string(v));
  }
  return {std::move(result), plus};
}

bool mostly_degree_n_test(const Graph& g, std::uint64_t samples, SplitMix64& rng,
                          QueryLog* log) {
  QueryLog own(LogDetail::Counts);
  GraphOracle oracle(g, log ? *log : own);
  const std::uint64_t n = g.order();
  for (std::uint64_t s = 0; s < samples; ++s) {
    Vertex v = oracle.jump([&] { return rng.next(); });
    if (oracle.indeg(v) != n) return false;
    if (oracle.outdeg(v) != n) return false;
  }
  return true;
}

}  // namespace pprlab
