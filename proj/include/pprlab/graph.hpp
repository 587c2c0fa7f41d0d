#pragma once
// Directed multigraph storage plus the unit-cost query oracle
// (indeg/outdeg/in/out/jump) with per-run visit accounting.
//
// Adjacency is either explicit (vector-of-vectors, sorted by vertex id when
// built through load_graph / from_edges) or implicit for the two dense
// generator families -- complete-with-loops and mostly-degree-n -- which
// answer neighbor queries by rank arithmetic over small removal lists
// instead of materializing n^2 edges.

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pprlab/rng.hpp"

namespace pprlab {

using Vertex = std::uint32_t;

class Graph {
 public:
  enum class Backing { Explicit, Complete, MostlyDegreeN };

  Graph() = default;

  // Lists are taken as-is; callers wanting the canonical id-sorted order
  // (load_graph, generators) sort before construction. In/out lists must be
  // mutually consistent as multisets.
  static Graph from_lists(std::vector<std::vector<Vertex>> out_adj,
                          std::vector<std::vector<Vertex>> in_adj);
  static Graph from_edges(std::uint32_t n,
                          const std::vector<std::pair<Vertex, Vertex>>& edges,
                          bool sort_lists = true);
  // All n^2 directed edges including every self-loop; d_in = d_out = n.
  static Graph complete_with_loops(std::uint32_t n);
  // Complete-with-loops minus `removed_edges`; endpoints of removed edges are
  // the deficient vertices.
  static Graph mostly_degree_n(
      std::uint32_t n, const std::vector<std::pair<Vertex, Vertex>>& removed_edges);

  std::uint32_t order() const { return n_; }  // n
  std::uint64_t size() const { return m_; }   // m
  Backing backing() const { return backing_; }
  bool is_explicit() const { return backing_ == Backing::Explicit; }
  // True when every vertex has out-degree >= 1 (no dangling vertices).
  bool normalized() const { return n_ > 0 && min_out_degree_ >= 1; }

  std::uint64_t out_degree(Vertex v) const;
  std::uint64_t in_degree(Vertex v) const;
  Vertex out_neighbor(Vertex v, std::uint64_t i) const;  // 0-based slot
  Vertex in_neighbor(Vertex v, std::uint64_t i) const;   // 0-based slot

  // Explicit backing only.
  const std::vector<std::vector<Vertex>>& out_lists() const;
  const std::vector<std::vector<Vertex>>& in_lists() const;

  // MostlyDegreeN backing: removal lists of a deficient vertex (nullptr when
  // the vertex is full-degree).
  const std::vector<Vertex>* removed_out(Vertex v) const;
  const std::vector<Vertex>* removed_in(Vertex v) const;

  void for_each_edge(const std::function<void(Vertex, Vertex)>& f) const;

 private:
  void check_vertex(Vertex v) const {
    if (v >= n_) throw std::out_of_range("vertex id " + std::to_string(v) +
                                         " out of range (n=" + std::to_string(n_) + ")");
  }

  std::uint32_t n_ = 0;
  std::uint64_t m_ = 0;
  Backing backing_ = Backing::Explicit;
  std::uint64_t min_out_degree_ = 0;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
  std::unordered_map<Vertex, std::vector<Vertex>> removed_out_;
  std::unordered_map<Vertex, std::vector<Vertex>> removed_in_;
};

// Self-loop every out-degree-0 vertex. Termination probabilities of
// alpha-discounted walks are unchanged by this: a walk parked at a dangling
// vertex ends there either way.
Graph normalize(const Graph& g);

// Edge-list text: first non-comment line "n m", then m lines "u v"
// (0-based, whitespace separated). '#' starts a comment line.
Graph load_graph(std::istream& in, bool normalize_dangling = true);
Graph load_graph_string(const std::string& text, bool normalize_dangling = true);
Graph load_graph_file(const std::string& path, bool normalize_dangling = true);
void save_graph(const Graph& g, std::ostream& out);
void save_graph_file(const Graph& g, const std::string& path);

// ---------------------------------------------------------------------------
// Query oracle and visit accounting
// ---------------------------------------------------------------------------

enum class QueryKind : std::uint8_t { InDeg = 0, OutDeg = 1, In = 2, Out = 3, Jump = 4 };
inline constexpr std::size_t kQueryKinds = 5;
const char* query_kind_name(QueryKind k);

struct TranscriptEntry {
  QueryKind kind;
  Vertex v = 0;             // argument vertex (unused for Jump)
  std::uint64_t index = 0;  // 1-based list index for In/Out, else 0
  std::uint64_t answer = 0;
  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

enum class LogDetail {
  Counts,  // per-kind counters only
  Visits,  // + visited vertex / vertex-pair sets
  Full,    // + replayable transcript
};

// Single-writer; each algorithm run owns its own log.
class QueryLog {
 public:
  explicit QueryLog(LogDetail detail = LogDetail::Full) : detail_(detail) {}

  LogDetail detail() const { return detail_; }
  std::uint64_t count(QueryKind k) const { return counts_[static_cast<std::size_t>(k)]; }
  const std::array<std::uint64_t, kQueryKinds>& counts() const { return counts_; }
  std::uint64_t total() const;
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }

  bool vertex_visited(Vertex v) const { return visited_vertices_.count(v) > 0; }
  bool pair_visited(Vertex a, Vertex b) const { return visited_pairs_.count(pair_key(a, b)) > 0; }
  std::uint64_t visited_vertex_count() const { return visited_vertices_.size(); }
  std::uint64_t visited_pair_count() const { return visited_pairs_.size(); }
  const std::unordered_set<Vertex>& visited_vertices() const { return visited_vertices_; }
  bool visits_any(const std::vector<Vertex>& vs) const;

  // Applies the visit rules: an In/Out answer visits the pair {v, answer} and
  // both endpoints; InDeg/OutDeg visit v; Jump visits the returned vertex.
  void record(QueryKind k, Vertex v, std::uint64_t index, std::uint64_t answer);

 private:
  static std::uint64_t pair_key(Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  LogDetail detail_;
  std::array<std::uint64_t, kQueryKinds> counts_{};
  std::unordered_set<Vertex> visited_vertices_;
  std::unordered_set<std::uint64_t> visited_pairs_;
  std::vector<TranscriptEntry> transcript_;
};

bool transcripts_equal(const std::vector<TranscriptEntry>& a,
                       const std::vector<TranscriptEntry>& b);

// All graph access of the estimation algorithms goes through this oracle so
// that query counts and visits reflect exactly what was looked at.
class GraphOracle {
 public:
  GraphOracle(const Graph& g, QueryLog& log) : g_(&g), log_(&log) {}

  std::uint64_t indeg(Vertex v) {
    std::uint64_t d = g_->in_degree(v);
    log_->record(QueryKind::InDeg, v, 0, d);
    return d;
  }

  std::uint64_t outdeg(Vertex v) {
    std::uint64_t d = g_->out_degree(v);
    log_->record(QueryKind::OutDeg, v, 0, d);
    return d;
  }

  // 1-based index, 1 <= i <= degree.
  Vertex in(Vertex v, std::uint64_t i) {
    if (i < 1 || i > g_->in_degree(v))
      throw std::out_of_range("in(v,i): index " + std::to_string(i) + " out of range");
    Vertex u = g_->in_neighbor(v, i - 1);
    log_->record(QueryKind::In, v, i, u);
    return u;
  }

  Vertex out(Vertex v, std::uint64_t i) {
    if (i < 1 || i > g_->out_degree(v))
      throw std::out_of_range("out(v,i): index " + std::to_string(i) + " out of range");
    Vertex u = g_->out_neighbor(v, i - 1);
    log_->record(QueryKind::Out, v, i, u);
    return u;
  }

  // Uniform vertex; draws come from the supplied random source.
  template <class F>
  Vertex jump(F&& next_u64) {
    Vertex v = static_cast<Vertex>(uniform_below(g_->order(), next_u64));
    log_->record(QueryKind::Jump, 0, 0, v);
    return v;
  }

  const Graph& graph() const { return *g_; }
  QueryLog& log() { return *log_; }

 private:
  const Graph* g_;
  QueryLog* log_;
};

}  // namespace pprlab
