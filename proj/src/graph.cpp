#include "pprlab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pprlab {

namespace {

// i-th element (0-based) of {0..n-1} \ removed, removed sorted ascending.
Vertex select_skipping(std::uint64_t i, const std::vector<Vertex>& removed) {
  std::uint64_t ans = i;
  for (Vertex r : removed) {
    if (r <= ans)
      ++ans;
    else
      break;
  }
  return static_cast<Vertex>(ans);
}

std::uint64_t min_out_degree_of(const std::vector<std::vector<Vertex>>& out) {
  std::uint64_t m = out.empty() ? 0 : out[0].size();
  for (const auto& lst : out) m = std::min<std::uint64_t>(m, lst.size());
  return m;
}

}  // namespace

Graph Graph::from_lists(std::vector<std::vector<Vertex>> out_adj,
                        std::vector<std::vector<Vertex>> in_adj) {
  if (out_adj.size() != in_adj.size())
    throw std::invalid_argument("from_lists: in/out list counts differ");
  const std::uint32_t n = static_cast<std::uint32_t>(out_adj.size());

  std::uint64_t m = 0;
  std::unordered_map<std::uint64_t, std::int64_t> balance;
  for (Vertex u = 0; u < n; ++u) {
    m += out_adj[u].size();
    for (Vertex v : out_adj[u]) {
      if (v >= n) throw std::invalid_argument("from_lists: out-neighbor id out of range");
      ++balance[(static_cast<std::uint64_t>(u) << 32) | v];
    }
  }
  std::uint64_t m_in = 0;
  for (Vertex v = 0; v < n; ++v) {
    m_in += in_adj[v].size();
    for (Vertex u : in_adj[v]) {
      if (u >= n) throw std::invalid_argument("from_lists: in-neighbor id out of range");
      --balance[(static_cast<std::uint64_t>(u) << 32) | v];
    }
  }
  if (m != m_in) throw std::invalid_argument("from_lists: edge totals differ");
  for (const auto& [key, diff] : balance)
    if (diff != 0)
      throw std::invalid_argument("from_lists: in/out adjacency inconsistent at edge (" +
                                  std::to_string(key >> 32) + "," +
                                  std::to_string(key & 0xffffffffu) + ")");

  Graph g;
  g.n_ = n;
  g.m_ = m;
  g.backing_ = Backing::Explicit;
  g.out_ = std::move(out_adj);
  g.in_ = std::move(in_adj);
  g.min_out_degree_ = min_out_degree_of(g.out_);
  return g;
}

Graph Graph::from_edges(std::uint32_t n,
                        const std::vector<std::pair<Vertex, Vertex>>& edges,
                        bool sort_lists) {
  std::vector<std::vector<Vertex>> out(n), in(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("from_edges: vertex id out of range");
    out[u].push_back(v);
    in[v].push_back(u);
  }
  if (sort_lists) {
    for (auto& lst : out) std::sort(lst.begin(), lst.end());
    for (auto& lst : in) std::sort(lst.begin(), lst.end());
  }

  Graph g;
  g.n_ = n;
  g.m_ = edges.size();
  g.backing_ = Backing::Explicit;
  g.out_ = std::move(out);
  g.in_ = std::move(in);
  g.min_out_degree_ = min_out_degree_of(g.out_);
  return g;
}

Graph Graph::complete_with_loops(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("complete_with_loops: n must be >= 1");
  Graph g;
  g.n_ = n;
  g.m_ = static_cast<std::uint64_t>(n) * n;
  g.backing_ = Backing::Complete;
  g.min_out_degree_ = n;
  return g;
}

Graph Graph::mostly_degree_n(std::uint32_t n,
                             const std::vector<std::pair<Vertex, Vertex>>& removed_edges) {
  if (n == 0) throw std::invalid_argument("mostly_degree_n: n must be >= 1");
  Graph g;
  g.n_ = n;
  g.backing_ = Backing::MostlyDegreeN;

  std::unordered_set<std::uint64_t> seen;
  for (const auto& [u, v] : removed_edges) {
    if (u >= n || v >= n)
      throw std::invalid_argument("mostly_degree_n: removed edge endpoint out of range");
    if (!seen.insert((static_cast<std::uint64_t>(u) << 32) | v).second)
      throw std::invalid_argument("mostly_degree_n: duplicate removed edge");
    g.removed_out_[u].push_back(v);
    g.removed_in_[v].push_back(u);
  }
  for (auto& [v, lst] : g.removed_out_) std::sort(lst.begin(), lst.end());
  for (auto& [v, lst] : g.removed_in_) std::sort(lst.begin(), lst.end());

  g.m_ = static_cast<std::uint64_t>(n) * n - removed_edges.size();
  std::uint64_t max_removed_out = 0;
  for (const auto& [v, lst] : g.removed_out_)
    max_removed_out = std::max<std::uint64_t>(max_removed_out, lst.size());
  if (max_removed_out >= n)
    throw std::invalid_argument("mostly_degree_n: a vertex lost all out-edges");
  g.min_out_degree_ = n - max_removed_out;
  return g;
}

std::uint64_t Graph::out_degree(Vertex v) const {
  check_vertex(v);
  switch (backing_) {
    case Backing::Explicit:
      return out_[v].size();
    case Backing::Complete:
      return n_;
    case Backing::MostlyDegreeN: {
      auto it = removed_out_.find(v);
      return n_ - (it == removed_out_.end() ? 0 : it->second.size());
    }
  }
  return 0;
}

std::uint64_t Graph::in_degree(Vertex v) const {
  check_vertex(v);
  switch (backing_) {
    case Backing::Explicit:
      return in_[v].size();
    case Backing::Complete:
      return n_;
    case Backing::MostlyDegreeN: {
      auto it = removed_in_.find(v);
      return n_ - (it == removed_in_.end() ? 0 : it->second.size());
    }
  }
  return 0;
}

Vertex Graph::out_neighbor(Vertex v, std::uint64_t i) const {
  check_vertex(v);
  switch (backing_) {
    case Backing::Explicit:
      return out_[v].at(i);
    case Backing::Complete:
      if (i >= n_) throw std::out_of_range("out_neighbor: index out of range");
      return static_cast<Vertex>(i);
    case Backing::MostlyDegreeN: {
      if (i >= out_degree(v)) throw std::out_of_range("out_neighbor: index out of range");
      auto it = removed_out_.find(v);
      if (it == removed_out_.end()) return static_cast<Vertex>(i);
      return select_skipping(i, it->second);
    }
  }
  return 0;
}

Vertex Graph::in_neighbor(Vertex v, std::uint64_t i) const {
  check_vertex(v);
  switch (backing_) {
    case Backing::Explicit:
      return in_[v].at(i);
    case Backing::Complete:
      if (i >= n_) throw std::out_of_range("in_neighbor: index out of range");
      return static_cast<Vertex>(i);
    case Backing::MostlyDegreeN: {
      if (i >= in_degree(v)) throw std::out_of_range("in_neighbor: index out of range");
      auto it = removed_in_.find(v);
      if (it == removed_in_.end()) return static_cast<Vertex>(i);
      return select_skipping(i, it->second);
    }
  }
  return 0;
}

const std::vector<std::vector<Vertex>>& Graph::out_lists() const {
  if (!is_explicit()) throw std::logic_error("out_lists: graph is not explicitly stored");
  return out_;
}

const std::vector<std::vector<Vertex>>& Graph::in_lists() const {
  if (!is_explicit()) throw std::logic_error("in_lists: graph is not explicitly stored");
  return in_;
}

const std::vector<Vertex>* Graph::removed_out(Vertex v) const {
  auto it = removed_out_.find(v);
  return it == removed_out_.end() ? nullptr : &it->second;
}

const std::vector<Vertex>* Graph::removed_in(Vertex v) const {
  auto it = removed_in_.find(v);
  return it == removed_in_.end() ? nullptr : &it->second;
}

void Graph::for_each_edge(const std::function<void(Vertex, Vertex)>& f) const {
  for (Vertex u = 0; u < n_; ++u) {
    const std::uint64_t d = out_degree(u);
    for (std::uint64_t i = 0; i < d; ++i) f(u, out_neighbor(u, i));
  }
}

Graph normalize(const Graph& g) {
  if (g.normalized()) return g;
  // Only explicit graphs can be unnormalized (implicit backings always have
  // out-degree >= 1).
  auto out = g.out_lists();
  auto in = g.in_lists();
  for (Vertex v = 0; v < g.order(); ++v) {
    if (out[v].empty()) {
      out[v].push_back(v);
      auto pos = std::lower_bound(in[v].begin(), in[v].end(), v);
      in[v].insert(pos, v);
    }
  }
  return Graph::from_lists(std::move(out), std::move(in));
}

namespace {

[[noreturn]] void parse_error(std::uint64_t line_no, const std::string& msg) {
  throw std::runtime_error("line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

Graph load_graph(std::istream& input, bool normalize_dangling) {
  std::string line;
  std::uint64_t line_no = 0;
  bool have_header = false;
  std::uint64_t n = 0, m = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;

  while (std::getline(input, line)) {
    ++line_no;
    std::string_view sv(line);
    auto hash = sv.find('#');
    if (hash != std::string_view::npos) sv = sv.substr(0, hash);
    if (sv.find_first_not_of(" \t\r\n") == std::string_view::npos) continue;
    std::istringstream ss{std::string(sv)};
    std::uint64_t a, b;
    if (!(ss >> a) || !(ss >> b))
      parse_error(line_no, "malformed line, expected two integers");
    std::string trailing;
    if (ss >> trailing) parse_error(line_no, "malformed line, trailing tokens");

    if (!have_header) {
      n = a;
      m = b;
      if (n == 0) parse_error(line_no, "graph must have at least one vertex");
      if (n > 0xffffffffull) parse_error(line_no, "vertex count too large");
      have_header = true;
      edges.reserve(m);
      continue;
    }
    if (edges.size() == m)
      parse_error(line_no, "unexpected extra line (duplicate header or edge beyond m)");
    if (a >= n || b >= n)
      parse_error(line_no, "vertex id out of range (n=" + std::to_string(n) + ")");
    edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }

  if (!have_header) throw std::runtime_error("empty input: missing \"n m\" header");
  if (edges.size() != m)
    throw std::runtime_error("unexpected end of input: got " + std::to_string(edges.size()) +
                             " of " + std::to_string(m) + " edges");

  Graph g = Graph::from_edges(static_cast<std::uint32_t>(n), edges, /*sort_lists=*/true);
  return normalize_dangling ? normalize(g) : g;
}

Graph load_graph_string(const std::string& text, bool normalize_dangling) {
  std::istringstream in(text);
  return load_graph(in, normalize_dangling);
}

Graph load_graph_file(const std::string& path, bool normalize_dangling) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return load_graph(in, normalize_dangling);
}

void save_graph(const Graph& g, std::ostream& out) {
  out << g.order() << ' ' << g.size() << '\n';
  g.for_each_edge([&](Vertex u, Vertex v) { out << u << ' ' << v << '\n'; });
}

void save_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  save_graph(g, out);
}

const char* query_kind_name(QueryKind k) {
  switch (k) {
    case QueryKind::InDeg:
      return "indeg";
    case QueryKind::OutDeg:
      return "outdeg";
    case QueryKind::In:
      return "in";
    case QueryKind::Out:
      return "out";
    case QueryKind::Jump:
      return "jump";
  }
  return "?";
}

std::uint64_t QueryLog::total() const {
  std::uint64_t t = 0;
  for (auto c : counts_) t += c;
  return t;
}

bool QueryLog::visits_any(const std::vector<Vertex>& vs) const {
  for (Vertex v : vs)
    if (vertex_visited(v)) return true;
  return false;
}

void QueryLog::record(QueryKind k, Vertex v, std::uint64_t index, std::uint64_t answer) {
  ++counts_[static_cast<std::size_t>(k)];
  if (detail_ != LogDetail::Counts) {
    switch (k) {
      case QueryKind::In:
      case QueryKind::Out: {
        Vertex u = static_cast<Vertex>(answer);
        visited_vertices_.insert(v);
        visited_vertices_.insert(u);
        visited_pairs_.insert(pair_key(v, u));
        break;
      }
      case QueryKind::InDeg:
      case QueryKind::OutDeg:
        visited_vertices_.insert(v);
        break;
      case QueryKind::Jump:
        visited_vertices_.insert(static_cast<Vertex>(answer));
        break;
    }
  }
  if (detail_ == LogDetail::Full) transcript_.push_back({k, v, index, answer});
}

bool transcripts_equal(const std::vector<TranscriptEntry>& a,
                       const std::vector<TranscriptEntry>& b) {
  return a == b;
}

}  // namespace pprlab
