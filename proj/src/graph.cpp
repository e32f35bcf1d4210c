#include "sumnet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

#include "sumnet/error.hpp"

namespace sumnet {

std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

UndirectedGraph::UndirectedGraph(int vertex_count, std::vector<Edge> edges)
    : b_(vertex_count), edges_(std::move(edges)) {
  if (b_ < 1) throw Error(ErrorCode::ParseError, "vertex count must be positive");
  for (const Edge& e : edges_) {
    if (e.u == e.v) {
      throw Error(ErrorCode::NotSimple, "self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u < 1 || e.v > b_) {
      throw Error(ErrorCode::ParseError,
                  "edge " + to_string(e) + " references a vertex outside 1.." +
                      std::to_string(b_));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw Error(ErrorCode::NotSimple, "duplicate edge " + to_string(*dup));
  }

  adj_.assign(static_cast<std::size_t>(b_) + 1, {});
  for (const Edge& e : edges_) {
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
  }
  for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());

  std::vector<bool> seen(static_cast<std::size_t>(b_) + 1, false);
  std::vector<int> stack{1};
  seen[1] = true;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj_[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != b_) {
    throw Error(ErrorCode::Disconnected, "graph is not connected");
  }
  if (edges_.size() < static_cast<std::size_t>(b_)) {
    throw Error(ErrorCode::IsTree, "graph has " + std::to_string(edges_.size()) +
                                       " edges on " + std::to_string(b_) +
                                       " vertices; a cycle is required");
  }
}

bool UndirectedGraph::has_edge(int a, int b) const {
  if (a < 1 || a > b_ || b < 1 || b > b_) return false;
  return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
}

std::size_t UndirectedGraph::edge_index(const Edge& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) {
    throw Error(ErrorCode::InvalidArgument, "edge " + to_string(e) + " not in graph");
  }
  return static_cast<std::size_t>(it - edges_.begin());
}

std::vector<Edge> UndirectedGraph::incident_edges(int v) const {
  std::vector<Edge> out;
  for (const Edge& e : edges_) {
    if (e.touches(v)) out.push_back(e);
  }
  return out;
}

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool read_two(const std::string& line, long long& a, long long& b) {
  std::istringstream in(line);
  if (!(in >> a >> b)) return false;
  std::string rest;
  return !(in >> rest);
}

}  // namespace

UndirectedGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::vector<std::string> lines;
  while (std::getline(in, raw)) {
    std::string line = strip_comment(raw);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw Error(ErrorCode::ParseError, "empty graph document");

  long long b = 0;
  long long m = 0;
  if (!read_two(lines[0], b, m) || b < 1 || m < 0 ||
      b > std::numeric_limits<int>::max()) {
    throw Error(ErrorCode::ParseError, "header must be \"b m\" with b >= 1, m >= 0");
  }
  if (lines.size() - 1 != static_cast<std::size_t>(m)) {
    throw Error(ErrorCode::ParseError, "header announces " + std::to_string(m) +
                                           " edges but " +
                                           std::to_string(lines.size() - 1) +
                                           " edge lines follow");
  }
  std::vector<Edge> edges;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    long long i = 0;
    long long j = 0;
    if (!read_two(lines[k], i, j)) {
      throw Error(ErrorCode::ParseError, "malformed edge line: \"" + lines[k] + "\"");
    }
    if (i < 1 || j < 1 || i > b || j > b) {
      throw Error(ErrorCode::ParseError, "edge line \"" + lines[k] +
                                             "\" references a vertex outside 1.." +
                                             std::to_string(b));
    }
    edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  }
  return UndirectedGraph(static_cast<int>(b), std::move(edges));
}

UndirectedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read graph file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string format_graph(const UndirectedGraph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

bool CycleSubgraph::contains(int v) const {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

bool CycleSubgraph::contains(const Edge& e) const {
  return std::find(edges.begin(), edges.end(), e) != edges.end();
}

std::vector<int> CycleSubgraph::sorted_vertices() const {
  std::vector<int> out = vertices;
  std::sort(out.begin(), out.end());
  return out;
}

CycleSubgraph make_cycle(const std::vector<int>& order) {
  CycleSubgraph c;
  c.vertices = order;
  for (std::size_t k = 0; k < order.size(); ++k) {
    c.edges.emplace_back(order[k], order[(k + 1) % order.size()]);
  }
  std::sort(c.edges.begin(), c.edges.end());
  return c;
}

int girth(const UndirectedGraph& g) {
  const int b = g.vertex_count();
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(static_cast<std::size_t>(b) + 1);
  std::vector<int> parent(static_cast<std::size_t>(b) + 1);
  for (int root = 1; root <= b; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), 0);
    std::queue<int> q;
    dist[root] = 0;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          q.push(w);
        } else if (parent[v] != w) {
          best = std::min(best, dist[v] + dist[w] + 1);
        }
      }
    }
  }
  return best;
}

namespace {

// Enumerates simple cycles of exactly `length` vertices whose minimum vertex
// is `start`, reporting each as a path start -> ... (closing back to start).
void extend_cycles(const UndirectedGraph& g, int start, std::size_t length,
                   std::vector<int>& path, std::vector<bool>& on_path,
                   std::vector<std::vector<int>>& found) {
  int tail = path.back();
  if (path.size() == length) {
    if (g.has_edge(tail, start)) found.push_back(path);
    return;
  }
  for (int w : g.neighbors(tail)) {
    if (w <= start || on_path[w]) continue;
    on_path[w] = true;
    path.push_back(w);
    extend_cycles(g, start, length, path, on_path, found);
    path.pop_back();
    on_path[w] = false;
  }
}

}  // namespace

CycleSubgraph shortest_cycle(const UndirectedGraph& g) {
  const auto length = static_cast<std::size_t>(girth(g));
  for (int start = 1; start <= g.vertex_count(); ++start) {
    std::vector<std::vector<int>> found;
    std::vector<int> path{start};
    std::vector<bool> on_path(static_cast<std::size_t>(g.vertex_count()) + 1, false);
    on_path[start] = true;
    extend_cycles(g, start, length, path, on_path, found);
    if (found.empty()) continue;

    std::vector<int> best_order;
    std::vector<int> best_key;
    for (const auto& order : found) {
      std::vector<int> key = order;
      std::sort(key.begin(), key.end());
      if (best_key.empty() || key < best_key) {
        best_key = key;
        best_order = order;
      }
    }
    // best_order starts at the minimum vertex; fix the direction.
    if (best_order[1] > best_order.back()) {
      std::reverse(best_order.begin() + 1, best_order.end());
    }
    return make_cycle(best_order);
  }
  throw Error(ErrorCode::InvalidArgument, "graph has no cycle");
}

bool is_valid_shortest_cycle(const UndirectedGraph& g, const CycleSubgraph& c) {
  const auto& vs = c.vertices;
  if (vs.size() < 3 || static_cast<int>(vs.size()) != girth(g)) return false;
  std::set<int> distinct(vs.begin(), vs.end());
  if (distinct.size() != vs.size()) return false;
  if (*distinct.begin() < 1 || *distinct.rbegin() > g.vertex_count()) return false;
  if (make_cycle(vs).edges != c.edges) return false;
  for (const Edge& e : c.edges) {
    if (!g.has_edge(e.u, e.v)) return false;
  }
  for (int a : vs) {
    for (int b : vs) {
      if (a < b && g.has_edge(a, b) && !c.contains(Edge(a, b))) return false;
    }
  }
  return true;
}

std::vector<std::pair<int, int>> euler_tour(const UndirectedGraph& g) {
  for (int v = 1; v <= g.vertex_count(); ++v) {
    if (g.degree(v) % 2 != 0) {
      throw Error(ErrorCode::OddDegreeVertex,
                  "vertex " + std::to_string(v) + " has odd degree " +
                      std::to_string(g.degree(v)));
    }
  }
  std::vector<bool> used(g.edge_count(), false);
  std::vector<std::size_t> cursor(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  std::vector<int> stack{1};
  std::vector<int> circuit;
  while (!stack.empty()) {
    int v = stack.back();
    const auto& nbrs = g.neighbors(v);
    auto& pos = cursor[v];
    while (pos < nbrs.size() && used[g.edge_index(Edge(v, nbrs[pos]))]) ++pos;
    if (pos == nbrs.size()) {
      circuit.push_back(v);
      stack.pop_back();
    } else {
      int w = nbrs[pos];
      used[g.edge_index(Edge(v, w))] = true;
      stack.push_back(w);
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  std::vector<std::pair<int, int>> tour;
  for (std::size_t k = 0; k + 1 < circuit.size(); ++k) {
    tour.emplace_back(circuit[k], circuit[k + 1]);
  }
  return tour;
}

std::optional<std::vector<bool>> bipartition(const UndirectedGraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count()) + 1;
  std::vector<int> colour(n, -1);
  std::queue<int> q;
  colour[1] = 0;
  q.push(1);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : g.neighbors(v)) {
      if (colour[w] < 0) {
        colour[w] = 1 - colour[v];
        q.push(w);
      } else if (colour[w] == colour[v]) {
        return std::nullopt;
      }
    }
  }
  std::vector<bool> left(n, false);
  for (std::size_t v = 1; v < n; ++v) left[v] = colour[v] == 0;
  return left;
}

std::optional<BiregularBipartite> biregular_parameters(const UndirectedGraph& g) {
  auto left = bipartition(g);
  if (!left) return std::nullopt;
  BiregularBipartite p{0, 0, -1, -1};
  for (int v = 1; v <= g.vertex_count(); ++v) {
    int& n = (*left)[v] ? p.n_left : p.n_right;
    int& d = (*left)[v] ? p.d_left : p.d_right;
    ++n;
    if (d < 0) d = g.degree(v);
    if (d != g.degree(v)) return std::nullopt;
  }
  return p;
}

GraphClass classify(const UndirectedGraph& g) {
  const int k = g.degree(1);
  bool regular = true;
  for (int v = 2; v <= g.vertex_count(); ++v) regular = regular && g.degree(v) == k;
  if (regular) return Regular{k};
  if (auto p = biregular_parameters(g)) return *p;
  return General{};
}

std::string to_string(const GraphClass& c) {
  if (const auto* r = std::get_if<Regular>(&c)) {
    return "regular(" + std::to_string(r->k) + ")";
  }
  if (const auto* p = std::get_if<BiregularBipartite>(&c)) {
    return "biregular_bipartite(" + std::to_string(p->n_left) + ", " +
           std::to_string(p->n_right) + ", " + std::to_string(p->d_left) + ", " +
           std::to_string(p->d_right) + ")";
  }
  return "general";
}

}  // namespace sumnet
