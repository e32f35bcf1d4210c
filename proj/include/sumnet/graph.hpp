#pragma once

// Undirected seed graphs: parsing, validation, shortest cycles, Euler tours
// and regular / biregular-bipartite classification.

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace sumnet {

// Unordered vertex pair stored with u < v. Vertices are 1-based.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  [[nodiscard]] bool touches(int x) const noexcept { return u == x || v == x; }
  [[nodiscard]] int other(int x) const noexcept { return x == u ? v : u; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

std::string to_string(const Edge& e);  // "(u,v)"

// Simple, connected, non-tree undirected graph on vertices 1..b.
// Edges are kept in canonical (lexicographic) order.
class UndirectedGraph {
 public:
  // Validates all invariants; throws NotSimple, Disconnected, IsTree or
  // ParseError (vertex out of range).
  UndirectedGraph(int vertex_count, std::vector<Edge> edges);

  [[nodiscard]] int vertex_count() const noexcept { return b_; }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  [[nodiscard]] const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
  [[nodiscard]] int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }
  [[nodiscard]] bool has_edge(int a, int b) const;
  // Position of `e` in the canonical edge order; throws InvalidArgument if absent.
  [[nodiscard]] std::size_t edge_index(const Edge& e) const;
  // Edges incident to v, in canonical order.
  [[nodiscard]] std::vector<Edge> incident_edges(int v) const;

  friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
    return a.b_ == b.b_ && a.edges_ == b.edges_;
  }

 private:
  int b_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;  // index 0 unused; neighbors sorted
};

// Edge-list text: "b m" header, then m lines "i j". '#' starts a comment.
UndirectedGraph parse_graph(std::string_view text);
UndirectedGraph load_graph(const std::string& path);
std::string format_graph(const UndirectedGraph& g);

struct CycleSubgraph {
  std::vector<int> vertices;  // cycle order
  std::vector<Edge> edges;    // canonical order

  [[nodiscard]] std::size_t length() const noexcept { return vertices.size(); }
  [[nodiscard]] bool contains(int v) const;
  [[nodiscard]] bool contains(const Edge& e) const;
  // Vertices in increasing order.
  [[nodiscard]] std::vector<int> sorted_vertices() const;

  friend bool operator==(const CycleSubgraph&, const CycleSubgraph&) = default;
};

// Builds a cycle from its vertices in cycle order.
CycleSubgraph make_cycle(const std::vector<int>& order);

int girth(const UndirectedGraph& g);

// Minimum-length cycle whose sorted vertex list is lexicographically
// smallest, oriented smallest vertex first then its smaller cycle neighbour.
CycleSubgraph shortest_cycle(const UndirectedGraph& g);

// True iff `c` is a cycle of g of length girth(g) with no chords.
bool is_valid_shortest_cycle(const UndirectedGraph& g, const CycleSubgraph& c);

// Closed trail from vertex 1 covering every edge once, as (from, to) pairs.
// Throws OddDegreeVertex.
std::vector<std::pair<int, int>> euler_tour(const UndirectedGraph& g);

struct Regular {
  int k;
  friend bool operator==(const Regular&, const Regular&) = default;
};
struct BiregularBipartite {
  int n_left;
  int n_right;
  int d_left;
  int d_right;
  friend bool operator==(const BiregularBipartite&, const BiregularBipartite&) = default;
};
struct General {
  friend bool operator==(const General&, const General&) = default;
};
using GraphClass = std::variant<Regular, BiregularBipartite, General>;

// 2-colouring with vertex 1 on the left; nullopt if g has an odd cycle.
// Entry v is true for left vertices (index 0 unused).
std::optional<std::vector<bool>> bipartition(const UndirectedGraph& g);

// Biregular parameters of the bipartition, whether or not g is also regular.
std::optional<BiregularBipartite> biregular_parameters(const UndirectedGraph& g);

// Regular is preferred when both apply.
GraphClass classify(const UndirectedGraph& g);
std::string to_string(const GraphClass& c);

}  // namespace sumnet
