#pragma once

// Sum-network construction from a seed graph, capacity upper bounds and
// min-cut checks.

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "sumnet/graph.hpp"

namespace sumnet {

using Rational = boost::rational<std::int64_t>;
std::string to_string(const Rational& q);  // "num/den", lowest terms

enum class Construction { one = 1, two = 2 };
Construction construction_from_int(int c);  // throws InvalidArgument

// Names a message: a seed vertex, a seed edge, or the starred message.
// Ordering follows the stacked layout: vertices, then edges, then star.
struct Label {
  enum class Kind { vertex = 0, edge = 1, star = 2 };

  Kind kind = Kind::vertex;
  int vertex = 0;
  Edge edge{};

  static Label of_vertex(int i) { return {Kind::vertex, i, Edge{}}; }
  static Label of_edge(Edge e) { return {Kind::edge, 0, e}; }
  static Label star() { return {Kind::star, 0, Edge{}}; }

  friend auto operator<=>(const Label&, const Label&) = default;
  friend bool operator==(const Label&, const Label&) = default;
};
std::string to_string(const Label& l);  // "1", "(1,2)", "star"
Label parse_label(const std::string& text);

struct SourceId {
  Label label;
  friend auto operator<=>(const SourceId&, const SourceId&) = default;
  friend bool operator==(const SourceId&, const SourceId&) = default;
};
struct TerminalId {
  Label label;
  friend auto operator<=>(const TerminalId&, const TerminalId&) = default;
  friend bool operator==(const TerminalId&, const TerminalId&) = default;
};
std::string to_string(const SourceId& s);    // "s_1", "s_(1,2)", "s_star"
std::string to_string(const TerminalId& t);  // "t_1", "t_(1,2)", "t_star"

enum class Role { source = 0, tail = 1, head = 2, terminal = 3 };

// Structured node identifier; tail/head nodes carry the bottleneck's vertex.
struct NodeId {
  Role role = Role::source;
  Label label;

  static NodeId source(const SourceId& s) { return {Role::source, s.label}; }
  static NodeId terminal(const TerminalId& t) { return {Role::terminal, t.label}; }
  static NodeId tail(int i) { return {Role::tail, Label::of_vertex(i)}; }
  static NodeId head(int i) { return {Role::head, Label::of_vertex(i)}; }

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
  friend bool operator==(const NodeId&, const NodeId&) = default;
};
std::string to_string(const NodeId& n);  // "s_1", "tail_2", "head_2", "t_star"
NodeId parse_node_id(const std::string& text);
std::string to_string(Role r);

// A capacity-alpha connection; it stands for alpha unit arcs indexed 1..alpha.
struct Link {
  NodeId from;
  NodeId to;
  friend auto operator<=>(const Link&, const Link&) = default;
  friend bool operator==(const Link&, const Link&) = default;
};

struct Arc {
  NodeId from;
  NodeId to;
  int index;  // 1..alpha
};

class SumNetwork {
 public:
  struct Parts {
    UndirectedGraph seed;
    Construction construction;
    int alpha;
    std::optional<CycleSubgraph> cycle;
    std::vector<std::set<SourceId>> a_sets;  // index 1..b, slot 0 unused
    std::set<Link> links;
  };

  // Checks structural invariants; throws InvalidNetwork.
  explicit SumNetwork(Parts parts);

  [[nodiscard]] const UndirectedGraph& seed() const noexcept { return p_.seed; }
  [[nodiscard]] Construction construction() const noexcept { return p_.construction; }
  [[nodiscard]] int alpha() const noexcept { return p_.alpha; }
  [[nodiscard]] const std::optional<CycleSubgraph>& cycle() const noexcept { return p_.cycle; }
  [[nodiscard]] int bottleneck_count() const noexcept { return p_.seed.vertex_count(); }

  // Stacked order: X_1..X_b, edges canonically, then X_star.
  [[nodiscard]] const std::vector<SourceId>& sources() const noexcept { return sources_; }
  [[nodiscard]] const std::vector<TerminalId>& terminals() const noexcept { return terminals_; }
  [[nodiscard]] bool has_star() const noexcept;
  // Position of s in the stacked layout; throws InvalidArgument.
  [[nodiscard]] std::size_t source_index(const SourceId& s) const;

  [[nodiscard]] const std::set<SourceId>& a_set(int i) const { return p_.a_sets.at(i); }
  [[nodiscard]] const std::set<Link>& links() const noexcept { return p_.links; }
  // Every unit arc, alpha per link.
  [[nodiscard]] std::vector<Arc> arcs() const;
  [[nodiscard]] bool has_link(const NodeId& from, const NodeId& to) const;

  // Sources wired into tail(e_i).
  [[nodiscard]] std::vector<SourceId> wired_sources(int i) const;
  // Bottlenecks whose head feeds t, ascending.
  [[nodiscard]] std::vector<int> feeding_bottlenecks(const TerminalId& t) const;
  // Sources with a direct edge to t, stacked order.
  [[nodiscard]] std::vector<SourceId> direct_sources(const TerminalId& t) const;

  // Sources, tails, heads, terminals; a topological order of the DAG.
  [[nodiscard]] std::vector<NodeId> nodes() const;
  [[nodiscard]] std::set<NodeId> reachable_from(const NodeId& n) const;

  // Adds the wiring s -> tail(e_i), extends A_i, and drops direct edges from s
  // to terminals that the new wiring reaches.
  [[nodiscard]] SumNetwork with_extra_wiring(const SourceId& s, int i) const;

  friend bool operator==(const SumNetwork& a, const SumNetwork& b) {
    return a.p_.seed == b.p_.seed && a.p_.construction == b.p_.construction &&
           a.p_.alpha == b.p_.alpha && a.p_.cycle == b.p_.cycle &&
           a.p_.a_sets == b.p_.a_sets && a.p_.links == b.p_.links;
  }

 private:
  void validate() const;

  Parts p_;
  std::vector<SourceId> sources_;
  std::vector<TerminalId> terminals_;
};

// Construction 2 defaults the cycle to shortest_cycle(g); a supplied cycle
// must be a chordless minimum cycle (InvalidCycle otherwise).
SumNetwork build_sum_network(const UndirectedGraph& g, Construction c, int alpha,
                             std::optional<CycleSubgraph> cycle = std::nullopt);

// alpha*b/(b+|E|) for construction 1, alpha*b/(b+|E|+1) for construction 2.
Rational capacity_upper_bound(const UndirectedGraph& g, Construction c, int alpha);

// Minimum cut between a super-source joined to every source and terminal t.
std::int64_t min_cut(const SumNetwork& net, const TerminalId& t);

std::string export_dot(const SumNetwork& net);

}  // namespace sumnet
