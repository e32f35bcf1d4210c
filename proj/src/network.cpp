#include "sumnet/network.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

#include "sumnet/error.hpp"
#include "sumnet/maxflow.hpp"

namespace sumnet {

std::string to_string(const Rational& q) {
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Construction construction_from_int(int c) {
  if (c == 1) return Construction::one;
  if (c == 2) return Construction::two;
  throw Error(ErrorCode::InvalidArgument,
              "construction must be 1 or 2, got " + std::to_string(c));
}

std::string to_string(const Label& l) {
  switch (l.kind) {
    case Label::Kind::vertex: return std::to_string(l.vertex);
    case Label::Kind::edge: return to_string(l.edge);
    case Label::Kind::star: return "star";
  }
  return "?";
}

Label parse_label(const std::string& text) {
  if (text == "star") return Label::star();
  try {
    if (!text.empty() && text.front() == '(' && text.back() == ')') {
      auto comma = text.find(',');
      if (comma == std::string::npos) throw std::invalid_argument(text);
      std::size_t used_a = 0;
      std::size_t used_b = 0;
      std::string a = text.substr(1, comma - 1);
      std::string b = text.substr(comma + 1, text.size() - comma - 2);
      int u = std::stoi(a, &used_a);
      int v = std::stoi(b, &used_b);
      if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(text);
      return Label::of_edge(Edge(u, v));
    }
    std::size_t used = 0;
    int i = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return Label::of_vertex(i);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::ParseError, "malformed message label \"" + text + "\"");
  }
}

std::string to_string(const SourceId& s) { return "s_" + to_string(s.label); }
std::string to_string(const TerminalId& t) { return "t_" + to_string(t.label); }

std::string to_string(Role r) {
  switch (r) {
    case Role::source: return "source";
    case Role::tail: return "tail";
    case Role::head: return "head";
    case Role::terminal: return "terminal";
  }
  return "?";
}

std::string to_string(const NodeId& n) {
  switch (n.role) {
    case Role::source: return "s_" + to_string(n.label);
    case Role::terminal: return "t_" + to_string(n.label);
    case Role::tail: return "tail_" + to_string(n.label);
    case Role::head: return "head_" + to_string(n.label);
  }
  return "?";
}

NodeId parse_node_id(const std::string& text) {
  auto starts = [&](std::string_view prefix) { return text.rfind(prefix, 0) == 0; };
  if (starts("s_")) return {Role::source, parse_label(text.substr(2))};
  if (starts("t_")) return {Role::terminal, parse_label(text.substr(2))};
  if (starts("tail_")) return {Role::tail, parse_label(text.substr(5))};
  if (starts("head_")) return {Role::head, parse_label(text.substr(5))};
  throw Error(ErrorCode::ParseError, "malformed node id \"" + text + "\"");
}

namespace {

[[noreturn]] void invalid(const std::string& why) {
  throw Error(ErrorCode::InvalidNetwork, why);
}

std::vector<Label> message_labels(const UndirectedGraph& g, bool with_star) {
  std::vector<Label> out;
  for (int i = 1; i <= g.vertex_count(); ++i) out.push_back(Label::of_vertex(i));
  for (const Edge& e : g.edges()) out.push_back(Label::of_edge(e));
  if (with_star) out.push_back(Label::star());
  return out;
}

}  // namespace

SumNetwork::SumNetwork(Parts parts) : p_(std::move(parts)) {
  for (const Label& l : message_labels(p_.seed, p_.construction == Construction::two)) {
    sources_.push_back(SourceId{l});
  }
  for (const Label& l : message_labels(p_.seed, true)) terminals_.push_back(TerminalId{l});
  validate();
}

bool SumNetwork::has_star() const noexcept { return p_.construction == Construction::two; }

std::size_t SumNetwork::source_index(const SourceId& s) const {
  auto it = std::lower_bound(sources_.begin(), sources_.end(), s);
  if (it == sources_.end() || *it != s) {
    throw Error(ErrorCode::InvalidArgument, "unknown source " + to_string(s));
  }
  return static_cast<std::size_t>(it - sources_.begin());
}

std::vector<Arc> SumNetwork::arcs() const {
  std::vector<Arc> out;
  for (const Link& l : p_.links) {
    for (int k = 1; k <= p_.alpha; ++k) out.push_back({l.from, l.to, k});
  }
  return out;
}

bool SumNetwork::has_link(const NodeId& from, const NodeId& to) const {
  return p_.links.contains(Link{from, to});
}

std::vector<SourceId> SumNetwork::wired_sources(int i) const {
  std::vector<SourceId> out;
  for (const SourceId& s : sources_) {
    if (has_link(NodeId::source(s), NodeId::tail(i))) out.push_back(s);
  }
  return out;
}

std::vector<int> SumNetwork::feeding_bottlenecks(const TerminalId& t) const {
  std::vector<int> out;
  for (int i = 1; i <= bottleneck_count(); ++i) {
    if (has_link(NodeId::head(i), NodeId::terminal(t))) out.push_back(i);
  }
  return out;
}

std::vector<SourceId> SumNetwork::direct_sources(const TerminalId& t) const {
  std::vector<SourceId> out;
  for (const SourceId& s : sources_) {
    if (has_link(NodeId::source(s), NodeId::terminal(t))) out.push_back(s);
  }
  return out;
}

std::vector<NodeId> SumNetwork::nodes() const {
  std::vector<NodeId> out;
  for (const SourceId& s : sources_) out.push_back(NodeId::source(s));
  for (int i = 1; i <= bottleneck_count(); ++i) out.push_back(NodeId::tail(i));
  for (int i = 1; i <= bottleneck_count(); ++i) out.push_back(NodeId::head(i));
  for (const TerminalId& t : terminals_) out.push_back(NodeId::terminal(t));
  return out;
}

std::set<NodeId> SumNetwork::reachable_from(const NodeId& n) const {
  std::map<NodeId, std::vector<NodeId>> out_links;
  for (const Link& l : p_.links) out_links[l.from].push_back(l.to);
  std::set<NodeId> seen{n};
  std::vector<NodeId> stack{n};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (const NodeId& w : out_links[v]) {
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  return seen;
}

void SumNetwork::validate() const {
  const int b = bottleneck_count();
  if (p_.alpha < 1) invalid("edge capacity alpha must be >= 1");
  if (p_.a_sets.size() != static_cast<std::size_t>(b) + 1) {
    invalid("A sets must be given for every vertex 1.." + std::to_string(b));
  }
  if ((p_.construction == Construction::two) != p_.cycle.has_value()) {
    invalid("a cycle is present iff construction 2 is used");
  }
  if (p_.cycle && !is_valid_shortest_cycle(p_.seed, *p_.cycle)) {
    throw Error(ErrorCode::InvalidCycle, "cycle is not a chordless minimum cycle");
  }

  const auto all_nodes = nodes();
  const std::set<NodeId> known(all_nodes.begin(), all_nodes.end());
  std::map<NodeId, int> indegree;
  std::map<NodeId, std::vector<NodeId>> out_links;
  for (const Link& l : p_.links) {
    if (!known.contains(l.from) || !known.contains(l.to)) {
      invalid("link " + to_string(l.from) + " -> " + to_string(l.to) +
              " references an unknown node");
    }
    if (l.to.role == Role::source) invalid("source " + to_string(l.to) + " has an incoming edge");
    if (l.from.role == Role::terminal) {
      invalid("terminal " + to_string(l.from) + " has an outgoing edge");
    }
    ++indegree[l.to];
    out_links[l.from].push_back(l.to);
  }

  for (int i = 1; i <= b; ++i) {
    if (!has_link(NodeId::tail(i), NodeId::head(i))) {
      invalid("bottleneck e_" + std::to_string(i) + " is missing");
    }
    for (const SourceId& s : p_.a_sets[i]) {
      if (!std::binary_search(sources_.begin(), sources_.end(), s)) {
        invalid("A_" + std::to_string(i) + " names unknown source " + to_string(s));
      }
    }
    for (const SourceId& s : sources_) {
      if (has_link(NodeId::source(s), NodeId::tail(i)) != p_.a_sets[i].contains(s)) {
        invalid("wiring of " + to_string(s) + " into e_" + std::to_string(i) +
                " disagrees with A_" + std::to_string(i));
      }
    }
  }

  // Kahn's algorithm over the link graph.
  std::queue<NodeId> ready;
  for (const NodeId& n : all_nodes) {
    if (indegree[n] == 0) ready.push(n);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    NodeId v = ready.front();
    ready.pop();
    ++visited;
    for (const NodeId& w : out_links[v]) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (visited != all_nodes.size()) invalid("network contains a directed cycle");

  for (const SourceId& s : sources_) {
    auto reach = reachable_from(NodeId::source(s));
    for (const TerminalId& t : terminals_) {
      if (!reach.contains(NodeId::terminal(t))) {
        invalid("no path from " + to_string(s) + " to " + to_string(t));
      }
    }
  }
}

SumNetwork SumNetwork::with_extra_wiring(const SourceId& s, int i) const {
  Parts parts = p_;
  parts.a_sets.at(i).insert(s);
  parts.links.insert(Link{NodeId::source(s), NodeId::tail(i)});
  // Terminals now reached through e_i no longer need a direct edge from s.
  std::set<NodeId> via_bottleneck;
  for (const TerminalId& t : terminals_) {
    if (has_link(NodeId::head(i), NodeId::terminal(t))) {
      via_bottleneck.insert(NodeId::terminal(t));
    }
  }
  for (const NodeId& t : via_bottleneck) parts.links.erase(Link{NodeId::source(s), t});
  return SumNetwork(std::move(parts));
}

SumNetwork build_sum_network(const UndirectedGraph& g, Construction c, int alpha,
                             std::optional<CycleSubgraph> cycle) {
  if (alpha < 1) throw Error(ErrorCode::InvalidArgument, "alpha must be >= 1");
  if (c == Construction::one && cycle) {
    throw Error(ErrorCode::InvalidArgument, "construction 1 does not use a cycle");
  }
  if (c == Construction::two) {
    if (!cycle) {
      cycle = shortest_cycle(g);
    } else if (!is_valid_shortest_cycle(g, *cycle)) {
      throw Error(ErrorCode::InvalidCycle, "supplied cycle is not a chordless minimum cycle");
    }
  }

  const int b = g.vertex_count();
  const SourceId star{Label::star()};
  std::vector<std::set<SourceId>> a_sets(static_cast<std::size_t>(b) + 1);
  for (int i = 1; i <= b; ++i) {
    a_sets[i].insert(SourceId{Label::of_vertex(i)});
    for (const Edge& e : g.incident_edges(i)) a_sets[i].insert(SourceId{Label::of_edge(e)});
    if (cycle && cycle->contains(i)) a_sets[i].insert(star);
  }

  std::vector<SourceId> plain_sources;
  for (int i = 1; i <= b; ++i) plain_sources.push_back(SourceId{Label::of_vertex(i)});
  for (const Edge& e : g.edges()) plain_sources.push_back(SourceId{Label::of_edge(e)});

  std::set<Link> links;
  // Sources into bottleneck tails, bottlenecks, heads into terminals.
  for (int j = 1; j <= b; ++j) {
    for (const SourceId& s : a_sets[j]) links.insert({NodeId::source(s), NodeId::tail(j)});
    links.insert({NodeId::tail(j), NodeId::head(j)});
    links.insert({NodeId::head(j), NodeId::terminal(TerminalId{Label::of_vertex(j)})});
    for (const Edge& e : g.incident_edges(j)) {
      links.insert({NodeId::head(j), NodeId::terminal(TerminalId{Label::of_edge(e)})});
    }
    links.insert({NodeId::head(j), NodeId::terminal(TerminalId{Label::star()})});
  }

  // Direct edges: t_j gets A_j^c, t_(i,j) gets A_i^c intersected with A_j^c.
  for (const SourceId& s : plain_sources) {
    for (int j = 1; j <= b; ++j) {
      if (!a_sets[j].contains(s)) {
        links.insert({NodeId::source(s), NodeId::terminal(TerminalId{Label::of_vertex(j)})});
      }
    }
    for (const Edge& e : g.edges()) {
      if (!a_sets[e.u].contains(s) && !a_sets[e.v].contains(s)) {
        links.insert({NodeId::source(s), NodeId::terminal(TerminalId{Label::of_edge(e)})});
      }
    }
  }

  if (c == Construction::two) {
    std::set<NodeId> reached{NodeId::source(star)};
    for (int i = 1; i <= b; ++i) {
      if (!a_sets[i].contains(star)) continue;
      reached.insert(NodeId::head(i));
      for (const Link& l : links) {
        if (l.from == NodeId::head(i)) reached.insert(l.to);
      }
    }
    std::vector<Label> terminal_labels = message_labels(g, true);
    for (const Label& l : terminal_labels) {
      NodeId t = NodeId::terminal(TerminalId{l});
      if (!reached.contains(t)) links.insert({NodeId::source(star), t});
    }
  }

  return SumNetwork(SumNetwork::Parts{g, c, alpha, std::move(cycle), std::move(a_sets),
                                      std::move(links)});
}

Rational capacity_upper_bound(const UndirectedGraph& g, Construction c, int alpha) {
  if (alpha < 1) throw Error(ErrorCode::InvalidArgument, "alpha must be >= 1");
  const auto b = static_cast<std::int64_t>(g.vertex_count());
  const auto m = static_cast<std::int64_t>(g.edge_count());
  const std::int64_t denom = b + m + (c == Construction::two ? 1 : 0);
  return Rational(alpha * b, denom);
}

std::int64_t min_cut(const SumNetwork& net, const TerminalId& t) {
  const auto all = net.nodes();
  std::map<NodeId, int> index;
  for (const NodeId& n : all) index.emplace(n, static_cast<int>(index.size()));
  MaxFlow flow(static_cast<int>(all.size()));
  const int super = flow.add_node();

  const auto arcs = net.arcs();
  const auto unbounded = static_cast<std::int64_t>(arcs.size()) + 1;
  for (const SourceId& s : net.sources()) {
    flow.add_edge(super, index.at(NodeId::source(s)), unbounded);
  }
  for (const Arc& a : arcs) flow.add_edge(index.at(a.from), index.at(a.to), 1);
  return flow.run(super, index.at(NodeId::terminal(t)));
}

namespace {

std::string quoted(const NodeId& n) { return "\"" + to_string(n) + "\""; }

}  // namespace

std::string export_dot(const SumNetwork& net) {
  std::ostringstream out;
  const int b = net.bottleneck_count();
  out << "digraph sum_network {\n";
  out << "  rankdir=TB;\n";
  out << "  subgraph cluster_sources {\n    label=\"S\";\n";
  for (const SourceId& s : net.sources()) {
    out << "    " << quoted(NodeId::source(s)) << " [shape=invtriangle];\n";
  }
  out << "  }\n";
  out << "  subgraph cluster_bottlenecks {\n    label=\"bottlenecks\";\n";
  for (int i = 1; i <= b; ++i) {
    out << "    " << quoted(NodeId::tail(i)) << " [shape=point];\n";
    out << "    " << quoted(NodeId::head(i)) << " [shape=point];\n";
  }
  out << "  }\n";
  out << "  subgraph cluster_terminals {\n    label=\"T\";\n";
  for (const TerminalId& t : net.terminals()) {
    out << "    " << quoted(NodeId::terminal(t)) << " [shape=doublecircle];\n";
  }
  out << "  }\n";
  for (const Arc& a : net.arcs()) {
    out << "  " << quoted(a.from) << " -> " << quoted(a.to);
    if (a.from.role == Role::tail) {
      out << " [label=\"e_" << a.from.label.vertex
          << (net.alpha() > 1 ? "," + std::to_string(a.index) : "") << "\", penwidth=2]";
    } else if (a.from.role == Role::source && a.to.role == Role::terminal) {
      out << " [style=dashed]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace sumnet
