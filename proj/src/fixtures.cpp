#include "sumnet/fixtures.hpp"

#include <array>

#include "sumnet/error.hpp"

namespace sumnet {

UndirectedGraph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) edges.emplace_back(i, j);
  }
  return UndirectedGraph(n, std::move(edges));
}

UndirectedGraph complete_bipartite(int a, int c) {
  std::vector<Edge> edges;
  for (int i = 1; i <= a; ++i) {
    for (int j = a + 1; j <= a + c; ++j) edges.emplace_back(i, j);
  }
  return UndirectedGraph(a + c, std::move(edges));
}

UndirectedGraph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) edges.emplace_back(i, i % n + 1);
  return UndirectedGraph(n, std::move(edges));
}

UndirectedGraph petersen_graph() {
  std::vector<Edge> edges;
  for (int i = 1; i <= 5; ++i) {
    edges.emplace_back(i, i % 5 + 1);
    edges.emplace_back(i, i + 5);
  }
  for (auto [a, b] : {std::pair{6, 8}, {8, 10}, {10, 7}, {7, 9}, {9, 6}}) edges.emplace_back(a, b);
  return UndirectedGraph(10, std::move(edges));
}

UndirectedGraph diamond_graph() {
  return UndirectedGraph(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {3, 4}});
}

FeasAssignment k3_example_assignment() {
  FeasAssignment a;
  a.construction = Construction::one;
  a.m[Edge(1, 2)] = {1, 2};
  a.m[Edge(1, 3)] = {2, 1};
  a.m[Edge(2, 3)] = {1, 2};
  return a;
}

FeasAssignment petersen_reference_assignment() {
  const UndirectedGraph g = petersen_graph();
  auto on_cycle = [](int v) { return v <= 5; };
  FeasAssignment a;
  a.construction = Construction::two;
  for (const Edge& e : g.edges()) {
    if (on_cycle(e.u) == on_cycle(e.v)) {
      a.m[e] = {5, 5};
    } else {
      a.m[e] = {on_cycle(e.u) ? 4 : 6, on_cycle(e.v) ? 4 : 6};
    }
  }
  for (int i = 1; i <= 5; ++i) a.w[i] = 2;
  return a;
}

SumNetwork build_star_wired_network() {
  const SumNetwork base =
      build_sum_network(diamond_graph(), Construction::two, 1, make_cycle({1, 2, 3}));
  return base.with_extra_wiring(SourceId{Label::star()}, 4);
}

std::string to_string(StarCodeVariant v) {
  return v == StarCodeVariant::char2 ? "char2" : "general";
}

namespace {

struct Piece {
  Edge edge;
  std::size_t coord;
};

constexpr std::size_t kWidth = 4;

// Rows 5..9 of each bottleneck: component `coord` of X_edge + X_star.
const std::array<std::array<Piece, 5>, 4>& piece_table() {
  static const std::array<std::array<Piece, 5>, 4> table{{
      {{{{1, 3}, 0}, {{1, 3}, 1}, {{1, 4}, 0}, {{1, 4}, 1}, {{1, 4}, 2}}},
      {{{{1, 2}, 0}, {{1, 2}, 1}, {{1, 2}, 2}, {{1, 2}, 3}, {{2, 3}, 0}}},
      {{{{1, 3}, 2}, {{1, 3}, 3}, {{2, 3}, 1}, {{2, 3}, 2}, {{2, 3}, 3}}},
      {{{{1, 4}, 3}, {{3, 4}, 0}, {{3, 4}, 1}, {{3, 4}, 2}, {{3, 4}, 3}}},
  }};
  return table;
}

const SourceId kStar{Label::star()};

// Register X_e + X_star gathered from the pieces on e's endpoints.
std::size_t piece_register(PlanBuilder& pb, const Edge& e, std::size_t l) {
  const std::size_t reg = pb.step("X_" + to_string(e) + "+X_star");
  for (int x : {e.u, e.v}) {
    const auto& pieces = piece_table()[static_cast<std::size_t>(x - 1)];
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      if (pieces[k].edge == e) pb.add_input(reg, pb.bottleneck(x, l), kWidth + k, pieces[k].coord, 1, 1);
    }
  }
  return reg;
}

void add_directs(PlanBuilder& pb, const SumNetwork& net, std::size_t out, const TerminalId& t) {
  for (const SourceId& s : net.direct_sources(t)) pb.add_input(out, pb.direct(s, kWidth), 0, 0, kWidth, 1);
}

DecodingPlan star_plan(const SumNetwork& net, StarCodeVariant v, const Field& f, std::size_t l) {
  const UndirectedGraph& g = net.seed();
  const Elem minus_one = f.neg(1);
  PlanBuilder pb(kWidth);
  for (int i = 1; i <= 4; ++i) pb.bottleneck(i, l);

  if (v == StarCodeVariant::char2) {
    std::vector<std::size_t> pieces;
    for (const Edge& e : g.edges()) pieces.push_back(piece_register(pb, e, l));
    const std::size_t out = pb.step("sum");
    for (int i = 1; i <= 4; ++i) pb.add_input(out, pb.bottleneck(i, l), 0, 0, kWidth, 1);
    for (std::size_t reg : pieces) pb.add_step(out, reg, 1);
    add_directs(pb, net, out, TerminalId{Label::star()});
    return pb.finish(out);
  }

  const std::size_t star = pb.step("X_star");
  for (int i = 1; i <= 4; ++i) {
    pb.add_input(star, pb.bottleneck(i, l), 9, static_cast<std::size_t>(i - 1), 1, 1);
  }
  std::map<Edge, std::size_t> edge_reg;
  for (const Edge& e : g.edges()) {
    const std::size_t combined = piece_register(pb, e, l);
    const std::size_t plain = pb.step("X_" + to_string(e));
    pb.add_step(plain, combined, 1);
    pb.add_step(plain, star, minus_one);
    edge_reg[e] = plain;
  }
  std::vector<std::size_t> vertex_reg;
  for (int i = 1; i <= 4; ++i) {
    const std::size_t reg = pb.step("X_" + std::to_string(i));
    pb.add_input(reg, pb.bottleneck(i, l), 0, 0, kWidth, 1);
    for (const Edge& e : g.incident_edges(i)) pb.add_step(reg, edge_reg.at(e), minus_one);
    pb.add_step(reg, star, minus_one);
    vertex_reg.push_back(reg);
  }
  const std::size_t out = pb.step("sum");
  for (std::size_t reg : vertex_reg) pb.add_step(out, reg, 1);
  for (const auto& [e, reg] : edge_reg) pb.add_step(out, reg, 1);
  pb.add_step(out, star, 1);
  add_directs(pb, net, out, TerminalId{Label::star()});
  return pb.finish(out);
}

}  // namespace

LinearCode star_wired_code(StarCodeVariant v, const Field& f, bool enforce_characteristic) {
  if (enforce_characteristic) {
    const bool is_two = f.characteristic() == 2;
    if (v == StarCodeVariant::char2 && !is_two) {
      throw Error(ErrorCode::CharacteristicMismatch, "the 4/9 code needs characteristic 2");
    }
    if (v == StarCodeVariant::general && is_two) {
      throw Error(ErrorCode::CharacteristicMismatch, "the 4/10 code needs characteristic other than 2");
    }
  }
  const SumNetwork net = build_star_wired_network();
  const UndirectedGraph& g = net.seed();
  const std::size_t l = v == StarCodeVariant::char2 ? 9 : 10;

  LinearCode code{f, static_cast<int>(kWidth), static_cast<int>(l), 1, Construction::two,
                  g.edges(), net.sources(), {}, {}};

  for (int i = 1; i <= 4; ++i) {
    FieldMatrix enc(f, l, code.stacked_length());
    for (const SourceId& s : net.a_set(i)) {
      for (std::size_t c = 0; c < kWidth; ++c) enc.set(c, code.column(s, c), 1);
    }
    const auto& pieces = piece_table()[static_cast<std::size_t>(i - 1)];
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      enc.set(kWidth + k, code.column(SourceId{Label::of_edge(pieces[k].edge)}, pieces[k].coord), 1);
      enc.set(kWidth + k, code.column(kStar, pieces[k].coord), 1);
    }
    if (v == StarCodeVariant::general) {
      enc.set(9, code.column(kStar, static_cast<std::size_t>(i - 1)), 1);
    }
    code.encoders.emplace(i, std::move(enc));
  }

  const Elem minus_one = f.neg(1);
  for (const TerminalId& t : net.terminals()) {
    PlanBuilder pb(kWidth);
    for (int i : net.feeding_bottlenecks(t)) pb.bottleneck(i, l);
    for (const SourceId& s : net.direct_sources(t)) pb.direct(s, kWidth);
    switch (t.label.kind) {
      case Label::Kind::vertex: {
        const std::size_t out = pb.step("sum");
        pb.add_input(out, pb.bottleneck(t.label.vertex, l), 0, 0, kWidth, 1);
        add_directs(pb, net, out, t);
        code.decoders.emplace(t, pb.finish(out));
        break;
      }
      case Label::Kind::edge: {
        const Edge& e = t.label.edge;
        const std::size_t overlap = piece_register(pb, e, l);
        const std::size_t out = pb.step("sum");
        pb.add_input(out, pb.bottleneck(e.u, l), 0, 0, kWidth, 1);
        pb.add_input(out, pb.bottleneck(e.v, l), 0, 0, kWidth, 1);
        pb.add_step(out, overlap, minus_one);
        add_directs(pb, net, out, t);
        code.decoders.emplace(t, pb.finish(out));
        break;
      }
      case Label::Kind::star:
        code.decoders.emplace(t, star_plan(net, v, f, l));
        break;
    }
  }
  return code;
}

std::vector<NamedExample> named_examples() {
  return {
      {"K5-construction1", complete_graph(5), Construction::one, Rational(1, 3)},
      {"diamond-construction2", diamond_graph(), Construction::two, Rational(2, 5)},
      {"petersen-construction2", petersen_graph(), Construction::two, Rational(5, 13)},
      {"K3,5-construction1", complete_bipartite(3, 5), Construction::one, Rational(8, 23)},
  };
}

}  // namespace sumnet
