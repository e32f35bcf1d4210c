#include "sumnet/codegen.hpp"

#include <algorithm>
#include <iterator>
#include <optional>
#include <set>

#include "sumnet/error.hpp"

namespace sumnet {

std::size_t LinearCode::column(const SourceId& s, std::size_t coord) const {
  auto it = std::find(layout.begin(), layout.end(), s);
  if (it == layout.end()) {
    throw Error(ErrorCode::InvalidArgument, "message " + to_string(s) + " not in layout");
  }
  return static_cast<std::size_t>(it - layout.begin()) * message_width() + coord;
}

namespace {

SourceId vertex_source(int i) { return SourceId{Label::of_vertex(i)}; }
SourceId edge_source(const Edge& e) { return SourceId{Label::of_edge(e)}; }
const SourceId kStar{Label::star()};

std::string message_name(const SourceId& s) { return "X_" + to_string(s.label); }

// Row positions of each block inside one bottleneck's encoder.
struct BlockLayout {
  std::map<Edge, std::size_t> edge_row;
  std::size_t star_row = 0;
};

class Synthesizer {
 public:
  Synthesizer(const SumNetwork& net, FeasAssignment a, const Field& f)
      : net_(net),
        g_(net.seed()),
        a_(std::move(a)),
        cycle_(net.cycle() ? &*net.cycle() : nullptr),
        r_(static_cast<std::size_t>(g_.vertex_count())),
        code_{f, g_.vertex_count(),
              g_.vertex_count() + static_cast<int>(g_.edge_count()) +
                  (net.construction() == Construction::two ? 1 : 0),
              1, net.construction(), g_.edges(), net.sources(), {}, {}} {
    l_ = static_cast<std::size_t>(code_.l);
  }

  LinearCode run() {
    for (int i = 1; i <= g_.vertex_count(); ++i) code_.encoders.emplace(i, encoder(i));
    for (const TerminalId& t : net_.terminals()) code_.decoders.emplace(t, decoder(t));
    return std::move(code_);
  }

 private:
  // First coordinate of X_e carried by vertex i's block for e.
  std::size_t coord_begin(const Edge& e, int i) const {
    return i < e.other(i) ? 0 : r_ - static_cast<std::size_t>(a_.at(e, i));
  }

  bool carries_star(const Edge& e) const { return cycle_ != nullptr && cycle_->contains(e); }

  std::size_t star_offset(int i) const {
    std::size_t gamma = 0;
    for (const auto& [j, wj] : a_.w) {
      if (j < i) gamma += static_cast<std::size_t>(wj);
    }
    return gamma;
  }

  FieldMatrix encoder(int i) {
    FieldMatrix enc(code_.field, l_, code_.stacked_length());
    for (const SourceId& s : net_.a_set(i)) {
      for (std::size_t c = 0; c < r_; ++c) enc.set(c, code_.column(s, c), 1);
    }
    BlockLayout& blocks = layout_[i];
    std::size_t row = r_;
    for (const Edge& e : g_.incident_edges(i)) {
      blocks.edge_row[e] = row;
      const auto m = static_cast<std::size_t>(a_.at(e, i));
      const std::size_t begin = coord_begin(e, i);
      for (std::size_t t = 0; t < m; ++t) {
        enc.set(row + t, code_.column(edge_source(e), begin + t), 1);
        if (carries_star(e)) enc.set(row + t, code_.column(kStar, begin + t), 1);
      }
      row += m;
    }
    blocks.star_row = row;
    if (auto w = a_.w.find(i); w != a_.w.end()) {
      const std::size_t gamma = star_offset(i);
      for (std::size_t t = 0; t < static_cast<std::size_t>(w->second); ++t) {
        enc.set(row + t, code_.column(kStar, gamma + t), 1);
      }
      row += static_cast<std::size_t>(w->second);
    }
    if (row > l_) {
      throw Error(ErrorCode::InfeasibleAssignment,
                  "encoder for e_" + std::to_string(i) + " needs " + std::to_string(row) +
                      " rows but l = " + std::to_string(l_));
    }
    return enc;
  }

  // Register holding X_e (plus X_star on cycle edges) assembled from the two
  // endpoint blocks.
  std::size_t edge_register(PlanBuilder& pb, const Edge& e) {
    const std::size_t reg = pb.step(carries_star(e) ? message_name(edge_source(e)) + "+X_star"
                                                    : message_name(edge_source(e)));
    for (int x : {e.u, e.v}) {
      const std::size_t in = pb.bottleneck(x, l_);
      pb.add_input(reg, in, layout_.at(x).edge_row.at(e), coord_begin(e, x),
                   static_cast<std::size_t>(a_.at(e, x)), 1);
    }
    return reg;
  }

  void add_directs(PlanBuilder& pb, std::size_t out, const TerminalId& t) {
    for (const SourceId& s : net_.direct_sources(t)) {
      pb.add_input(out, pb.direct(s, r_), 0, 0, r_, 1);
    }
  }

  DecodingPlan decoder(const TerminalId& t) {
    const Field& f = code_.field;
    const Elem minus_one = f.neg(1);
    PlanBuilder pb(r_);
    for (int i : net_.feeding_bottlenecks(t)) pb.bottleneck(i, l_);
    for (const SourceId& s : net_.direct_sources(t)) pb.direct(s, r_);

    switch (t.label.kind) {
      case Label::Kind::vertex: {
        const int i = t.label.vertex;
        const std::size_t out = pb.step("sum");
        pb.add_input(out, pb.bottleneck(i, l_), 0, 0, r_, 1);
        add_directs(pb, out, t);
        return pb.finish(out);
      }
      case Label::Kind::edge: {
        const Edge& e = t.label.edge;
        std::set<SourceId> shared;
        std::set_intersection(net_.a_set(e.u).begin(), net_.a_set(e.u).end(),
                              net_.a_set(e.v).begin(), net_.a_set(e.v).end(),
                              std::inserter(shared, shared.begin()));
        std::set<SourceId> expected{edge_source(e)};
        if (carries_star(e)) expected.insert(kStar);
        if (shared != expected) {
          throw Error(ErrorCode::InvalidNetwork,
                      "A_" + std::to_string(e.u) + " and A_" + std::to_string(e.v) +
                          " overlap beyond the edge message");
        }
        const std::size_t overlap = edge_register(pb, e);
        const std::size_t out = pb.step("sum");
        pb.add_input(out, pb.bottleneck(e.u, l_), 0, 0, r_, 1);
        pb.add_input(out, pb.bottleneck(e.v, l_), 0, 0, r_, 1);
        pb.add_step(out, overlap, minus_one);
        add_directs(pb, out, t);
        return pb.finish(out);
      }
      case Label::Kind::star:
        return star_decoder(pb, t);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown terminal kind");
  }

  DecodingPlan star_decoder(PlanBuilder& pb, const TerminalId& t) {
    const Elem minus_one = code_.field.neg(1);
    std::optional<std::size_t> star_reg;
    if (cycle_ != nullptr) {
      star_reg = pb.step("X_star");
      for (const auto& [i, wi] : a_.w) {
        pb.add_input(*star_reg, pb.bottleneck(i, l_), layout_.at(i).star_row, star_offset(i),
                     static_cast<std::size_t>(wi), 1);
      }
    }
    std::map<Edge, std::size_t> edge_reg;
    for (const Edge& e : g_.edges()) {
      const std::size_t combined = edge_register(pb, e);
      if (!carries_star(e)) {
        edge_reg[e] = combined;
        continue;
      }
      const std::size_t plain = pb.step(message_name(edge_source(e)));
      pb.add_step(plain, combined, 1);
      pb.add_step(plain, *star_reg, minus_one);
      edge_reg[e] = plain;
    }
    std::vector<std::size_t> vertex_reg;
    for (int i = 1; i <= g_.vertex_count(); ++i) {
      const std::size_t reg = pb.step(message_name(vertex_source(i)));
      pb.add_input(reg, pb.bottleneck(i, l_), 0, 0, r_, 1);
      for (const Edge& e : g_.incident_edges(i)) pb.add_step(reg, edge_reg.at(e), minus_one);
      if (net_.a_set(i).contains(kStar)) pb.add_step(reg, *star_reg, minus_one);
      vertex_reg.push_back(reg);
    }
    const std::size_t out = pb.step("sum");
    for (std::size_t reg : vertex_reg) pb.add_step(out, reg, 1);
    for (const auto& [e, reg] : edge_reg) pb.add_step(out, reg, 1);
    if (star_reg) pb.add_step(out, *star_reg, 1);
    add_directs(pb, out, t);
    return pb.finish(out);
  }

  const SumNetwork& net_;
  const UndirectedGraph& g_;
  FeasAssignment a_;
  const CycleSubgraph* cycle_;
  std::size_t r_;
  std::size_t l_ = 0;
  LinearCode code_;
  std::map<int, BlockLayout> layout_;
};

}  // namespace

LinearCode synthesize_code(const SumNetwork& net, const FeasAssignment& a, const Field& f) {
  const CycleSubgraph* cycle = net.cycle() ? &*net.cycle() : nullptr;
  auto verdict = check_assignment(net.seed(), a, net.construction(), cycle);
  if (!verdict) throw Error(ErrorCode::InfeasibleAssignment, verdict.violation);

  FeasAssignment normalized = a;
  normalized.construction = net.construction();
  if (cycle != nullptr && normalized.w.empty()) {
    normalize_star_widths(net.seed(), *cycle, normalized);
  }
  LinearCode base = Synthesizer(net, std::move(normalized), f).run();
  return net.alpha() == 1 ? base : repeat_code(base, net.alpha());
}

LinearCode repeat_code(const LinearCode& code, int alpha) {
  if (alpha < 1) throw Error(ErrorCode::InvalidArgument, "alpha must be >= 1");
  if (alpha == 1) return code;

  const std::size_t old_width = code.message_width();
  const std::size_t old_rows = static_cast<std::size_t>(code.alpha) * code.l;
  const auto copies = static_cast<std::size_t>(alpha);

  LinearCode out = code;
  out.alpha = code.alpha * alpha;
  out.encoders.clear();
  out.decoders.clear();

  for (const auto& [i, enc] : code.encoders) {
    FieldMatrix big(code.field, copies * old_rows, out.stacked_length());
    for (std::size_t k = 0; k < copies; ++k) {
      for (std::size_t row = 0; row < enc.rows(); ++row) {
        for (std::size_t col = 0; col < enc.cols(); ++col) {
          const Elem v = enc.at(row, col);
          if (v == 0) continue;
          const std::size_t msg = col / old_width;
          const std::size_t coord = col % old_width;
          big.set(k * old_rows + row, msg * copies * old_width + k * old_width + coord, v);
        }
      }
    }
    out.encoders.emplace(i, std::move(big));
  }

  for (const auto& [t, plan] : code.decoders) {
    DecodingPlan rep;
    rep.width = copies * plan.width;
    rep.output = plan.output;
    for (PlanInput in : plan.inputs) {
      in.width *= copies;
      rep.inputs.push_back(in);
    }
    for (const Step& step : plan.steps) {
      Step s{step.label, {}};
      for (std::size_t k = 0; k < copies; ++k) {
        for (Term term : step.terms) {
          const std::size_t src_width = term.from.kind == Operand::Kind::input
                                            ? plan.inputs[term.from.index].width
                                            : plan.width;
          term.from_offset += k * src_width;
          term.to_offset += k * plan.width;
          s.terms.push_back(term);
        }
      }
      rep.steps.push_back(std::move(s));
    }
    rep.validate();
    out.decoders.emplace(t, std::move(rep));
  }
  return out;
}

Rational achieved_rate(const LinearCode& code) {
  return Rational(static_cast<std::int64_t>(code.alpha) * code.r, code.l);
}

}  // namespace sumnet
