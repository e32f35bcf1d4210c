#include "sumnet/serialize.hpp"

#include <algorithm>

#include "sumnet/error.hpp"

namespace sumnet {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::ParseError, "malformed JSON: " + what);
}

// Runs an importer body, turning JSON library exceptions into ParseError.
template <typename F>
auto guarded(const char* what, F&& body) {
  try {
    return body();
  } catch (const nlohmann::json::exception& e) {
    malformed(std::string(what) + ": " + e.what());
  }
}

Json edge_json(const Edge& e) { return Json::array({e.u, e.v}); }

Edge edge_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) malformed("edge must be [u, v]");
  return Edge(j[0].get<int>(), j[1].get<int>());
}

SourceId source_from_string(const std::string& text) {
  const NodeId n = parse_node_id(text);
  if (n.role != Role::source) malformed("\"" + text + "\" is not a source");
  return SourceId{n.label};
}

TerminalId terminal_from_string(const std::string& text) {
  const NodeId n = parse_node_id(text);
  if (n.role != Role::terminal) malformed("\"" + text + "\" is not a terminal");
  return TerminalId{n.label};
}

Json vector_json(const FieldVector& v) { return Json(v); }

}  // namespace

Json to_json(const FieldMatrix& m) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) entries.push_back(m.at(r, c));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"p", m.field().characteristic()},
          {"entries", std::move(entries)}};
}

FieldMatrix matrix_from_json(const Json& j) {
  return guarded("matrix", [&] {
    const Field f(j.at("p").get<std::uint64_t>());
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto entries = j.at("entries").get<std::vector<std::int64_t>>();
    if (entries.size() != rows * cols) malformed("matrix entry count differs from rows*cols");
    for (std::int64_t v : entries) {
      if (v < 0 || static_cast<std::uint64_t>(v) >= f.characteristic()) {
        malformed("matrix entry " + std::to_string(v) + " is not reduced mod p");
      }
    }
    return FieldMatrix(f, rows, cols, entries);
  });
}

Json to_json(const UndirectedGraph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back(edge_json(e));
  return {{"b", g.vertex_count()}, {"edges", std::move(edges)}};
}

UndirectedGraph graph_from_json(const Json& j) {
  return guarded("graph", [&] {
    std::vector<Edge> edges;
    for (const Json& e : j.at("edges")) edges.push_back(edge_from_json(e));
    return UndirectedGraph(j.at("b").get<int>(), std::move(edges));
  });
}

Json to_json(const SumNetwork& net) {
  Json j;
  j["seed"] = to_json(net.seed());
  j["construction"] = static_cast<int>(net.construction());
  j["alpha"] = net.alpha();
  if (net.cycle()) {
    Json edges = Json::array();
    for (const Edge& e : net.cycle()->edges) edges.push_back(edge_json(e));
    j["cycle"] = {{"vertices", net.cycle()->vertices}, {"edges", std::move(edges)}};
  } else {
    j["cycle"] = nullptr;
  }
  Json nodes = Json::array();
  for (const NodeId& n : net.nodes()) nodes.push_back({{"id", to_string(n)}, {"role", to_string(n.role)}});
  j["nodes"] = std::move(nodes);
  Json arcs = Json::array();
  for (const Arc& a : net.arcs()) {
    arcs.push_back({{"from", to_string(a.from)}, {"to", to_string(a.to)}, {"index", a.index}});
  }
  j["arcs"] = std::move(arcs);
  Json sets = Json::object();
  for (int i = 1; i <= net.bottleneck_count(); ++i) {
    Json members = Json::array();
    for (const SourceId& s : net.a_set(i)) members.push_back(to_string(s));
    sets[std::to_string(i)] = std::move(members);
  }
  j["A"] = std::move(sets);
  return j;
}

SumNetwork network_from_json(const Json& j) {
  return guarded("network", [&] {
    UndirectedGraph seed = graph_from_json(j.at("seed"));
    const int b = seed.vertex_count();
    const Construction c = construction_from_int(j.at("construction").get<int>());
    const int alpha = j.at("alpha").get<int>();
    std::optional<CycleSubgraph> cycle;
    if (const Json& cj = j.at("cycle"); !cj.is_null()) {
      cycle = make_cycle(cj.at("vertices").get<std::vector<int>>());
      if (cj.contains("edges")) {
        std::vector<Edge> edges;
        for (const Json& e : cj.at("edges")) edges.push_back(edge_from_json(e));
        std::sort(edges.begin(), edges.end());
        if (edges != cycle->edges) malformed("cycle edges do not close the listed vertices");
      }
    }

    std::vector<std::set<SourceId>> a_sets(static_cast<std::size_t>(b) + 1);
    const Json& sets = j.at("A");
    if (!sets.is_object() || sets.size() != static_cast<std::size_t>(b)) {
      malformed("A must hold one set per bottleneck");
    }
    for (int i = 1; i <= b; ++i) {
      for (const Json& s : sets.at(std::to_string(i))) {
        a_sets[static_cast<std::size_t>(i)].insert(source_from_string(s.get<std::string>()));
      }
    }

    std::map<Link, std::set<int>> indices;
    for (const Json& a : j.at("arcs")) {
      Link link{parse_node_id(a.at("from").get<std::string>()),
                parse_node_id(a.at("to").get<std::string>())};
      const int index = a.at("index").get<int>();
      if (index < 1 || index > alpha || !indices[link].insert(index).second) {
        malformed("arc " + to_string(link.from) + " -> " + to_string(link.to) +
                  " has a bad or repeated index");
      }
    }
    std::set<Link> links;
    for (const auto& [link, seen] : indices) {
      if (seen.size() != static_cast<std::size_t>(alpha)) {
        malformed("link " + to_string(link.from) + " -> " + to_string(link.to) +
                  " does not carry alpha arcs");
      }
      links.insert(link);
    }

    SumNetwork net(SumNetwork::Parts{std::move(seed), c, alpha, std::move(cycle),
                                     std::move(a_sets), std::move(links)});
    if (j.contains("nodes")) {
      std::set<std::string> listed;
      for (const Json& n : j.at("nodes")) listed.insert(n.at("id").get<std::string>());
      std::set<std::string> actual;
      for (const NodeId& n : net.nodes()) actual.insert(to_string(n));
      if (listed != actual) malformed("node list disagrees with the arcs");
    }
    return net;
  });
}

Json to_json(const FeasAssignment& a) {
  Json m = Json::array();
  for (const auto& [e, split] : a.m) {
    m.push_back({{"i", e.u}, {"j", e.v}, {"at_i", split.at_u}, {"at_j", split.at_v}});
  }
  Json w = Json::object();
  for (const auto& [i, wi] : a.w) w[std::to_string(i)] = wi;
  return {{"construction", static_cast<int>(a.construction)}, {"m", std::move(m)}, {"w", std::move(w)}};
}

FeasAssignment assignment_from_json(const Json& j) {
  return guarded("assignment", [&] {
    FeasAssignment a;
    a.construction = construction_from_int(j.at("construction").get<int>());
    for (const Json& row : j.at("m")) {
      const int i = row.at("i").get<int>();
      const int k = row.at("j").get<int>();
      const Edge e(i, k);
      a.set(e, i, row.at("at_i").get<int>());
      a.set(e, k, row.at("at_j").get<int>());
    }
    if (j.contains("w")) {
      for (const auto& [key, value] : j.at("w").items()) {
        std::size_t used = 0;
        int vertex = 0;
        try {
          vertex = std::stoi(key, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != key.size()) malformed("w key \"" + key + "\" is not a vertex");
        a.w[vertex] = value.get<int>();
      }
    }
    return a;
  });
}

Json to_json(const DecodingPlan& plan) {
  Json inputs = Json::array();
  for (const PlanInput& in : plan.inputs) {
    if (in.kind == PlanInput::Kind::bottleneck) {
      inputs.push_back({{"kind", "bottleneck"}, {"vertex", in.vertex}, {"width", in.width}});
    } else {
      inputs.push_back({{"kind", "direct"}, {"source", to_string(in.source)}, {"width", in.width}});
    }
  }
  Json steps = Json::array();
  for (const Step& s : plan.steps) {
    Json terms = Json::array();
    for (const Term& t : s.terms) {
      terms.push_back({{"from", {{"kind", t.from.kind == Operand::Kind::input ? "input" : "step"},
                                 {"index", t.from.index}}},
                       {"from_offset", t.from_offset},
                       {"to_offset", t.to_offset},
                       {"length", t.length},
                       {"coeff", t.coeff}});
    }
    steps.push_back({{"label", s.label}, {"terms", std::move(terms)}});
  }
  return {{"inputs", std::move(inputs)}, {"width", plan.width}, {"steps", std::move(steps)},
          {"output", plan.output}};
}

DecodingPlan plan_from_json(const Json& j) {
  return guarded("plan", [&] {
    DecodingPlan plan;
    for (const Json& in : j.at("inputs")) {
      const auto kind = in.at("kind").get<std::string>();
      PlanInput p;
      p.width = in.at("width").get<std::size_t>();
      if (kind == "bottleneck") {
        p.kind = PlanInput::Kind::bottleneck;
        p.vertex = in.at("vertex").get<int>();
      } else if (kind == "direct") {
        p.kind = PlanInput::Kind::direct;
        p.source = source_from_string(in.at("source").get<std::string>());
      } else {
        malformed("unknown input kind \"" + kind + "\"");
      }
      plan.inputs.push_back(p);
    }
    plan.width = j.at("width").get<std::size_t>();
    for (const Json& s : j.at("steps")) {
      Step step{s.at("label").get<std::string>(), {}};
      for (const Json& t : s.at("terms")) {
        const auto kind = t.at("from").at("kind").get<std::string>();
        if (kind != "input" && kind != "step") malformed("unknown operand kind \"" + kind + "\"");
        step.terms.push_back({Operand{kind == "input" ? Operand::Kind::input : Operand::Kind::step,
                                      t.at("from").at("index").get<std::size_t>()},
                              t.at("from_offset").get<std::size_t>(),
                              t.at("to_offset").get<std::size_t>(), t.at("length").get<std::size_t>(),
                              t.at("coeff").get<Elem>()});
      }
      plan.steps.push_back(std::move(step));
    }
    plan.output = j.at("output").get<std::size_t>();
    plan.validate();
    return plan;
  });
}

Json to_json(const LinearCode& code) {
  Json edges = Json::array();
  for (const Edge& e : code.edge_order) edges.push_back(edge_json(e));
  Json layout = Json::array();
  for (const SourceId& s : code.layout) layout.push_back(to_string(s));
  Json encoders = Json::object();
  for (const auto& [i, enc] : code.encoders) encoders["e_" + std::to_string(i)] = to_json(enc);
  Json decoders = Json::object();
  for (const auto& [t, plan] : code.decoders) decoders[to_string(t)] = to_json(plan);
  return {{"p", code.field.characteristic()},
          {"r", code.r},
          {"l", code.l},
          {"alpha", code.alpha},
          {"construction", static_cast<int>(code.construction)},
          {"rate", to_string(achieved_rate(code))},
          {"edge_order", std::move(edges)},
          {"layout", std::move(layout)},
          {"encoders", std::move(encoders)},
          {"decoders", std::move(decoders)}};
}

LinearCode code_from_json(const Json& j) {
  return guarded("code", [&] {
    LinearCode code{Field(j.at("p").get<std::uint64_t>()), j.at("r").get<int>(), j.at("l").get<int>(),
                    j.at("alpha").get<int>(), construction_from_int(j.at("construction").get<int>()),
                    {}, {}, {}, {}};
    for (const Json& e : j.at("edge_order")) code.edge_order.push_back(edge_from_json(e));
    for (const Json& s : j.at("layout")) code.layout.push_back(source_from_string(s.get<std::string>()));
    for (const auto& [key, value] : j.at("encoders").items()) {
      if (key.rfind("e_", 0) != 0) malformed("encoder key \"" + key + "\" is not e_<vertex>");
      const NodeId tail = parse_node_id("tail_" + key.substr(2));
      if (tail.label.kind != Label::Kind::vertex) malformed("encoder key \"" + key + "\" is not e_<vertex>");
      FieldMatrix enc = matrix_from_json(value);
      if (enc.field() != code.field) malformed("encoder " + key + " uses a different field");
      code.encoders.emplace(tail.label.vertex, std::move(enc));
    }
    for (const auto& [key, value] : j.at("decoders").items()) {
      code.decoders.emplace(terminal_from_string(key), plan_from_json(value));
    }
    return code;
  });
}

Json to_json(const VerifyReport& report) {
  Json j;
  j["mode"] = to_string(report.mode);
  j["pass"] = report.pass;
  j["trials"] = report.trials;
  j["seed"] = report.seed ? Json(*report.seed) : Json(nullptr);
  Json failing = Json::array();
  for (const TerminalId& t : report.failing_terminals) failing.push_back(to_string(t));
  j["failing_terminals"] = std::move(failing);
  if (report.failure) {
    j["failure"] = {{"terminal", to_string(report.failure->terminal)},
                    {"instantiation", vector_json(report.failure->instantiation)},
                    {"expected", vector_json(report.failure->expected)},
                    {"decoded", vector_json(report.failure->decoded)}};
  } else {
    j["failure"] = nullptr;
  }
  return j;
}

}  // namespace sumnet
