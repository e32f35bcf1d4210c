#include "sumnet/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sumnet/error.hpp"
#include "sumnet/fixtures.hpp"
#include "sumnet/serialize.hpp"
#include "sumnet/verify.hpp"

namespace sumnet {

namespace {

struct Config {
  std::string graph;
  std::string network;
  std::string code;
  std::string assignment;
  std::vector<int> cycle;
  int construction = 2;
  int alpha = 1;
  std::uint64_t field = 2;
  std::string mode = "algebraic";
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string format;
  std::string output;
};

bool allow_large_exhaustive() {
  const char* v = std::getenv("SUMNET_ALLOW_LARGE_EXHAUSTIVE");
  return v != nullptr && std::string(v) == "1";
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

class Runner {
 public:
  Runner(const Config& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  void emit(const std::string& doc) {
    if (cfg_.output.empty()) {
      out_ << doc;
      return;
    }
    std::ofstream file(cfg_.output);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + cfg_.output);
    file << doc;
  }
  void emit(const Json& j) { emit(j.dump(2) + "\n"); }

  std::string format(const std::string& fallback, std::initializer_list<const char*> allowed) const {
    const std::string f = cfg_.format.empty() ? fallback : cfg_.format;
    for (const char* a : allowed) {
      if (f == a) return f;
    }
    throw Error(ErrorCode::InvalidArgument, "format \"" + f + "\" is not available here");
  }

  Construction construction() const { return construction_from_int(cfg_.construction); }

  std::optional<CycleSubgraph> cycle() const {
    if (cfg_.cycle.empty()) return std::nullopt;
    return make_cycle(cfg_.cycle);
  }

  UndirectedGraph graph() const {
    if (cfg_.graph.empty()) throw Error(ErrorCode::InvalidArgument, "--graph is required");
    return load_graph(cfg_.graph);
  }

  SumNetwork network() const {
    if (!cfg_.network.empty()) {
      if (!cfg_.graph.empty()) {
        throw Error(ErrorCode::InvalidArgument, "give either --graph or --network, not both");
      }
      return network_from_json(read_json(cfg_.network));
    }
    return build_sum_network(graph(), construction(), cfg_.alpha, cycle());
  }

  std::optional<FeasAssignment> solve(const SumNetwork& net) const {
    const CycleSubgraph* cyc = net.cycle() ? &*net.cycle() : nullptr;
    return solve_feasibility(net.seed(), net.construction(), cyc);
  }

  // nullopt when the feasibility system has no solution.
  std::optional<LinearCode> code_for(const SumNetwork& net) const {
    if (!cfg_.code.empty()) return code_from_json(read_json(cfg_.code));
    std::optional<FeasAssignment> a;
    if (!cfg_.assignment.empty()) {
      a = assignment_from_json(read_json(cfg_.assignment));
    } else {
      a = solve(net);
    }
    if (!a) return std::nullopt;
    return synthesize_code(net, *a, Field(cfg_.field));
  }

  int validate() {
    const UndirectedGraph g = graph();
    const CycleSubgraph cyc = shortest_cycle(g);
    if (format("text", {"text", "json"}) == "json") {
      Json j = to_json(g);
      j["girth"] = girth(g);
      j["shortest_cycle"] = cyc.vertices;
      j["class"] = to_string(classify(g));
      emit(j);
    } else {
      std::ostringstream s;
      s << "ok: b=" << g.vertex_count() << " |E|=" << g.edge_count() << " girth=" << girth(g)
        << " class=" << to_string(classify(g)) << "\n";
      emit(s.str());
    }
    return kExitPass;
  }

  int construct() {
    const SumNetwork net = network();
    if (format("json", {"json", "dot"}) == "dot") {
      emit(export_dot(net));
    } else {
      emit(to_json(net));
    }
    return kExitPass;
  }

  int capacity() {
    const Rational q = capacity_upper_bound(graph(), construction(), cfg_.alpha);
    if (format("text", {"text", "json"}) == "json") {
      emit(Json{{"capacity", to_string(q)}, {"construction", cfg_.construction}, {"alpha", cfg_.alpha}});
    } else {
      emit(to_string(q) + "\n");
    }
    return kExitPass;
  }

  int feas() {
    const SumNetwork net = network();
    const auto a = solve(net);
    const bool json = format("json", {"json", "text"}) == "json";
    if (!a) {
      emit(json ? Json{{"feasible", false}}.dump(2) + "\n" : std::string("infeasible\n"));
      return kExitFail;
    }
    if (json) {
      emit(to_json(*a));
    } else {
      std::ostringstream s;
      for (const auto& [e, split] : a->m) {
        s << "m_" << to_string(e) << "(" << e.u << ")=" << split.at_u << " m_" << to_string(e) << "("
          << e.v << ")=" << split.at_v << "\n";
      }
      for (const auto& [i, wi] : a->w) s << "w_" << i << "=" << wi << "\n";
      emit(s.str());
    }
    return kExitPass;
  }

  int codegen() {
    format("json", {"json"});
    const SumNetwork net = network();
    const auto code = code_for(net);
    if (!code) {
      emit(std::string("infeasible\n"));
      return kExitFail;
    }
    emit(to_json(*code));
    return kExitPass;
  }

  int verify() {
    const bool json = format("json", {"json", "text"}) == "json";
    const SumNetwork net = network();
    const auto code = code_for(net);
    if (!code) {
      emit(std::string("infeasible\n"));
      return kExitFail;
    }
    VerifyReport report;
    switch (verify_mode_from_string(cfg_.mode)) {
      case VerifyMode::exhaustive:
        report = verify_exhaustive(net, *code, allow_large_exhaustive());
        break;
      case VerifyMode::random:
        report = verify_random(net, *code, cfg_.trials, cfg_.seed, cfg_.workers);
        break;
      case VerifyMode::algebraic:
        report = verify_algebraic(net, *code);
        break;
    }
    if (json) {
      emit(to_json(report));
    } else {
      std::ostringstream s;
      s << (report.pass ? "pass" : "fail") << " mode=" << to_string(report.mode)
        << " trials=" << report.trials;
      if (report.seed) s << " seed=" << *report.seed;
      for (const TerminalId& t : report.failing_terminals) s << " " << to_string(t);
      s << "\n";
      emit(s.str());
    }
    return report.pass ? kExitPass : kExitFail;
  }

  int demo_star_wired() {
    const SumNetwork net = build_star_wired_network();
    struct Cell {
      StarCodeVariant variant;
      std::uint64_t p;
      std::vector<TerminalId> expected_failures;
    };
    const TerminalId star{Label::star()};
    const std::vector<Cell> cells{{StarCodeVariant::char2, 2, {}},
                                  {StarCodeVariant::char2, 3, {star}},
                                  {StarCodeVariant::char2, 5, {star}},
                                  {StarCodeVariant::general, 3, {}},
                                  {StarCodeVariant::general, 5, {}}};
    const bool json = format("text", {"text", "json"}) == "json";
    Json rows = Json::array();
    std::ostringstream s;
    s << std::left << std::setw(10) << "code" << std::setw(6) << "r/l" << std::setw(7) << "field"
      << "result\n";
    bool as_expected = true;
    for (const Cell& c : cells) {
      const LinearCode code = star_wired_code(c.variant, Field(c.p), false);
      const VerifyReport report = verify_algebraic(net, code);
      as_expected = as_expected && report.failing_terminals == c.expected_failures;
      std::string result = report.pass ? "pass" : "fail@";
      for (std::size_t k = 0; k < report.failing_terminals.size(); ++k) {
        result += (k ? "," : "") + to_string(report.failing_terminals[k]);
      }
      const std::string r_over_l = std::to_string(code.r) + "/" + std::to_string(code.l);
      s << std::setw(10) << to_string(c.variant) << std::setw(6) << r_over_l
        << std::setw(7) << ("GF(" + std::to_string(c.p) + ")") << result << "\n";
      Json failing = Json::array();
      for (const TerminalId& t : report.failing_terminals) failing.push_back(to_string(t));
      rows.push_back({{"code", to_string(c.variant)},
                      {"r", code.r},
                      {"l", code.l},
                      {"p", c.p},
                      {"pass", report.pass},
                      {"failing_terminals", std::move(failing)}});
    }
    if (json) {
      emit(Json{{"rows", std::move(rows)}, {"as_expected", as_expected}});
    } else {
      emit(s.str());
    }
    return as_expected ? kExitPass : kExitFail;
  }

  int examples() {
    const bool json = format("text", {"text", "json"}) == "json";
    const Field f(cfg_.field);
    Json rows = Json::array();
    std::ostringstream s;
    bool all_ok = true;
    for (const NamedExample& ex : named_examples()) {
      const Rational bound = capacity_upper_bound(ex.graph, ex.construction, 1);
      const SumNetwork net = build_sum_network(ex.graph, ex.construction, 1);
      const auto a = solve(net);
      std::string rate = "-";
      bool pass = false;
      if (a) {
        const LinearCode code = synthesize_code(net, *a, f);
        rate = to_string(achieved_rate(code));
        pass = verify_algebraic(net, code).pass && achieved_rate(code) == bound;
      }
      const bool ok = bound == ex.capacity && pass;
      all_ok = all_ok && ok;
      s << std::left << std::setw(24) << ex.name << " bound=" << std::setw(6) << to_string(bound)
        << " expected=" << std::setw(6) << to_string(ex.capacity) << " rate=" << std::setw(6) << rate
        << (ok ? " ok" : " MISMATCH") << "\n";
      rows.push_back({{"name", ex.name},
                      {"bound", to_string(bound)},
                      {"expected", to_string(ex.capacity)},
                      {"rate", rate},
                      {"verified", pass},
                      {"ok", ok}});
    }
    if (json) {
      emit(Json{{"p", cfg_.field}, {"examples", std::move(rows)}});
    } else {
      emit(s.str());
    }
    return all_ok ? kExitPass : kExitFail;
  }

 private:
  const Config& cfg_;
  std::ostream& out_;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Sum-networks from undirected graphs: bounds, codes and verification", "sumnet"};
  app.require_subcommand(1);

  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("--graph", cfg.graph, "Edge-list file: \"b m\" header then m lines \"u v\"");
  };
  auto add_network = [&](CLI::App* sub) {
    add_graph(sub);
    sub->add_option("--network", cfg.network, "Network JSON written by construct");
    sub->add_option("--construction", cfg.construction, "1 or 2")->check(CLI::IsMember({1, 2}));
    sub->add_option("--alpha", cfg.alpha, "Bottleneck capacity")->check(CLI::PositiveNumber);
    sub->add_option("--cycle", cfg.cycle, "Cycle for construction 2, e.g. 1,2,3")->delimiter(',');
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "json, dot or text")
        ->check(CLI::IsMember({"json", "dot", "text"}));
    sub->add_option("--output", cfg.output, "Write to a file instead of stdout");
  };
  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--field", cfg.field, "Prime characteristic p");
  };

  auto* validate = app.add_subcommand("validate", "Check a seed graph");
  add_graph(validate);
  add_output(validate);

  auto* construct = app.add_subcommand("construct", "Build the sum-network");
  add_network(construct);
  add_output(construct);

  auto* capacity = app.add_subcommand("capacity", "Print the capacity upper bound");
  add_graph(capacity);
  capacity->add_option("--construction", cfg.construction, "1 or 2")->check(CLI::IsMember({1, 2}));
  capacity->add_option("--alpha", cfg.alpha, "Bottleneck capacity")->check(CLI::PositiveNumber);
  add_output(capacity);

  auto* feas = app.add_subcommand("feas", "Solve the feasibility system");
  add_network(feas);
  add_output(feas);

  auto* codegen = app.add_subcommand("codegen", "Synthesize the linear code");
  add_network(codegen);
  add_field(codegen);
  codegen->add_option("--assignment", cfg.assignment, "Assignment JSON instead of solving");
  add_output(codegen);

  auto* verify = app.add_subcommand("verify", "Check a code on its network");
  add_network(verify);
  add_field(verify);
  verify->add_option("--assignment", cfg.assignment, "Assignment JSON instead of solving");
  verify->add_option("--code", cfg.code, "Code JSON instead of synthesizing");
  verify->add_option("--mode", cfg.mode, "exhaustive, random or algebraic")
      ->check(CLI::IsMember({"exhaustive", "random", "algebraic"}));
  verify->add_option("--trials", cfg.trials, "Random trials");
  verify->add_option("--seed", cfg.seed, "Random seed");
  verify->add_option("--workers", cfg.workers, "Threads for random mode, 0 = all cores");
  add_output(verify);

  auto* demo = app.add_subcommand("demo-appendix", "Both star-wired codes over GF(2), GF(3), GF(5)");
  add_output(demo);

  auto* examples = app.add_subcommand("examples", "Run the named example graphs end to end");
  add_field(examples);
  add_output(examples);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    Runner run(cfg, out);
    if (*validate) return run.validate();
    if (*construct) return run.construct();
    if (*capacity) return run.capacity();
    if (*feas) return run.feas();
    if (*codegen) return run.codegen();
    if (*verify) return run.verify();
    if (*demo) return run.demo_star_wired();
    if (*examples) return run.examples();
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace sumnet
