#include <doctest.h>

#include "sumnet/error.hpp"
#include "sumnet/fixtures.hpp"
#include "sumnet/serialize.hpp"

using namespace sumnet;

namespace {

ErrorCode error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

LinearCode code_for(const SumNetwork& net, const Field& f) {
  const CycleSubgraph* cyc = net.cycle() ? &*net.cycle() : nullptr;
  return synthesize_code(net, *solve_feasibility(net.seed(), net.construction(), cyc), f);
}

}  // namespace

TEST_CASE("matrix round trip and rejection") {
  const Field f(5);
  const std::vector<std::int64_t> e{1, 2, 3, 4, 0, 1};
  const FieldMatrix m(f, 2, 3, e);
  const Json j = to_json(m);
  CHECK(j.at("p") == 5);
  CHECK(matrix_from_json(j) == m);
  CHECK(matrix_from_json(Json::parse(j.dump())) == m);

  Json bad = j;
  bad["entries"].push_back(1);
  CHECK(error_of([&] { (void)matrix_from_json(bad); }) == ErrorCode::ParseError);
  bad = j;
  bad["entries"][0] = 7;
  CHECK(error_of([&] { (void)matrix_from_json(bad); }) == ErrorCode::ParseError);
  bad = j;
  bad.erase("rows");
  CHECK(error_of([&] { (void)matrix_from_json(bad); }) == ErrorCode::ParseError);
  bad = j;
  bad["p"] = 6;
  CHECK(error_of([&] { (void)matrix_from_json(bad); }) == ErrorCode::NonPrimeModulus);
}

TEST_CASE("graph round trip and validation") {
  for (const auto& g : {complete_graph(4), petersen_graph(), diamond_graph(), complete_bipartite(2, 3)}) {
    CHECK(graph_from_json(Json::parse(to_json(g).dump())) == g);
  }
  Json tree = {{"b", 3}, {"edges", {{1, 2}, {2, 3}}}};
  CHECK(error_of([&] { (void)graph_from_json(tree); }) == ErrorCode::IsTree);
  Json weird = {{"b", 3}, {"edges", {{1, 2, 3}}}};
  CHECK(error_of([&] { (void)graph_from_json(weird); }) == ErrorCode::ParseError);
  Json text = {{"b", "three"}, {"edges", Json::array()}};
  CHECK(error_of([&] { (void)graph_from_json(text); }) == ErrorCode::ParseError);
}

TEST_CASE("network round trip") {
  const std::vector<SumNetwork> nets{
      build_sum_network(complete_graph(3), Construction::one, 1),
      build_sum_network(complete_graph(4), Construction::two, 2),
      build_sum_network(diamond_graph(), Construction::two, 3, make_cycle({1, 2, 3})),
      build_sum_network(petersen_graph(), Construction::two, 1),
      build_star_wired_network(),
  };
  for (const SumNetwork& net : nets) {
    const Json j = to_json(net);
    CHECK(network_from_json(Json::parse(j.dump())) == net);
    CHECK(j.at("arcs").size() == net.links().size() * static_cast<std::size_t>(net.alpha()));
    CHECK(to_json(network_from_json(j)).dump() == j.dump());
  }
}

TEST_CASE("network import rejects inconsistent documents") {
  const SumNetwork net = build_sum_network(complete_graph(3), Construction::two, 2);
  const Json good = to_json(net);

  Json j = good;
  j["arcs"][0]["index"] = 3;
  CHECK(error_of([&] { (void)network_from_json(j); }) == ErrorCode::ParseError);

  j = good;
  j["arcs"].erase(0);
  CHECK(error_of([&] { (void)network_from_json(j); }) == ErrorCode::ParseError);

  j = good;
  j["arcs"][1]["index"] = j["arcs"][0]["index"];
  j["arcs"][1]["from"] = j["arcs"][0]["from"];
  j["arcs"][1]["to"] = j["arcs"][0]["to"];
  CHECK(error_of([&] { (void)network_from_json(j); }) == ErrorCode::ParseError);

  j = good;
  j["nodes"].erase(0);
  CHECK(error_of([&] { (void)network_from_json(j); }) == ErrorCode::ParseError);

  j = good;
  j["A"].erase("2");
  CHECK(error_of([&] { (void)network_from_json(j); }) == ErrorCode::ParseError);

  j = good;
  j["cycle"]["edges"][0] = {1, 1};
  CHECK(error_of([&] { (void)network_from_json(j); }) == ErrorCode::ParseError);

  j = good;
  j["A"]["1"].push_back("t_1");
  CHECK(error_of([&] { (void)network_from_json(j); }) == ErrorCode::ParseError);

  j = good;
  j["A"]["1"] = Json::array({"s_1"});
  CHECK(error_of([&] { (void)network_from_json(j); }) == ErrorCode::InvalidNetwork);
}

TEST_CASE("assignment round trip") {
  for (const FeasAssignment& a : {k3_example_assignment(), petersen_reference_assignment()}) {
    CHECK(assignment_from_json(Json::parse(to_json(a).dump())) == a);
  }
  Json j = to_json(petersen_reference_assignment());
  j["w"]["x1"] = 2;
  CHECK(error_of([&] { (void)assignment_from_json(j); }) == ErrorCode::ParseError);
  j = to_json(k3_example_assignment());
  j["construction"] = 4;
  CHECK(error_of([&] { (void)assignment_from_json(j); }) == ErrorCode::InvalidArgument);
  j = to_json(k3_example_assignment());
  j["m"][0].erase("at_j");
  CHECK(error_of([&] { (void)assignment_from_json(j); }) == ErrorCode::ParseError);
}

TEST_CASE("plans and codes round trip") {
  const std::vector<std::pair<SumNetwork, Field>> cases{
      {build_sum_network(complete_graph(3), Construction::one, 1), Field(2)},
      {build_sum_network(diamond_graph(), Construction::two, 2, make_cycle({1, 2, 3})), Field(3)},
      {build_sum_network(petersen_graph(), Construction::two, 1), Field(5)},
  };
  for (const auto& [net, f] : cases) {
    const LinearCode code = code_for(net, f);
    const Json j = to_json(code);
    CHECK(j.at("rate") == to_string(achieved_rate(code)));
    const LinearCode back = code_from_json(Json::parse(j.dump()));
    CHECK(back == code);
    for (const auto& [t, plan] : code.decoders) CHECK(plan_from_json(to_json(plan)) == plan);
  }
  const LinearCode app = star_wired_code(StarCodeVariant::general, Field(3));
  CHECK(code_from_json(to_json(app)) == app);
}

TEST_CASE("code import rejects malformed documents") {
  const Json good = to_json(code_for(build_sum_network(complete_graph(3), Construction::one, 1), Field(3)));

  Json j = good;
  j["encoders"]["x_1"] = j["encoders"]["e_1"];
  CHECK(error_of([&] { (void)code_from_json(j); }) == ErrorCode::ParseError);

  j = good;
  j["encoders"]["e_1"]["p"] = 5;
  j["encoders"]["e_1"]["entries"] = Json::array();
  for (std::size_t k = 0; k < good["encoders"]["e_1"]["entries"].size(); ++k) j["encoders"]["e_1"]["entries"].push_back(0);
  CHECK(error_of([&] { (void)code_from_json(j); }) == ErrorCode::ParseError);

  j = good;
  j["decoders"]["t_1"]["inputs"][0]["kind"] = "wormhole";
  CHECK(error_of([&] { (void)code_from_json(j); }) == ErrorCode::ParseError);

  j = good;
  j["decoders"]["t_1"]["steps"][0]["terms"][0]["from"]["kind"] = "step";
  j["decoders"]["t_1"]["steps"][0]["terms"][0]["from"]["index"] = 5;
  CHECK(error_of([&] { (void)code_from_json(j); }) == ErrorCode::InvalidArgument);

  j = good;
  j["layout"][0] = "head_1";
  CHECK(error_of([&] { (void)code_from_json(j); }) == ErrorCode::ParseError);

  CHECK(error_of([&] { (void)code_from_json(Json::parse("[1, 2]")); }) == ErrorCode::ParseError);
}

TEST_CASE("report json") {
  VerifyReport ok;
  ok.mode = VerifyMode::random;
  ok.trials = 100;
  ok.seed = 7;
  const Json j = to_json(ok);
  CHECK(j.at("mode") == "random");
  CHECK(j.at("pass") == true);
  CHECK(j.at("seed") == 7);
  CHECK(j.at("failure").is_null());

  VerifyReport bad;
  bad.pass = false;
  bad.failure = VerifyFailure{TerminalId{Label::star()}, {1, 0}, {1}, {0}};
  bad.failing_terminals = {TerminalId{Label::star()}};
  const Json k = to_json(bad);
  CHECK(k.at("seed").is_null());
  CHECK(k.at("failure").at("terminal") == "t_star");
  CHECK(k.at("failure").at("instantiation") == Json::array({1, 0}));
  CHECK(k.at("failing_terminals") == Json::array({"t_star"}));
}
