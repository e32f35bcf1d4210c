#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "sumnet/error.hpp"
#include "sumnet/fixtures.hpp"
#include "sumnet/verify.hpp"

using namespace sumnet;

namespace {

LinearCode synthesize(const SumNetwork& net, const Field& f) {
  const CycleSubgraph* cyc = net.cycle() ? &*net.cycle() : nullptr;
  const auto a = solve_feasibility(net.seed(), net.construction(), cyc);
  REQUIRE(a.has_value());
  return synthesize_code(net, *a, f);
}

LinearCode k3_reference_code(const Field& f) {
  return synthesize_code(build_sum_network(complete_graph(3), Construction::one, 1), k3_example_assignment(), f);
}

// Adds one to a single entry of encoder e_i.
LinearCode bump(LinearCode code, int i, std::size_t row, std::size_t col) {
  FieldMatrix& enc = code.encoders.at(i);
  enc.set(row, col, code.field.add(enc.at(row, col), 1));
  return code;
}

// Nonzero-row region of every encoder, as (vertex, row, col) triples.
std::vector<std::tuple<int, std::size_t, std::size_t>> used_cells(const LinearCode& code) {
  std::vector<std::tuple<int, std::size_t, std::size_t>> out;
  for (const auto& [i, enc] : code.encoders) {
    for (std::size_t row = 0; row < enc.rows(); ++row) {
      if (enc.row_slice(row, 1).is_zero()) continue;
      for (std::size_t col = 0; col < enc.cols(); ++col) out.emplace_back(i, row, col);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("exhaustive pass on the K3 reference code") {
  const SumNetwork net = build_sum_network(complete_graph(3), Construction::one, 1);
  const VerifyReport r = verify_exhaustive(net, k3_reference_code(Field(2)));
  CHECK(r.pass);
  CHECK(r.trials == (1U << 18));
  CHECK_FALSE(r.failure.has_value());
  CHECK(r.mode == VerifyMode::exhaustive);
}

TEST_CASE("all-zero messages decode to zero everywhere") {
  for (const auto& g : {complete_graph(3), diamond_graph(), petersen_graph()}) {
    const SumNetwork net = build_sum_network(g, Construction::two, 1);
    const LinearCode code = synthesize(net, Field(3));
    const Simulator sim(net, code);
    const FieldVector zero(sim.stacked_length(), 0);
    for (const TerminalId& t : sim.terminals()) {
      for (Elem v : sim.decode(t, zero)) CHECK(v == 0);
    }
  }
}

TEST_CASE("a flipped sum-block entry is caught with a counterexample") {
  const SumNetwork net = build_sum_network(complete_graph(3), Construction::one, 1);
  const LinearCode bad = bump(k3_reference_code(Field(2)), 1, 0, 0);
  const VerifyReport r = verify_exhaustive(net, bad);
  CHECK_FALSE(r.pass);
  REQUIRE(r.failure.has_value());
  CHECK(r.failure->expected != r.failure->decoded);
  const Simulator sim(net, bad);
  CHECK(sim.decode(r.failure->terminal, r.failure->instantiation) == r.failure->decoded);
  CHECK(sim.expected_sum(r.failure->instantiation) == r.failure->expected);
  // The witness is minimal: zeroing any remaining message slice hides the fault.
  for (std::size_t m = 0; m < net.sources().size(); ++m) {
    FieldVector x = r.failure->instantiation;
    bool nonzero = false;
    for (std::size_t c = 0; c < 3; ++c) {
      nonzero = nonzero || x[m * 3 + c] != 0;
      x[m * 3 + c] = 0;
    }
    if (nonzero) CHECK(sim.failing_terminals(x).empty());
  }
  const VerifyReport a = verify_algebraic(net, bad);
  CHECK_FALSE(a.pass);
  CHECK(std::find(a.failing_terminals.begin(), a.failing_terminals.end(), TerminalId{Label::of_vertex(1)}) !=
        a.failing_terminals.end());
}

TEST_CASE("algebraic composition") {
  const SumNetwork net = build_sum_network(complete_graph(3), Construction::one, 1);
  for (std::uint64_t p : {2, 3}) {
    const LinearCode code = k3_reference_code(Field(p));
    const VerifyReport r = verify_algebraic(net, code);
    CHECK(r.pass);
    CHECK(r.trials == net.terminals().size());

    // Composite of t_star's plan with what it receives is [I I I I I I].
    const Simulator sim(net, code);
    const DecodingPlan& plan = code.decoders.at(TerminalId{Label::star()});
    std::vector<FieldMatrix> blocks;
    for (const PlanInput& in : plan.inputs) blocks.push_back(sim.effective_encoder(in.vertex));
    const FieldMatrix composite = mat_mul(plan.compile(code.field), vstack(blocks));
    for (std::size_t row = 0; row < 3; ++row) {
      for (std::size_t col = 0; col < 18; ++col) CHECK(composite.at(row, col) == (col % 3 == row ? 1 : 0));
    }
  }
}

TEST_CASE("star-wired 4/9 code fails only at t_star outside characteristic 2") {
  const SumNetwork net = build_star_wired_network();
  const VerifyReport r = verify_algebraic(net, star_wired_code(StarCodeVariant::char2, Field(3), false));
  CHECK_FALSE(r.pass);
  CHECK(r.failing_terminals == std::vector<TerminalId>{TerminalId{Label::star()}});
  REQUIRE(r.failure.has_value());
  CHECK(r.failure->terminal == TerminalId{Label::star()});
}

TEST_CASE("random mode") {
  const SumNetwork net = build_sum_network(petersen_graph(), Construction::two, 1);
  const LinearCode code = synthesize(net, Field(2));
  const VerifyReport r = verify_random(net, code, 10000, 0);
  CHECK(r.pass);
  CHECK(r.trials == 10000);
  CHECK(r.seed == std::optional<std::uint64_t>{0});
  CHECK_THROWS_AS((void)verify_random(net, code, 0, 0), Error);

  const LinearCode bad = bump(code, 3, 12, code.column(SourceId{Label::of_edge(Edge(3, 4))}, 0));
  const VerifyReport f1 = verify_random(net, bad, 1000, 42, 1);
  const VerifyReport f2 = verify_random(net, bad, 1000, 42, 3);
  const VerifyReport f3 = verify_random(net, bad, 1000, 42);
  CHECK_FALSE(f1.pass);
  CHECK(f1 == f2);
  CHECK(f1 == f3);
  CHECK(f1.seed == std::optional<std::uint64_t>{42});
  CHECK(verify_random(net, code, 500, 9, 1) == verify_random(net, code, 500, 9, 4));
}

TEST_CASE("exhaustive guard") {
  const SumNetwork net = build_sum_network(diamond_graph(), Construction::two, 1);
  const LinearCode code = synthesize(net, Field(2));
  try {
    (void)verify_exhaustive(net, code);
    FAIL("2^40 states accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StateSpaceTooLarge);
  }
}

TEST_CASE("plans must read delivered symbols only") {
  const SumNetwork net = build_sum_network(complete_graph(3), Construction::one, 1);
  LinearCode code = k3_reference_code(Field(2));
  DecodingPlan& plan = code.decoders.at(TerminalId{Label::of_vertex(1)});
  plan.inputs.push_back({PlanInput::Kind::bottleneck, 2, SourceId{}, 6});
  try {
    Simulator sim(net, code);
    FAIL("undelivered input accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UndeliveredInput);
  }

  LinearCode direct = k3_reference_code(Field(2));
  direct.decoders.at(TerminalId{Label::of_vertex(1)})
      .inputs.push_back({PlanInput::Kind::direct, 0, SourceId{Label::of_vertex(1)}, 3});
  CHECK_THROWS_AS(Simulator(net, direct), Error);

  CHECK_THROWS_AS(Simulator(build_sum_network(complete_graph(3), Construction::one, 2), k3_reference_code(Field(2))),
                  Error);
}

TEST_CASE("simulation is linear") {
  std::mt19937_64 rng(12);
  for (const auto& g : {complete_graph(3), diamond_graph(), complete_bipartite(2, 3)}) {
    for (std::uint64_t p : {2, 5}) {
      const Field f(p);
      const SumNetwork net = build_sum_network(g, Construction::two, 2);
      const LinearCode code = synthesize(net, f);
      const Simulator sim(net, code);
      std::uniform_int_distribution<Elem> d(0, static_cast<Elem>(p - 1));
      for (int trial = 0; trial < 20; ++trial) {
        FieldVector x(sim.stacked_length()), y(sim.stacked_length()), s(sim.stacked_length());
        for (std::size_t k = 0; k < x.size(); ++k) {
          x[k] = d(rng);
          y[k] = d(rng);
          s[k] = f.add(x[k], y[k]);
        }
        for (const TerminalId& t : sim.terminals()) {
          const FieldVector dx = sim.decode(t, x), dy = sim.decode(t, y), ds = sim.decode(t, s);
          for (std::size_t k = 0; k < ds.size(); ++k) CHECK(ds[k] == f.add(dx[k], dy[k]));
        }
      }
    }
  }
}

TEST_CASE("algebraic and exhaustive verdicts agree on small codes and their mutants") {
  const Field f(2);
  std::mt19937_64 rng(2718);
  for (Construction c : {Construction::one, Construction::two}) {
    const SumNetwork net = build_sum_network(complete_graph(3), c, 1);
    const LinearCode code = synthesize(net, f);
    CHECK(verify_exhaustive(net, code).pass);
    CHECK(verify_algebraic(net, code).pass);
    const auto cells = used_cells(code);
    std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
    for (int k = 0; k < 6; ++k) {
      const auto [i, row, col] = cells[pick(rng)];
      const LinearCode bad = bump(code, i, row, col);
      const VerifyReport ex = verify_exhaustive(net, bad);
      const VerifyReport al = verify_algebraic(net, bad);
      CHECK(ex.pass == al.pass);
      if (!ex.pass) {
        std::set<TerminalId> found(al.failing_terminals.begin(), al.failing_terminals.end());
        for (const TerminalId& t : ex.failing_terminals) CHECK(found.count(t) == 1);
      }
    }
  }
}
