#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "sumnet/codegen.hpp"
#include "sumnet/error.hpp"
#include "sumnet/fixtures.hpp"
#include "sumnet/verify.hpp"

using namespace sumnet;

namespace {

const SourceId kStar{Label::star()};

// Rows of the three K_3 encoders as drawn: columns X_1 X_2 X_3 X_(1,2)
// X_(1,3) X_(2,3), three coordinates each.
const std::map<int, std::vector<std::string>> kK3Reference{
    {1,
     {"100000000100100000", "010000000010010000", "001000000001001000", "000000000100000000",
      "000000000000100000", "000000000000010000"}},
    {2,
     {"000100000100000100", "000010000010000010", "000001000001000001", "000000000010000000",
      "000000000001000000", "000000000000000100"}},
    {3,
     {"000000100000100100", "000000010000010010", "000000001000001001", "000000000000001000",
      "000000000000000010", "000000000000000001"}},
};

struct Case {
  std::string name;
  UndirectedGraph g;
  Construction c;
};

std::vector<Case> cases() {
  return {{"K3 c1", complete_graph(3), Construction::one},
          {"K3 c2", complete_graph(3), Construction::two},
          {"diamond c2", diamond_graph(), Construction::two},
          {"K4 c1", complete_graph(4), Construction::one},
          {"K3,5 c1", complete_bipartite(3, 5), Construction::one},
          {"petersen c2", petersen_graph(), Construction::two},
          {"C5 c1", cycle_graph(5), Construction::one},
          {"C5 c2", cycle_graph(5), Construction::two}};
}

LinearCode synthesize(const SumNetwork& net, const Field& f) {
  const CycleSubgraph* cyc = net.cycle() ? &*net.cycle() : nullptr;
  const auto a = solve_feasibility(net.seed(), net.construction(), cyc);
  REQUIRE(a.has_value());
  return synthesize_code(net, *a, f);
}

// Coordinates of message s read by encoder rows [first, last).
std::vector<std::size_t> coords_in_rows(const LinearCode& code, const FieldMatrix& enc, const SourceId& s,
                                        std::size_t first, std::size_t last) {
  std::vector<std::size_t> out;
  for (std::size_t row = first; row < last; ++row) {
    for (std::size_t c = 0; c < code.message_width(); ++c) {
      if (enc.at(row, code.column(s, c)) != 0) out.push_back(c);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("K3 reference encoders bit for bit") {
  const SumNetwork net = build_sum_network(complete_graph(3), Construction::one, 1);
  const LinearCode code = synthesize_code(net, k3_example_assignment(), Field(2));
  CHECK(code.r == 3);
  CHECK(code.l == 6);
  CHECK(code.edge_order == std::vector<Edge>{{1, 2}, {1, 3}, {2, 3}});
  for (const auto& [i, rows] : kK3Reference) {
    const FieldMatrix& enc = code.encoders.at(i);
    REQUIRE(enc.rows() == 6);
    REQUIRE(enc.cols() == 18);
    for (std::size_t r = 0; r < 6; ++r) {
      std::string got;
      for (std::size_t c = 0; c < 18; ++c) got += static_cast<char>('0' + enc.at(r, c));
      CHECK_MESSAGE(got == rows[r], "e_" << i << " row " << r);
    }
  }
}

TEST_CASE("encoders read only their A sets and stay within l rows") {
  for (const Case& k : cases()) {
    for (std::uint64_t p : {2, 3}) {
      const SumNetwork net = build_sum_network(k.g, k.c, 1);
      const LinearCode code = synthesize(net, Field(p));
      for (const auto& [i, enc] : code.encoders) {
        for (const SourceId& s : net.sources()) {
          if (net.a_set(i).count(s)) continue;
          for (std::size_t c = 0; c < code.message_width(); ++c) {
            for (std::size_t row = 0; row < enc.rows(); ++row) REQUIRE(enc.at(row, code.column(s, c)) == 0);
          }
        }
        // Sum block, then the edge and star blocks; everything below is zero.
        std::size_t used = code.r;
        for (const Edge& e : k.g.incident_edges(i)) {
          used += coords_in_rows(code, enc, SourceId{Label::of_edge(e)}, code.r, enc.rows()).size();
        }
        if (net.cycle() && net.cycle()->contains(i)) {
          for (std::size_t row = used; row < enc.rows(); ++row) {
            bool only_star = true;
            bool any = false;
            for (std::size_t c = 0; c < enc.cols(); ++c) {
              if (enc.at(row, c) == 0) continue;
              any = true;
              only_star = only_star && c >= code.column(kStar, 0);
            }
            if (any && only_star) ++used;
          }
        }
        CHECK(used <= static_cast<std::size_t>(code.l));
        CHECK(enc.row_slice(used, enc.rows() - used).is_zero());
      }
    }
  }
}

TEST_CASE("edge blocks split each edge message between its endpoints") {
  for (const Case& k : cases()) {
    const SumNetwork net = build_sum_network(k.g, k.c, 1);
    const LinearCode code = synthesize(net, Field(3));
    for (const Edge& e : k.g.edges()) {
      const SourceId s{Label::of_edge(e)};
      auto at_u = coords_in_rows(code, code.encoders.at(e.u), s, code.r, code.l);
      auto at_v = coords_in_rows(code, code.encoders.at(e.v), s, code.r, code.l);
      std::set<std::size_t> all(at_u.begin(), at_u.end());
      all.insert(at_v.begin(), at_v.end());
      CHECK(at_u.size() + at_v.size() == static_cast<std::size_t>(code.r));
      CHECK(all.size() == static_cast<std::size_t>(code.r));
    }
  }
}

TEST_CASE("star blocks tile the starred message") {
  for (const Case& k : cases()) {
    if (k.c != Construction::two) continue;
    const SumNetwork net = build_sum_network(k.g, k.c, 1);
    const LinearCode code = synthesize(net, Field(2));
    std::vector<std::size_t> covered;
    for (const auto& [i, enc] : code.encoders) {
      for (std::size_t row = code.r; row < enc.rows(); ++row) {
        bool only_star = true;
        std::optional<std::size_t> coord;
        for (std::size_t c = 0; c < enc.cols(); ++c) {
          if (enc.at(row, c) == 0) continue;
          if (c < code.column(kStar, 0)) {
            only_star = false;
          } else {
            coord = c - code.column(kStar, 0);
          }
        }
        if (only_star && coord) covered.push_back(*coord);
      }
    }
    std::sort(covered.begin(), covered.end());
    std::vector<std::size_t> want(code.message_width());
    for (std::size_t c = 0; c < want.size(); ++c) want[c] = c;
    CHECK_MESSAGE(covered == want, k.name);
  }
}

TEST_CASE("rates meet the bounds and codes decode") {
  for (const Case& k : cases()) {
    for (std::uint64_t p : {2, 3, 5}) {
      const SumNetwork net = build_sum_network(k.g, k.c, 1);
      const LinearCode code = synthesize(net, Field(p));
      CHECK_MESSAGE(achieved_rate(code) == capacity_upper_bound(k.g, k.c, 1), k.name);
      CHECK_MESSAGE(verify_algebraic(net, code).pass, k.name << " p=" << p);
    }
  }
  std::mt19937_64 rng(41);
  int feasible = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const UndirectedGraph g = oracle::random_graph(rng, 3, 7);
    for (Construction c : {Construction::one, Construction::two}) {
      const SumNetwork net = build_sum_network(g, c, 1);
      const CycleSubgraph* cyc = net.cycle() ? &*net.cycle() : nullptr;
      const auto a = solve_feasibility(g, c, cyc);
      if (!a) continue;
      ++feasible;
      const LinearCode code = synthesize_code(net, *a, Field(3));
      CHECK(achieved_rate(code) == capacity_upper_bound(g, c, 1));
      CHECK(verify_algebraic(net, code).pass);
    }
  }
  CHECK(feasible > 0);
}

TEST_CASE("Petersen code from the reference assignment") {
  const SumNetwork net = build_sum_network(petersen_graph(), Construction::two, 1);
  const LinearCode code = synthesize_code(net, petersen_reference_assignment(), Field(2));
  CHECK(code.r == 10);
  CHECK(code.l == 26);
  CHECK(achieved_rate(code) == Rational(5, 13));
  CHECK(verify_algebraic(net, code).pass);
}

TEST_CASE("infeasible assignments are rejected") {
  const SumNetwork net = build_sum_network(complete_graph(3), Construction::one, 1);
  FeasAssignment bad;
  for (const Edge& e : net.seed().edges()) bad.m[e] = {2, 2};
  try {
    (void)synthesize_code(net, bad, Field(2));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleAssignment);
  }
}

TEST_CASE("zero messages encode to zero") {
  const SumNetwork net = build_sum_network(diamond_graph(), Construction::two, 1);
  const LinearCode code = synthesize(net, Field(5));
  const FieldVector zero(code.stacked_length(), 0);
  for (const auto& [i, enc] : code.encoders) {
    for (Elem v : mat_vec(enc, zero)) CHECK(v == 0);
  }
}

TEST_CASE("repetition") {
  const SumNetwork k3 = build_sum_network(complete_graph(3), Construction::one, 1);
  const LinearCode base = synthesize(k3, Field(2));
  CHECK(repeat_code(base, 1) == base);

  const LinearCode twice = repeat_code(base, 2);
  CHECK(achieved_rate(twice) == Rational(1));
  CHECK(twice.message_width() == 6);
  CHECK(verify_algebraic(build_sum_network(complete_graph(3), Construction::one, 2), twice).pass);

  // Replica k of each message only feeds replica k of each pipe.
  for (const auto& [i, enc] : twice.encoders) {
    for (std::size_t row = 0; row < enc.rows(); ++row) {
      for (std::size_t col = 0; col < enc.cols(); ++col) {
        if (enc.at(row, col) == 0) continue;
        CHECK(row / 6 == (col % 6) / 3);
      }
    }
  }

  const SumNetwork diamond = build_sum_network(diamond_graph(), Construction::two, 5);
  const LinearCode five = synthesize(diamond, Field(3));
  CHECK(five.alpha == 5);
  CHECK(achieved_rate(five) == Rational(2));
  CHECK(verify_algebraic(diamond, five).pass);
}

TEST_CASE("plans compile to the same map they execute") {
  std::mt19937_64 rng(8);
  for (const Case& k : cases()) {
    const Field f(5);
    const SumNetwork net = build_sum_network(k.g, k.c, 1);
    const LinearCode code = synthesize(net, f);
    for (const auto& [t, plan] : code.decoders) {
      const FieldMatrix m = plan.compile(f);
      std::uniform_int_distribution<Elem> d(0, 4);
      FieldVector received(plan.received_width());
      for (auto& v : received) v = d(rng);
      CHECK(plan.execute(f, received) == mat_vec(m, received));
    }
  }
}

TEST_CASE("plan validation") {
  PlanBuilder pb(2);
  const std::size_t in = pb.bottleneck(1, 4);
  CHECK(pb.bottleneck(1, 4) == in);
  const std::size_t s0 = pb.step("a");
  pb.add_input(s0, in, 2, 0, 2, 1);
  DecodingPlan ok = pb.finish(s0);
  CHECK(ok.received_width() == 4);

  DecodingPlan ahead = ok;
  ahead.steps.push_back({"b", {{Operand{Operand::Kind::step, 1}, 0, 0, 2, 1}}});
  CHECK_THROWS_AS(ahead.validate(), Error);
  DecodingPlan overrun = ok;
  overrun.steps[0].terms[0].from_offset = 3;
  CHECK_THROWS_AS(overrun.validate(), Error);
  DecodingPlan wide = ok;
  wide.steps[0].terms[0].to_offset = 1;
  CHECK_THROWS_AS(wide.validate(), Error);
  CHECK_THROWS_AS((void)ok.execute(Field(2), FieldVector{1, 2, 3}), Error);
}
