#pragma once

// Integer edge-split assignments m_(i,j)(i) that parameterize the
// capacity-achieving codes, with star widths w_i for construction 2.

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "sumnet/graph.hpp"
#include "sumnet/network.hpp"

namespace sumnet {

struct EdgeSplit {
  int at_u = 0;  // m_e(u) for e = (u, v), u < v
  int at_v = 0;  // m_e(v)
  friend bool operator==(const EdgeSplit&, const EdgeSplit&) = default;
};

struct FeasAssignment {
  Construction construction = Construction::one;
  std::map<Edge, EdgeSplit> m;
  std::map<int, int> w;  // construction 2 only; keys are cycle vertices

  // m_e(vertex); throws MissingVariable.
  [[nodiscard]] int at(const Edge& e, int vertex) const;
  void set(const Edge& e, int vertex, int value);
  // Sum of m_e(vertex) over edges e incident to vertex.
  [[nodiscard]] int load(const UndirectedGraph& g, int vertex) const;

  friend bool operator==(const FeasAssignment&, const FeasAssignment&) = default;
};

struct CheckResult {
  bool ok = true;
  std::string violation;  // first violated constraint, empty when ok

  explicit operator bool() const noexcept { return ok; }
};

// Evaluates every constraint row directly. For construction 2 the cycle is
// required; stored w values, when present, must be non-negative, fit within
// each vertex's surplus and sum to exactly b. Throws MissingVariable if some
// edge lacks a value.
CheckResult check_assignment(const UndirectedGraph& g, const FeasAssignment& a,
                             Construction c, const CycleSubgraph* cycle = nullptr);

// b even: every m = b/2. b odd: floor/ceil alternation along euler_tour(g).
// Throws NotRegular.
FeasAssignment regular_assignment(const UndirectedGraph& g);

// Left endpoints get n_left, right endpoints n_right. Throws NotBiregular.
FeasAssignment biregular_assignment(const UndirectedGraph& g);

// Fills w from raw surpluses |E|+1-load(i) on cycle vertices, lowering the
// largest (ties: smallest vertex) one unit at a time until the total is b.
// Requires the raw surpluses to be non-negative and sum to at least b.
void normalize_star_widths(const UndirectedGraph& g, const CycleSubgraph& cycle,
                           FeasAssignment& a);

// Closed forms when they apply and satisfy the system, exhaustive backtracking
// otherwise. nullopt means the search space holds no solution.
std::optional<FeasAssignment> solve_feasibility(const UndirectedGraph& g, Construction c,
                                                const CycleSubgraph* cycle = nullptr);

}  // namespace sumnet
