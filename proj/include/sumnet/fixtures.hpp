#pragma once

// Worked examples as reusable values: named seed graphs, reference
// assignments, and the characteristic-dependent network with its two codes.

#include <string>
#include <vector>

#include "sumnet/codegen.hpp"
#include "sumnet/feasibility.hpp"
#include "sumnet/graph.hpp"
#include "sumnet/network.hpp"

namespace sumnet {

UndirectedGraph complete_graph(int n);
// Left part 1..a, right part a+1..a+c.
UndirectedGraph complete_bipartite(int a, int c);
UndirectedGraph cycle_graph(int n);
// Outer cycle 1..5, spokes i-(i+5), inner pentagram 6-8-10-7-9-6.
UndirectedGraph petersen_graph();
// K_4 minus the edge (2,4): four vertices, five edges.
UndirectedGraph diamond_graph();

// m_(1,2) = 1/2, m_(1,3) = 2/1, m_(2,3) = 1/2 on K_3.
FeasAssignment k3_example_assignment();
// 4 on the cycle side of each spoke, 6 on the other side, 5 elsewhere,
// w_i = 2 on the outer cycle.
FeasAssignment petersen_reference_assignment();

// Construction-2 network of diamond_graph() with cycle {1,2,3}, plus the wiring
// s_star -> tail(e_4). Every A_i then holds X_star.
SumNetwork build_star_wired_network();

enum class StarCodeVariant { char2, general };
std::string to_string(StarCodeVariant v);

// char2: rate 4/9, t_star adds every received partial sum. general: rate
// 4/10, the tenth row of e_i carries X_star[i] and t_star peels off every
// message. CharacteristicMismatch when the field does not suit the variant
// unless `enforce_characteristic` is false.
LinearCode star_wired_code(StarCodeVariant v, const Field& f, bool enforce_characteristic = true);

struct NamedExample {
  std::string name;
  UndirectedGraph graph;
  Construction construction;
  Rational capacity;
};

// K5-construction1, diamond-construction2, petersen-construction2,
// K3,5-construction1.
std::vector<NamedExample> named_examples();

}  // namespace sumnet
