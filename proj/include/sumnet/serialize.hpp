#pragma once

// JSON documents for matrices, networks, assignments, codes and reports.
// Importers throw ParseError on malformed input and rerun the usual
// constructors' validation.

#include <json.hpp>

#include "sumnet/codegen.hpp"
#include "sumnet/feasibility.hpp"
#include "sumnet/ffield.hpp"
#include "sumnet/network.hpp"
#include "sumnet/verify.hpp"

namespace sumnet {

using Json = nlohmann::ordered_json;

Json to_json(const FieldMatrix& m);  // {rows, cols, p, entries}
FieldMatrix matrix_from_json(const Json& j);

Json to_json(const UndirectedGraph& g);  // {b, edges: [[u, v], ...]}
UndirectedGraph graph_from_json(const Json& j);

Json to_json(const SumNetwork& net);
SumNetwork network_from_json(const Json& j);

Json to_json(const FeasAssignment& a);  // {construction, m: [{i, j, at_i, at_j}], w}
FeasAssignment assignment_from_json(const Json& j);

Json to_json(const DecodingPlan& plan);
DecodingPlan plan_from_json(const Json& j);

Json to_json(const LinearCode& code);
LinearCode code_from_json(const Json& j);

Json to_json(const VerifyReport& report);

}  // namespace sumnet
