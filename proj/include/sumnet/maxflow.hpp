#pragma once

#include <cstdint>
#include <vector>

namespace sumnet {

// Edmonds-Karp maximum flow (shortest augmenting paths) on a residual graph.
class MaxFlow {
 public:
  explicit MaxFlow(int node_count);

  int add_node();
  void add_edge(int from, int to, std::int64_t capacity);
  std::int64_t run(int source, int sink);
  // Nodes reachable from the source in the final residual graph.
  [[nodiscard]] std::vector<bool> source_side(int source) const;

 private:
  struct ResidualEdge {
    int to;
    std::int64_t cap;
  };
  std::vector<ResidualEdge> edges_;  // edge k and k^1 are a residual pair
  std::vector<std::vector<int>> out_;
};

}  // namespace sumnet
