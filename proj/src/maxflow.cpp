#include "sumnet/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace sumnet {

MaxFlow::MaxFlow(int node_count) : out_(static_cast<std::size_t>(node_count)) {}

int MaxFlow::add_node() {
  out_.emplace_back();
  return static_cast<int>(out_.size()) - 1;
}

void MaxFlow::add_edge(int from, int to, std::int64_t capacity) {
  out_[from].push_back(static_cast<int>(edges_.size()));
  edges_.push_back({to, capacity});
  out_[to].push_back(static_cast<int>(edges_.size()));
  edges_.push_back({from, 0});
}

std::int64_t MaxFlow::run(int source, int sink) {
  std::int64_t total = 0;
  std::vector<int> via(out_.size());
  while (true) {
    std::fill(via.begin(), via.end(), -1);
    std::queue<int> q;
    q.push(source);
    via[source] = -2;
    while (!q.empty() && via[sink] == -1) {
      int v = q.front();
      q.pop();
      for (int id : out_[v]) {
        const auto& e = edges_[id];
        if (e.cap > 0 && via[e.to] == -1) {
          via[e.to] = id;
          q.push(e.to);
        }
      }
    }
    if (via[sink] == -1) return total;

    std::int64_t push = std::numeric_limits<std::int64_t>::max();
    for (int v = sink; v != source; v = edges_[via[v] ^ 1].to) {
      push = std::min(push, edges_[via[v]].cap);
    }
    for (int v = sink; v != source; v = edges_[via[v] ^ 1].to) {
      edges_[via[v]].cap -= push;
      edges_[via[v] ^ 1].cap += push;
    }
    total += push;
  }
}

std::vector<bool> MaxFlow::source_side(int source) const {
  std::vector<bool> seen(out_.size(), false);
  std::vector<int> stack{source};
  seen[source] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int id : out_[v]) {
      const auto& e = edges_[id];
      if (e.cap > 0 && !seen[e.to]) {
        seen[e.to] = true;
        stack.push_back(e.to);
      }
    }
  }
  return seen;
}

}  // namespace sumnet
