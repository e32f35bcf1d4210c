#include "sumnet/feasibility.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "sumnet/error.hpp"

namespace sumnet {

int FeasAssignment::at(const Edge& e, int vertex) const {
  auto it = m.find(e);
  if (it == m.end() || !e.touches(vertex)) {
    throw Error(ErrorCode::MissingVariable,
                "no value for m_" + to_string(e) + "(" + std::to_string(vertex) + ")");
  }
  return vertex == e.u ? it->second.at_u : it->second.at_v;
}

void FeasAssignment::set(const Edge& e, int vertex, int value) {
  auto& split = m[e];
  (vertex == e.u ? split.at_u : split.at_v) = value;
}

int FeasAssignment::load(const UndirectedGraph& g, int vertex) const {
  int total = 0;
  for (const Edge& e : g.incident_edges(vertex)) total += at(e, vertex);
  return total;
}

namespace {

int vertex_budget(const UndirectedGraph& g, Construction c) {
  return static_cast<int>(g.edge_count()) + (c == Construction::two ? 1 : 0);
}

CheckResult fail(std::string why) { return {false, std::move(why)}; }

}  // namespace

CheckResult check_assignment(const UndirectedGraph& g, const FeasAssignment& a,
                             Construction c, const CycleSubgraph* cycle) {
  const int b = g.vertex_count();
  for (const Edge& e : g.edges()) {
    if (!a.m.contains(e)) {
      throw Error(ErrorCode::MissingVariable, "no split for edge " + to_string(e));
    }
  }
  for (const auto& [e, split] : a.m) {
    if (!g.has_edge(e.u, e.v)) return fail("assignment names non-edge " + to_string(e));
    if (split.at_u < 0 || split.at_v < 0) {
      return fail("negative value on edge " + to_string(e));
    }
    if (split.at_u + split.at_v != b) {
      return fail("edge sum m_" + to_string(e) + "(" + std::to_string(e.u) + ") + m_" +
                  to_string(e) + "(" + std::to_string(e.v) + ") = " +
                  std::to_string(split.at_u + split.at_v) + " != b = " + std::to_string(b));
    }
  }
  const int budget = vertex_budget(g, c);
  for (int i = 1; i <= b; ++i) {
    int load = a.load(g, i);
    if (load > budget) {
      return fail("vertex " + std::to_string(i) + " load " + std::to_string(load) +
                  " exceeds " + std::to_string(budget));
    }
  }
  if (c == Construction::one) {
    if (!a.w.empty()) return fail("construction 1 assignment carries star widths");
    return {};
  }

  if (cycle == nullptr) {
    throw Error(ErrorCode::InvalidArgument, "construction 2 check requires the cycle");
  }
  int surplus_total = 0;
  for (int i : cycle->vertices) surplus_total += budget - a.load(g, i);
  if (surplus_total < b) {
    return fail("cycle surplus " + std::to_string(surplus_total) + " < b = " +
                std::to_string(b));
  }
  if (!a.w.empty()) {
    int w_total = 0;
    for (const auto& [i, wi] : a.w) {
      if (!cycle->contains(i)) {
        return fail("star width on non-cycle vertex " + std::to_string(i));
      }
      if (wi < 0 || wi > budget - a.load(g, i)) {
        return fail("star width w_" + std::to_string(i) + " = " + std::to_string(wi) +
                    " outside [0, " + std::to_string(budget - a.load(g, i)) + "]");
      }
      w_total += wi;
    }
    if (w_total != b) {
      return fail("star widths sum to " + std::to_string(w_total) + " != b = " +
                  std::to_string(b));
    }
  }
  return {};
}

FeasAssignment regular_assignment(const UndirectedGraph& g) {
  if (!std::holds_alternative<Regular>(classify(g))) {
    throw Error(ErrorCode::NotRegular, "graph is not regular");
  }
  const int b = g.vertex_count();
  FeasAssignment a;
  a.construction = Construction::one;
  if (b % 2 == 0) {
    for (const Edge& e : g.edges()) a.m[e] = {b / 2, b / 2};
    return a;
  }
  // Odd b forces even degree, so an Euler tour exists. Each traversal
  // v -> w contributes the pair (m(v), m(w)) = (floor, ceil) to the
  // alternating sequence.
  for (const auto& [from, to] : euler_tour(g)) {
    Edge e(from, to);
    a.set(e, from, b / 2);
    a.set(e, to, b - b / 2);
  }
  return a;
}

FeasAssignment biregular_assignment(const UndirectedGraph& g) {
  auto params = biregular_parameters(g);
  auto side = bipartition(g);
  if (!params || !side) {
    throw Error(ErrorCode::NotBiregular, "graph is not biregular bipartite");
  }
  FeasAssignment a;
  a.construction = Construction::one;
  for (const Edge& e : g.edges()) {
    int left = (*side)[e.u] ? e.u : e.v;
    int right = e.other(left);
    a.set(e, left, params->n_left);
    a.set(e, right, params->n_right);
  }
  return a;
}

void normalize_star_widths(const UndirectedGraph& g, const CycleSubgraph& cycle,
                           FeasAssignment& a) {
  const int b = g.vertex_count();
  const int budget = vertex_budget(g, Construction::two);
  std::map<int, int> w;
  int total = 0;
  for (int i : cycle.vertices) {
    int surplus = budget - a.load(g, i);
    if (surplus < 0) {
      throw Error(ErrorCode::InfeasibleAssignment,
                  "vertex " + std::to_string(i) + " exceeds its row budget");
    }
    w[i] = surplus;
    total += surplus;
  }
  if (total < b) {
    throw Error(ErrorCode::InfeasibleAssignment,
                "cycle surplus " + std::to_string(total) + " is below b");
  }
  while (total > b) {
    auto largest = std::max_element(w.begin(), w.end(), [](const auto& x, const auto& y) {
      return x.second < y.second;
    });
    --largest->second;
    --total;
  }
  a.w = std::move(w);
}

namespace {

class Backtracker {
 public:
  Backtracker(const UndirectedGraph& g, Construction c, const CycleSubgraph* cycle)
      : g_(g),
        b_(g.vertex_count()),
        budget_(vertex_budget(g, c)),
        cycle_(cycle),
        edges_(g.edges()),
        load_(static_cast<std::size_t>(b_) + 1, 0),
        value_(edges_.size(), 0) {
    std::stable_sort(edges_.begin(), edges_.end(), [&](const Edge& x, const Edge& y) {
      return std::max(g.degree(x.u), g.degree(x.v)) > std::max(g.degree(y.u), g.degree(y.v));
    });
    if (cycle_ != nullptr) {
      on_cycle_.assign(static_cast<std::size_t>(b_) + 1, false);
      for (int i : cycle_->vertices) on_cycle_[i] = true;
      cycle_cap_ = budget_ * static_cast<int>(cycle_->length()) - b_;
    }
    const int mid = b_ / 2;
    order_.push_back(mid);
    for (int d = 1; d <= b_; ++d) {
      if (mid + d <= b_) order_.push_back(mid + d);
      if (mid - d >= 0) order_.push_back(mid - d);
    }
  }

  std::optional<FeasAssignment> solve() {
    if (!search(0)) return std::nullopt;
    FeasAssignment a;
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      a.set(edges_[k], edges_[k].u, value_[k]);
      a.set(edges_[k], edges_[k].v, b_ - value_[k]);
    }
    return a;
  }

 private:
  bool search(std::size_t k) {
    if (!slack_ok(k)) return false;
    if (k == edges_.size()) return true;
    const Edge& e = edges_[k];
    const int lo = std::max(0, b_ - (budget_ - load_[e.v]));
    const int hi = std::min(b_, budget_ - load_[e.u]);
    for (int x : order_) {
      if (x < lo || x > hi) continue;
      load_[e.u] += x;
      load_[e.v] += b_ - x;
      value_[k] = x;
      if (search(k + 1)) return true;
      load_[e.u] -= x;
      load_[e.v] -= b_ - x;
    }
    return false;
  }

  // Necessary conditions on the edges from k onward.
  bool slack_ok(std::size_t k) const {
    const auto remaining = static_cast<long>(edges_.size() - k);
    long slack = 0;
    for (int v = 1; v <= b_; ++v) slack += budget_ - load_[v];
    if (slack < remaining * b_) return false;
    if (cycle_ == nullptr) return true;

    long cycle_load = 0;
    for (int i : cycle_->vertices) cycle_load += load_[i];
    for (std::size_t j = k; j < edges_.size(); ++j) {
      const Edge& e = edges_[j];
      if (on_cycle_[e.u] && on_cycle_[e.v]) {
        cycle_load += b_;
      } else if (on_cycle_[e.u] || on_cycle_[e.v]) {
        int outside = on_cycle_[e.u] ? e.v : e.u;
        cycle_load += std::max(0, b_ - (budget_ - load_[outside]));
      }
    }
    return cycle_load <= cycle_cap_;
  }

  const UndirectedGraph& g_;
  int b_;
  int budget_;
  const CycleSubgraph* cycle_;
  std::vector<Edge> edges_;
  std::vector<int> load_;
  std::vector<int> value_;
  std::vector<int> order_;
  std::vector<bool> on_cycle_;
  int cycle_cap_ = 0;
};

}  // namespace

std::optional<FeasAssignment> solve_feasibility(const UndirectedGraph& g, Construction c,
                                                const CycleSubgraph* cycle) {
  std::optional<CycleSubgraph> default_cycle;
  if (c == Construction::two && cycle == nullptr) {
    default_cycle = shortest_cycle(g);
    cycle = &*default_cycle;
  }
  const CycleSubgraph* check_cycle = c == Construction::two ? cycle : nullptr;

  auto finish = [&](FeasAssignment a) {
    a.construction = c;
    if (c == Construction::two) normalize_star_widths(g, *cycle, a);
    return a;
  };

  std::vector<FeasAssignment> closed_forms;
  if (std::holds_alternative<Regular>(classify(g))) closed_forms.push_back(regular_assignment(g));
  if (biregular_parameters(g)) closed_forms.push_back(biregular_assignment(g));
  for (auto& a : closed_forms) {
    if (check_assignment(g, a, c, check_cycle)) return finish(std::move(a));
  }

  Backtracker search(g, c, check_cycle);
  if (auto a = search.solve()) return finish(std::move(*a));
  return std::nullopt;
}

}  // namespace sumnet
