#pragma once

// Linear network codes over GF(p): one encoder matrix per bottleneck and a
// linear decoding plan per terminal.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sumnet/feasibility.hpp"
#include "sumnet/ffield.hpp"
#include "sumnet/network.hpp"

namespace sumnet {

// One group of symbols delivered to a terminal: the full output of a
// bottleneck (all alpha pipes) or a source message over a direct edge.
struct PlanInput {
  enum class Kind { bottleneck, direct };

  Kind kind = Kind::bottleneck;
  int vertex = 0;        // bottleneck e_vertex
  SourceId source{};     // direct source
  std::size_t width = 0; // symbols

  friend bool operator==(const PlanInput&, const PlanInput&) = default;
};

struct Operand {
  enum class Kind { input, step };
  Kind kind = Kind::input;
  std::size_t index = 0;
  friend bool operator==(const Operand&, const Operand&) = default;
};

// dest[to_offset + t] += coeff * operand[from_offset + t], t in [0, length)
struct Term {
  Operand from;
  std::size_t from_offset = 0;
  std::size_t to_offset = 0;
  std::size_t length = 0;
  Elem coeff = 1;
  friend bool operator==(const Term&, const Term&) = default;
};

// Each step defines one register of `width` symbols, starting from zero.
// Terms may read inputs or registers of earlier steps only.
struct Step {
  std::string label;
  std::vector<Term> terms;
  friend bool operator==(const Step&, const Step&) = default;
};

class DecodingPlan {
 public:
  std::vector<PlanInput> inputs;
  std::size_t width = 0;
  std::vector<Step> steps;
  std::size_t output = 0;  // step whose register is the decoded sum

  [[nodiscard]] std::size_t received_width() const;
  // Throws InvalidArgument when a term is out of range or reads ahead.
  void validate() const;
  // `received` concatenates the symbols of inputs[0], inputs[1], ...
  [[nodiscard]] FieldVector execute(const Field& f, std::span<const Elem> received) const;
  // width x received_width() matrix of the whole plan.
  [[nodiscard]] FieldMatrix compile(const Field& f) const;

  friend bool operator==(const DecodingPlan&, const DecodingPlan&) = default;
};

// Incremental construction of a DecodingPlan.
class PlanBuilder {
 public:
  explicit PlanBuilder(std::size_t width) { plan_.width = width; }

  std::size_t bottleneck(int vertex, std::size_t width);
  std::size_t direct(const SourceId& s, std::size_t width);
  std::size_t step(std::string label);
  // Adds `length` symbols of input `input` starting at from_offset.
  void add_input(std::size_t step, std::size_t input, std::size_t from_offset,
                 std::size_t to_offset, std::size_t length, Elem coeff);
  // Adds a whole earlier register.
  void add_step(std::size_t step, std::size_t source_step, Elem coeff);
  DecodingPlan finish(std::size_t output);

 private:
  DecodingPlan plan_;
};

struct LinearCode {
  Field field;
  int r = 0;
  int l = 0;
  int alpha = 1;
  Construction construction = Construction::one;
  std::vector<Edge> edge_order;
  std::vector<SourceId> layout;           // stacked message order
  std::map<int, FieldMatrix> encoders;    // (alpha*l) x (layout.size()*alpha*r)
  std::map<TerminalId, DecodingPlan> decoders;

  [[nodiscard]] std::size_t message_width() const {
    return static_cast<std::size_t>(alpha) * static_cast<std::size_t>(r);
  }
  [[nodiscard]] std::size_t stacked_length() const { return layout.size() * message_width(); }
  // Column of coordinate `coord` of message `s`.
  [[nodiscard]] std::size_t column(const SourceId& s, std::size_t coord) const;

  friend bool operator==(const LinearCode&, const LinearCode&) = default;
};

// Block layout per bottleneck: the A_i sum (r rows), one identity block per
// incident edge in canonical order, the star block on cycle vertices, zero
// padding to l. The result is repeated net.alpha() times. Throws
// InfeasibleAssignment when `a` fails check_assignment.
LinearCode synthesize_code(const SumNetwork& net, const FeasAssignment& a, const Field& f);

// alpha independent replicas of `code`, one per unit pipe.
LinearCode repeat_code(const LinearCode& code, int alpha);

Rational achieved_rate(const LinearCode& code);

}  // namespace sumnet
