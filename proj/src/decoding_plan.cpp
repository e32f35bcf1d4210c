#include "sumnet/codegen.hpp"

#include "sumnet/error.hpp"

namespace sumnet {

std::size_t DecodingPlan::received_width() const {
  std::size_t total = 0;
  for (const PlanInput& in : inputs) total += in.width;
  return total;
}

void DecodingPlan::validate() const {
  auto bad = [](const std::string& why) { throw Error(ErrorCode::InvalidArgument, why); };
  if (output >= steps.size()) bad("plan output names a missing step");
  for (std::size_t s = 0; s < steps.size(); ++s) {
    for (const Term& t : steps[s].terms) {
      if (t.to_offset + t.length > width) bad("term writes past the register width");
      std::size_t source_width = 0;
      if (t.from.kind == Operand::Kind::input) {
        if (t.from.index >= inputs.size()) bad("term reads a missing input");
        source_width = inputs[t.from.index].width;
      } else {
        if (t.from.index >= s) bad("term reads a register that is not yet defined");
        source_width = width;
      }
      if (t.from_offset + t.length > source_width) bad("term reads past its operand");
    }
  }
}

FieldVector DecodingPlan::execute(const Field& f, std::span<const Elem> received) const {
  if (received.size() != received_width()) {
    throw Error(ErrorCode::DimensionMismatch,
                "plan expects " + std::to_string(received_width()) + " received symbols");
  }
  std::vector<std::size_t> input_offset;
  std::size_t total = 0;
  for (const PlanInput& in : inputs) {
    input_offset.push_back(total);
    total += in.width;
  }
  // Registers laid out back to back.
  std::vector<Elem> regs(steps.size() * width, 0);
  for (std::size_t s = 0; s < steps.size(); ++s) {
    Elem* dest = regs.data() + s * width;
    for (const Term& t : steps[s].terms) {
      const Elem* src = t.from.kind == Operand::Kind::input
                            ? received.data() + input_offset[t.from.index]
                            : regs.data() + t.from.index * width;
      for (std::size_t k = 0; k < t.length; ++k) {
        Elem& slot = dest[t.to_offset + k];
        slot = f.add(slot, f.mul(t.coeff, src[t.from_offset + k]));
      }
    }
  }
  auto first = regs.begin() + static_cast<std::ptrdiff_t>(output * width);
  return {first, first + static_cast<std::ptrdiff_t>(width)};
}

FieldMatrix DecodingPlan::compile(const Field& f) const {
  validate();
  std::vector<std::size_t> input_offset;
  std::size_t total = 0;
  for (const PlanInput& in : inputs) {
    input_offset.push_back(total);
    total += in.width;
  }
  std::vector<FieldMatrix> regs;
  regs.reserve(steps.size());
  for (const Step& step : steps) {
    FieldMatrix reg(f, width, total);
    for (const Term& t : step.terms) {
      for (std::size_t k = 0; k < t.length; ++k) {
        const std::size_t row = t.to_offset + k;
        if (t.from.kind == Operand::Kind::input) {
          reg.add_to(row, input_offset[t.from.index] + t.from_offset + k, t.coeff);
        } else {
          auto src = regs[t.from.index].row(t.from_offset + k);
          for (std::size_t c = 0; c < total; ++c) {
            if (src[c] != 0) reg.add_to(row, c, f.mul(t.coeff, src[c]));
          }
        }
      }
    }
    regs.push_back(std::move(reg));
  }
  return regs.at(output);
}

std::size_t PlanBuilder::bottleneck(int vertex, std::size_t width) {
  for (std::size_t k = 0; k < plan_.inputs.size(); ++k) {
    const auto& in = plan_.inputs[k];
    if (in.kind == PlanInput::Kind::bottleneck && in.vertex == vertex) return k;
  }
  plan_.inputs.push_back({PlanInput::Kind::bottleneck, vertex, SourceId{}, width});
  return plan_.inputs.size() - 1;
}

std::size_t PlanBuilder::direct(const SourceId& s, std::size_t width) {
  for (std::size_t k = 0; k < plan_.inputs.size(); ++k) {
    const auto& in = plan_.inputs[k];
    if (in.kind == PlanInput::Kind::direct && in.source == s) return k;
  }
  plan_.inputs.push_back({PlanInput::Kind::direct, 0, s, width});
  return plan_.inputs.size() - 1;
}

std::size_t PlanBuilder::step(std::string label) {
  plan_.steps.push_back({std::move(label), {}});
  return plan_.steps.size() - 1;
}

void PlanBuilder::add_input(std::size_t step, std::size_t input, std::size_t from_offset,
                            std::size_t to_offset, std::size_t length, Elem coeff) {
  plan_.steps.at(step).terms.push_back(
      {Operand{Operand::Kind::input, input}, from_offset, to_offset, length, coeff});
}

void PlanBuilder::add_step(std::size_t step, std::size_t source_step, Elem coeff) {
  plan_.steps.at(step).terms.push_back(
      {Operand{Operand::Kind::step, source_step}, 0, 0, plan_.width, coeff});
}

DecodingPlan PlanBuilder::finish(std::size_t output) {
  plan_.output = output;
  plan_.validate();
  return std::move(plan_);
}

}  // namespace sumnet
