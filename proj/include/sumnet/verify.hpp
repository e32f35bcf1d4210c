#pragma once

// Correctness checks for a (network, code) pair: exhaustive and seeded
// random simulation, and exact composition of the linear maps.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sumnet/codegen.hpp"
#include "sumnet/network.hpp"

namespace sumnet {

enum class VerifyMode { exhaustive, random, algebraic };
std::string to_string(VerifyMode m);
VerifyMode verify_mode_from_string(const std::string& s);  // throws InvalidArgument

struct VerifyFailure {
  TerminalId terminal;
  FieldVector instantiation;  // stacked source vector
  FieldVector expected;
  FieldVector decoded;
  friend bool operator==(const VerifyFailure&, const VerifyFailure&) = default;
};

struct VerifyReport {
  VerifyMode mode = VerifyMode::algebraic;
  bool pass = true;
  std::uint64_t trials = 0;
  std::optional<std::uint64_t> seed;
  std::optional<VerifyFailure> failure;
  // Terminals failing at the witness (every failing terminal in algebraic mode).
  std::vector<TerminalId> failing_terminals;
  friend bool operator==(const VerifyReport&, const VerifyReport&) = default;
};

inline constexpr std::uint64_t kExhaustiveGuard = std::uint64_t{1} << 24;

// Runs the network: sources feed bottleneck tails, encoders act on what each
// tail actually receives, heads forward to terminals, terminals apply their
// decoding plans. Throws UndeliveredInput if a plan reads a symbol group the
// wiring does not deliver, InvalidArgument if code and network disagree.
class Simulator {
 public:
  Simulator(const SumNetwork& net, const LinearCode& code);

  [[nodiscard]] std::size_t stacked_length() const noexcept { return stacked_; }
  [[nodiscard]] const std::vector<TerminalId>& terminals() const noexcept { return terminals_; }
  [[nodiscard]] FieldVector expected_sum(std::span<const Elem> x) const;
  [[nodiscard]] FieldVector decode(const TerminalId& t, std::span<const Elem> x) const;
  // Terminals whose output differs from the sum, in terminal order.
  [[nodiscard]] std::vector<TerminalId> failing_terminals(std::span<const Elem> x) const;
  // Bottleneck e_i output as received by tail(e_i) wiring, alpha*l symbols.
  [[nodiscard]] FieldVector bottleneck_output(int i, std::span<const Elem> x) const;
  // Encoder of e_i with columns of undelivered messages zeroed.
  [[nodiscard]] const FieldMatrix& effective_encoder(int i) const;

 private:
  struct Delivery {
    bool bottleneck;
    int vertex;
    std::size_t message;
  };

  const LinearCode& code_;
  std::size_t width_;
  std::size_t stacked_;
  std::size_t message_count_;
  std::vector<TerminalId> terminals_;
  std::map<int, FieldMatrix> effective_;
  std::map<int, std::vector<std::vector<std::pair<std::size_t, Elem>>>> sparse_;
  std::map<TerminalId, std::vector<Delivery>> deliveries_;
};

// Requires p^(stacked length) <= 2^24 unless allow_large is set
// (StateSpaceTooLarge otherwise).
VerifyReport verify_exhaustive(const SumNetwork& net, const LinearCode& code,
                               bool allow_large = false);

// Trial k draws its instantiation from (seed, k) only, so the report does not
// depend on `workers` (0 picks the hardware concurrency).
VerifyReport verify_random(const SumNetwork& net, const LinearCode& code,
                           std::uint64_t trials, std::uint64_t seed, unsigned workers = 0);

// Each terminal's plan matrix times the rows it receives must equal
// [I I ... I] over all messages.
VerifyReport verify_algebraic(const SumNetwork& net, const LinearCode& code);

// Greedily zeroes message slices while some terminal still fails.
FieldVector minimize_witness(const Simulator& sim, std::size_t message_width,
                             FieldVector x);

}  // namespace sumnet
