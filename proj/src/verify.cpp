#include "sumnet/verify.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <random>
#include <thread>

#include "sumnet/error.hpp"

namespace sumnet {

std::string to_string(VerifyMode m) {
  switch (m) {
    case VerifyMode::exhaustive: return "exhaustive";
    case VerifyMode::random: return "random";
    case VerifyMode::algebraic: return "algebraic";
  }
  return "?";
}

VerifyMode verify_mode_from_string(const std::string& s) {
  if (s == "exhaustive") return VerifyMode::exhaustive;
  if (s == "random") return VerifyMode::random;
  if (s == "algebraic") return VerifyMode::algebraic;
  throw Error(ErrorCode::InvalidArgument, "unknown verification mode \"" + s + "\"");
}

Simulator::Simulator(const SumNetwork& net, const LinearCode& code)
    : code_(code),
      width_(code.message_width()),
      stacked_(code.stacked_length()),
      message_count_(code.layout.size()),
      terminals_(net.terminals()) {
  if (code.alpha != net.alpha()) {
    throw Error(ErrorCode::InvalidArgument,
                "code repeats " + std::to_string(code.alpha) + " times but edges carry alpha = " +
                    std::to_string(net.alpha()));
  }
  if (code.layout != net.sources()) {
    throw Error(ErrorCode::InvalidArgument, "code message layout does not match the network");
  }
  const std::size_t pipe_rows = static_cast<std::size_t>(code.alpha) * code.l;

  for (const NodeId& node : net.nodes()) {
    if (node.role == Role::tail) {
      const int i = node.label.vertex;
      auto enc = code.encoders.find(i);
      if (enc == code.encoders.end()) {
        throw Error(ErrorCode::InvalidArgument, "code has no encoder for e_" + std::to_string(i));
      }
      if (enc->second.rows() != pipe_rows || enc->second.cols() != stacked_) {
        throw Error(ErrorCode::DimensionMismatch,
                    "encoder for e_" + std::to_string(i) + " has the wrong shape");
      }
      std::vector<bool> delivered(message_count_, false);
      for (const SourceId& s : net.wired_sources(i)) delivered[net.source_index(s)] = true;
      FieldMatrix eff(code.field, enc->second.rows(), enc->second.cols());
      std::vector<std::vector<std::pair<std::size_t, Elem>>> rows(eff.rows());
      for (std::size_t r = 0; r < eff.rows(); ++r) {
        for (std::size_t c = 0; c < eff.cols(); ++c) {
          const Elem v = enc->second.at(r, c);
          if (v != 0 && delivered[c / width_]) {
            eff.set(r, c, v);
            rows[r].emplace_back(c, v);
          }
        }
      }
      effective_.emplace(i, std::move(eff));
      sparse_.emplace(i, std::move(rows));
    } else if (node.role == Role::terminal) {
      const TerminalId t{node.label};
      auto plan = code.decoders.find(t);
      if (plan == code.decoders.end()) {
        throw Error(ErrorCode::InvalidArgument, "code has no decoder for " + to_string(t));
      }
      std::vector<Delivery> feed;
      for (const PlanInput& in : plan->second.inputs) {
        if (in.kind == PlanInput::Kind::bottleneck) {
          if (!net.has_link(NodeId::head(in.vertex), node) || in.width != pipe_rows) {
            throw Error(ErrorCode::UndeliveredInput,
                        to_string(t) + " reads e_" + std::to_string(in.vertex) +
                            " which the network does not deliver to it");
          }
          feed.push_back({true, in.vertex, 0});
        } else {
          if (!net.has_link(NodeId::source(in.source), node) || in.width != width_) {
            throw Error(ErrorCode::UndeliveredInput,
                        to_string(t) + " reads " + to_string(in.source) +
                            " without a direct edge");
          }
          feed.push_back({false, 0, net.source_index(in.source)});
        }
      }
      if (plan->second.width != width_) {
        throw Error(ErrorCode::DimensionMismatch, "decoder width differs from message width");
      }
      deliveries_.emplace(t, std::move(feed));
    }
  }
}

FieldVector Simulator::expected_sum(std::span<const Elem> x) const {
  const Field& f = code_.field;
  FieldVector sum(width_, 0);
  for (std::size_t m = 0; m < message_count_; ++m) {
    for (std::size_t c = 0; c < width_; ++c) sum[c] = f.add(sum[c], x[m * width_ + c]);
  }
  return sum;
}

FieldVector Simulator::bottleneck_output(int i, std::span<const Elem> x) const {
  const std::uint64_t p = code_.field.characteristic();
  const auto& rows = sparse_.at(i);
  FieldVector y(rows.size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::uint64_t acc = 0;
    for (const auto& [c, v] : rows[r]) acc += std::uint64_t{v} * x[c];
    y[r] = static_cast<Elem>(acc % p);
  }
  return y;
}

const FieldMatrix& Simulator::effective_encoder(int i) const { return effective_.at(i); }

FieldVector Simulator::decode(const TerminalId& t, std::span<const Elem> x) const {
  FieldVector received;
  for (const Delivery& d : deliveries_.at(t)) {
    if (d.bottleneck) {
      auto y = bottleneck_output(d.vertex, x);
      received.insert(received.end(), y.begin(), y.end());
    } else {
      auto first = x.begin() + static_cast<std::ptrdiff_t>(d.message * width_);
      received.insert(received.end(), first, first + static_cast<std::ptrdiff_t>(width_));
    }
  }
  return code_.decoders.at(t).execute(code_.field, received);
}

std::vector<TerminalId> Simulator::failing_terminals(std::span<const Elem> x) const {
  std::map<int, FieldVector> outputs;
  for (const auto& [i, rows] : sparse_) outputs.emplace(i, bottleneck_output(i, x));
  const FieldVector want = expected_sum(x);

  std::vector<TerminalId> failing;
  FieldVector received;
  for (const TerminalId& t : terminals_) {
    received.clear();
    for (const Delivery& d : deliveries_.at(t)) {
      if (d.bottleneck) {
        const auto& y = outputs.at(d.vertex);
        received.insert(received.end(), y.begin(), y.end());
      } else {
        auto first = x.begin() + static_cast<std::ptrdiff_t>(d.message * width_);
        received.insert(received.end(), first, first + static_cast<std::ptrdiff_t>(width_));
      }
    }
    if (code_.decoders.at(t).execute(code_.field, received) != want) failing.push_back(t);
  }
  return failing;
}

FieldVector minimize_witness(const Simulator& sim, std::size_t message_width, FieldVector x) {
  const std::size_t messages = message_width == 0 ? 0 : x.size() / message_width;
  for (std::size_t m = 0; m < messages; ++m) {
    FieldVector trial = x;
    std::fill_n(trial.begin() + static_cast<std::ptrdiff_t>(m * message_width), message_width, 0);
    if (trial != x && !sim.failing_terminals(trial).empty()) x = std::move(trial);
  }
  return x;
}

namespace {

VerifyReport failure_report(VerifyMode mode, std::uint64_t trials, const Simulator& sim,
                            const LinearCode& code, FieldVector x) {
  x = minimize_witness(sim, code.message_width(), std::move(x));
  VerifyReport report;
  report.mode = mode;
  report.pass = false;
  report.trials = trials;
  report.failing_terminals = sim.failing_terminals(x);
  const TerminalId& t = report.failing_terminals.front();
  report.failure = VerifyFailure{t, x, sim.expected_sum(x), sim.decode(t, x)};
  return report;
}

}  // namespace

VerifyReport verify_exhaustive(const SumNetwork& net, const LinearCode& code, bool allow_large) {
  Simulator sim(net, code);
  const std::uint64_t p = code.field.characteristic();
  const std::size_t n = sim.stacked_length();

  std::uint64_t states = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (states > std::numeric_limits<std::uint64_t>::max() / p) {
      throw Error(ErrorCode::StateSpaceTooLarge,
                  "p^" + std::to_string(n) + " instantiations do not fit in 64 bits");
    }
    states *= p;
    if (states > kExhaustiveGuard && !allow_large) {
      throw Error(ErrorCode::StateSpaceTooLarge,
                  std::to_string(p) + "^" + std::to_string(n) +
                      " instantiations exceed the 2^24 exhaustive guard");
    }
  }

  FieldVector x(n, 0);
  for (std::uint64_t count = 0; count < states; ++count) {
    if (!sim.failing_terminals(x).empty()) {
      return failure_report(VerifyMode::exhaustive, count + 1, sim, code, x);
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (++x[k] < p) break;
      x[k] = 0;
    }
  }
  VerifyReport report;
  report.mode = VerifyMode::exhaustive;
  report.trials = states;
  return report;
}

namespace {

FieldVector trial_instantiation(std::uint64_t seed, std::uint64_t trial, std::size_t n,
                                Elem p) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32U)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<Elem> dist(0, p - 1);
  FieldVector x(n);
  for (auto& v : x) v = dist(rng);
  return x;
}

}  // namespace

VerifyReport verify_random(const SumNetwork& net, const LinearCode& code, std::uint64_t trials,
                           std::uint64_t seed, unsigned workers) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "random verification needs trials >= 1");
  Simulator sim(net, code);
  const Elem p = code.field.characteristic();
  const std::size_t n = sim.stacked_length();

  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));

  std::atomic<std::uint64_t> first_failure{std::numeric_limits<std::uint64_t>::max()};
  auto run_chunk = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t k = begin; k < end && k < first_failure.load(); ++k) {
      if (!sim.failing_terminals(trial_instantiation(seed, k, n, p)).empty()) {
        std::uint64_t seen = first_failure.load();
        while (k < seen && !first_failure.compare_exchange_weak(seen, k)) {
        }
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * chunk;
      pool.emplace_back(run_chunk, begin, std::min(trials, begin + chunk));
    }
  }

  const std::uint64_t failed_at = first_failure.load();
  if (failed_at != std::numeric_limits<std::uint64_t>::max()) {
    auto report = failure_report(VerifyMode::random, failed_at + 1, sim, code,
                                 trial_instantiation(seed, failed_at, n, p));
    report.seed = seed;
    return report;
  }
  VerifyReport report;
  report.mode = VerifyMode::random;
  report.trials = trials;
  report.seed = seed;
  return report;
}

VerifyReport verify_algebraic(const SumNetwork& net, const LinearCode& code) {
  Simulator sim(net, code);
  const Field& f = code.field;
  const std::size_t n = sim.stacked_length();
  const std::size_t width = code.message_width();

  VerifyReport report;
  report.mode = VerifyMode::algebraic;
  std::optional<std::pair<TerminalId, std::size_t>> witness;

  for (const TerminalId& t : sim.terminals()) {
    const DecodingPlan& plan = code.decoders.at(t);
    std::vector<FieldMatrix> blocks;
    for (const PlanInput& in : plan.inputs) {
      if (in.kind == PlanInput::Kind::bottleneck) {
        blocks.push_back(sim.effective_encoder(in.vertex));
      } else {
        FieldMatrix select(f, width, n);
        const std::size_t base = net.source_index(in.source) * width;
        for (std::size_t c = 0; c < width; ++c) select.set(c, base + c, 1);
        blocks.push_back(std::move(select));
      }
    }
    const FieldMatrix received = vstack(blocks);
    const FieldMatrix composite = mat_mul(plan.compile(f), received);
    ++report.trials;

    std::optional<std::size_t> bad_column;
    for (std::size_t row = 0; row < width && !bad_column; ++row) {
      for (std::size_t col = 0; col < n; ++col) {
        const Elem want = col % width == row ? 1 : 0;
        if (composite.at(row, col) != want) {
          bad_column = col;
          break;
        }
      }
    }
    if (bad_column) {
      report.pass = false;
      report.failing_terminals.push_back(t);
      if (!witness) witness.emplace(t, *bad_column);
    }
  }

  if (witness) {
    FieldVector x(n, 0);
    x[witness->second] = 1;
    report.failure = VerifyFailure{witness->first, x, sim.expected_sum(x),
                                   sim.decode(witness->first, x)};
  }
  return report;
}

}  // namespace sumnet
