#pragma once

// Prime-field arithmetic and dense matrices over GF(p).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sumnet {

using Elem = std::uint32_t;
using FieldVector = std::vector<Elem>;

bool is_prime(std::uint64_t n);

// GF(p) for prime p. Elements are canonical residues in [0, p).
class Field {
 public:
  // Throws Error(NonPrimeModulus) unless p is prime.
  explicit Field(std::uint64_t p);

  [[nodiscard]] Elem characteristic() const noexcept { return p_; }
  [[nodiscard]] Elem size() const noexcept { return p_; }

  [[nodiscard]] Elem reduce(std::int64_t v) const noexcept {
    auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }

  [[nodiscard]] Elem add(Elem a, Elem b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Elem>(s >= p_ ? s - p_ : s);
  }
  [[nodiscard]] Elem sub(Elem a, Elem b) const noexcept {
    return a >= b ? a - b : static_cast<Elem>(std::uint64_t{a} + p_ - b);
  }
  [[nodiscard]] Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
  [[nodiscard]] Elem mul(Elem a, Elem b) const noexcept {
    return static_cast<Elem>(std::uint64_t{a} * b % p_);
  }
  // Throws Error(DivisionByZero) for a == 0.
  [[nodiscard]] Elem inv(Elem a) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Elem p_;
};

// Dense row-major matrix over a prime field. Shape is fixed at construction.
class FieldMatrix {
 public:
  FieldMatrix(const Field& field, std::size_t rows, std::size_t cols);
  // `entries` is row-major and is reduced mod p.
  FieldMatrix(const Field& field, std::size_t rows, std::size_t cols,
              std::span<const std::int64_t> entries);

  static FieldMatrix identity(const Field& field, std::size_t n);

  [[nodiscard]] const Field& field() const noexcept { return field_; }
  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  [[nodiscard]] Elem at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, Elem v) {
    data_[r * cols_ + c] = v % field_.characteristic();
  }
  void add_to(std::size_t r, std::size_t c, Elem v) {
    auto& slot = data_[r * cols_ + c];
    slot = field_.add(slot, v % field_.characteristic());
  }

  [[nodiscard]] std::span<const Elem> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  [[nodiscard]] const std::vector<Elem>& entries() const noexcept { return data_; }

  [[nodiscard]] FieldMatrix row_slice(std::size_t begin, std::size_t count) const;
  [[nodiscard]] bool is_zero() const;

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b);
FieldVector mat_vec(const FieldMatrix& a, std::span<const Elem> x);
// Stacks blocks top to bottom; all blocks must share field and column count.
FieldMatrix vstack(std::span<const FieldMatrix> blocks);

}  // namespace sumnet
