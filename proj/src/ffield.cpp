#include "sumnet/ffield.hpp"

#include <limits>
#include <string>

#include "sumnet/error.hpp"

namespace sumnet {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field::Field(std::uint64_t p) : p_(0) {
  if (p > std::numeric_limits<Elem>::max() || !is_prime(p)) {
    throw Error(ErrorCode::NonPrimeModulus,
                "field modulus " + std::to_string(p) + " is not prime");
  }
  p_ = static_cast<Elem>(p);
}

Elem Field::inv(Elem a) const {
  a %= p_;
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  // Fermat: a^(p-2).
  std::uint64_t result = 1;
  std::uint64_t base = a;
  std::uint64_t e = p_ - 2;
  while (e > 0) {
    if (e & 1U) result = result * base % p_;
    base = base * base % p_;
    e >>= 1U;
  }
  return static_cast<Elem>(result);
}

FieldMatrix::FieldMatrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FieldMatrix::FieldMatrix(const Field& field, std::size_t rows, std::size_t cols,
                         std::span<const std::int64_t> entries)
    : FieldMatrix(field, rows, cols) {
  if (entries.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(rows * cols) + " entries, got " +
                    std::to_string(entries.size()));
  }
  for (std::size_t k = 0; k < entries.size(); ++k) {
    data_[k] = field_.reduce(entries[k]);
  }
}

FieldMatrix FieldMatrix::identity(const Field& field, std::size_t n) {
  FieldMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FieldMatrix FieldMatrix::row_slice(std::size_t begin, std::size_t count) const {
  if (begin + count > rows_) {
    throw Error(ErrorCode::DimensionMismatch, "row slice out of range");
  }
  FieldMatrix out(field_, count, cols_);
  std::copy(data_.begin() + static_cast<std::ptrdiff_t>(begin * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((begin + count) * cols_),
            out.data_.begin());
  return out;
}

bool FieldMatrix::is_zero() const {
  for (Elem v : data_) {
    if (v != 0) return false;
  }
  return true;
}

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.field() != b.field() || a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "mat_mul: non-conforming operands");
  }
  const Field& f = a.field();
  const std::uint64_t p = f.characteristic();
  FieldMatrix out(f, a.rows(), b.cols());
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::uint64_t aik = a.at(i, k);
      if (aik == 0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        acc[j] = (acc[j] + aik * brow[j]) % p;
      }
    }
    for (std::size_t j = 0; j < b.cols(); ++j) out.set(i, j, static_cast<Elem>(acc[j]));
  }
  return out;
}

FieldVector mat_vec(const FieldMatrix& a, std::span<const Elem> x) {
  if (a.cols() != x.size()) {
    throw Error(ErrorCode::DimensionMismatch, "mat_vec: non-conforming operands");
  }
  const std::uint64_t p = a.field().characteristic();
  FieldVector out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::uint64_t acc = 0;
    auto row = a.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) acc = (acc + std::uint64_t{row[j]} * x[j]) % p;
    }
    out[i] = static_cast<Elem>(acc);
  }
  return out;
}

FieldMatrix vstack(std::span<const FieldMatrix> blocks) {
  if (blocks.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "vstack: no blocks");
  }
  const auto& first = blocks.front();
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != first.cols() || b.field() != first.field()) {
      throw Error(ErrorCode::DimensionMismatch, "vstack: column count differs");
    }
    rows += b.rows();
  }
  FieldMatrix out(first.field(), rows, first.cols());
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r) {
      for (std::size_t c = 0; c < b.cols(); ++c) out.set(r0 + r, c, b.at(r, c));
    }
    r0 += b.rows();
  }
  return out;
}

}  // namespace sumnet
