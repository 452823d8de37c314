#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace phidescent {

/// Fixed-length vector over F_2, packed into 64-bit words.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size);

  static BitVector from_string(const std::string& bits);

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  bool any() const;
  bool none() const { return !any(); }
  std::size_t count() const;
  /// Indices of set bits, ascending.
  std::vector<std::size_t> ones() const;

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend bool operator==(const BitVector&, const BitVector&) = default;

  /// Orders as unsigned integers with bit 0 least significant.
  friend bool operator<(const BitVector& a, const BitVector& b);

  std::span<const std::uint64_t> words() const { return words_; }
  std::string to_string() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense row-major matrix over F_2.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix from_rows(const std::vector<std::string>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool value = true) { data_[r].set(c, value); }

  const BitVector& row(std::size_t r) const { return data_[r]; }
  BitVector column(std::size_t c) const;

  BitMatrix transpose() const;

  /// M * v for a column vector v of length cols().
  BitVector multiply(const BitVector& v) const;
  /// w^T * M for a row vector w of length rows().
  BitVector left_multiply(const BitVector& w) const;

  std::size_t rank() const;

  /// Basis of {v : M v = 0}, one vector per free column, free columns
  /// ascending.
  std::vector<BitVector> column_nullspace_basis() const;
  /// Basis of {w : w^T M = 0}.
  std::vector<BitVector> row_nullspace_basis() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  struct Echelon {
    std::vector<BitVector> rows;
    std::vector<std::size_t> pivot_cols;
  };
  Echelon reduced_echelon() const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BitVector> data_;
};

/// True iff v is an F_2 combination of the basis vectors (which need not be
/// independent). Throws on length mismatch.
bool in_span(const std::vector<BitVector>& basis, const BitVector& v);

/// All 2^k combinations of k basis vectors; combination i uses the basis
/// vectors selected by the bits of i.
std::vector<BitVector> span_elements(const std::vector<BitVector>& basis, std::size_t length);

}  // namespace phidescent
