#include "phidescent/bit_matrix.hpp"

#include <bit>
#include <stdexcept>

namespace phidescent {

namespace {
std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }
}  // namespace

BitVector::BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

BitVector BitVector::from_string(const std::string& bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bit string may only contain 0 and 1");
    }
  }
  return v;
}

void BitVector::set(std::size_t i, bool value) {
  std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
}

bool BitVector::any() const {
  for (std::uint64_t w : words_) {
    if (w) return true;
  }
  return false;
}

std::size_t BitVector::count() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<std::size_t> BitVector::ones() const {
  std::vector<std::size_t> out;
  for (std::size_t wi = 0; wi < words_.size(); ++wi) {
    std::uint64_t w = words_[wi];
    while (w) {
      out.push_back(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_) throw std::invalid_argument("bit vector length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

bool operator<(const BitVector& a, const BitVector& b) {
  if (a.size_ != b.size_) return a.size_ < b.size_;
  for (std::size_t i = a.words_.size(); i-- > 0;) {
    if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
  }
  return false;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows, BitVector(cols)) {}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) return {};
  BitMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
    m.data_[r] = BitVector::from_string(rows[r]);
  }
  return m;
}

BitVector BitMatrix::column(std::size_t c) const {
  BitVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (get(r, c)) v.set(r);
  }
  return v;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c : data_[r].ones()) t.set(c, r);
  }
  return t;
}

BitVector BitMatrix::multiply(const BitVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("multiply: length mismatch");
  BitVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto a = data_[r].words();
    auto b = v.words();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc ^= a[i] & b[i];
    if (std::popcount(acc) & 1) out.set(r);
  }
  return out;
}

BitVector BitMatrix::left_multiply(const BitVector& w) const {
  if (w.size() != rows_) throw std::invalid_argument("left_multiply: length mismatch");
  BitVector out(cols_);
  for (std::size_t r : w.ones()) out ^= data_[r];
  return out;
}

BitMatrix::Echelon BitMatrix::reduced_echelon() const {
  Echelon e;
  e.rows = data_;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols_ && pivot_row < rows_; ++c) {
    std::size_t found = pivot_row;
    while (found < rows_ && !e.rows[found].get(c)) ++found;
    if (found == rows_) continue;
    std::swap(e.rows[pivot_row], e.rows[found]);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r != pivot_row && e.rows[r].get(c)) e.rows[r] ^= e.rows[pivot_row];
    }
    e.pivot_cols.push_back(c);
    ++pivot_row;
  }
  e.rows.resize(pivot_row);
  return e;
}

std::size_t BitMatrix::rank() const {
  std::vector<BitVector> work = data_;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    std::size_t found = rank;
    while (found < rows_ && !work[found].get(c)) ++found;
    if (found == rows_) continue;
    std::swap(work[rank], work[found]);
    for (std::size_t r = rank + 1; r < rows_; ++r) {
      if (work[r].get(c)) work[r] ^= work[rank];
    }
    ++rank;
  }
  return rank;
}

std::vector<BitVector> BitMatrix::column_nullspace_basis() const {
  Echelon e = reduced_echelon();
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;

  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(cols_);
    v.set(f);
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
      if (e.rows[i].get(f)) v.set(e.pivot_cols[i]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<BitVector> BitMatrix::row_nullspace_basis() const {
  return transpose().column_nullspace_basis();
}

bool in_span(const std::vector<BitVector>& basis, const BitVector& v) {
  // Incremental echelon basis keyed by leading (highest) set bit.
  std::vector<BitVector> reduced;
  std::vector<std::size_t> leads;
  auto leading = [](const BitVector& x) {
    auto ones = x.ones();
    return ones.back();
  };
  auto reduce = [&](BitVector x) {
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      if (x.get(leads[i])) x ^= reduced[i];
    }
    return x;
  };
  for (const BitVector& b : basis) {
    if (b.size() != v.size()) throw std::invalid_argument("in_span: length mismatch");
    BitVector x = reduce(b);
    if (x.none()) continue;
    std::size_t lead = leading(x);
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      if (reduced[i].get(lead)) reduced[i] ^= x;
    }
    reduced.push_back(std::move(x));
    leads.push_back(lead);
  }
  return reduce(v).none();
}

std::vector<BitVector> span_elements(const std::vector<BitVector>& basis, std::size_t length) {
  if (basis.size() >= 63) throw std::length_error("span too large to enumerate");
  std::vector<BitVector> out;
  out.reserve(std::size_t{1} << basis.size());
  for (std::uint64_t combo = 0; combo < (std::uint64_t{1} << basis.size()); ++combo) {
    BitVector v(length);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if ((combo >> i) & 1U) v ^= basis[i];
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace phidescent
