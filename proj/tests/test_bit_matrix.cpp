#include <doctest.h>

#include <random>
#include <set>
#include <stdexcept>

#include "phidescent/bit_matrix.hpp"

using namespace phidescent;

namespace {

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density) {
  std::bernoulli_distribution bit(density);
  BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (bit(rng)) m.set(r, c);
    }
  }
  return m;
}

// Rank as log2 of the number of distinct row combinations.
std::size_t brute_rank(const BitMatrix& m) {
  std::set<std::string> combos;
  for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << m.rows()); ++sel) {
    BitVector acc(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if ((sel >> r) & 1U) acc ^= m.row(r);
    }
    combos.insert(acc.to_string());
  }
  std::size_t rank = 0;
  while ((std::size_t{1} << rank) < combos.size()) ++rank;
  return rank;
}

}  // namespace

TEST_CASE("rank examples") {
  CHECK(BitMatrix::from_rows({"10", "01"}).rank() == 2);
  CHECK(BitMatrix(3, 3).rank() == 0);
  CHECK(BitMatrix::from_rows({"11", "11", "01"}).rank() == 2);
  const auto m = BitMatrix::from_rows({"11", "11", "01"});
  (void)m.rank();
  CHECK(m == BitMatrix::from_rows({"11", "11", "01"}));
}

TEST_CASE("column nullspace examples") {
  CHECK(BitMatrix::from_rows({"100", "010", "001"}).column_nullspace_basis().empty());
  auto zero = BitMatrix(3, 3).column_nullspace_basis();
  REQUIRE(zero.size() == 3);
  CHECK(zero[0].to_string() == "100");
  CHECK(zero[1].to_string() == "010");
  CHECK(zero[2].to_string() == "001");
  auto one = BitMatrix::from_rows({"11"}).column_nullspace_basis();
  REQUIRE(one.size() == 1);
  CHECK(one[0].to_string() == "11");
}

TEST_CASE("row nullspace examples") {
  CHECK(BitMatrix::from_rows({"10", "01"}).row_nullspace_basis().empty());
  auto twin = BitMatrix::from_rows({"1", "1"}).row_nullspace_basis();
  REQUIRE(twin.size() == 1);
  CHECK(twin[0].to_string() == "11");
  CHECK(BitMatrix::from_rows({"0", "0"}).row_nullspace_basis().size() == 2);
}

TEST_CASE("in_span examples") {
  CHECK(in_span({}, BitVector(2)));
  CHECK_FALSE(in_span({BitVector::from_string("10")}, BitVector::from_string("01")));
  CHECK(in_span({BitVector::from_string("110"), BitVector::from_string("011")},
                BitVector::from_string("101")));
  CHECK_THROWS_AS(in_span({BitVector::from_string("10")}, BitVector::from_string("101")),
                  std::invalid_argument);
}

TEST_CASE("random matrices: rank-nullity, kernels, transpose, brute force") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t rows = 1 + rng() % 9;
    std::size_t cols = 1 + rng() % 9;
    double density = (trial % 4 + 1) * 0.2;
    BitMatrix m = random_matrix(rng, rows, cols, density);
    const std::size_t rank = m.rank();
    REQUIRE(rank == brute_rank(m));
    REQUIRE(rank == m.transpose().rank());
    auto col_basis = m.column_nullspace_basis();
    auto row_basis = m.row_nullspace_basis();
    REQUIRE(rank + col_basis.size() == cols);
    REQUIRE(rank + row_basis.size() == rows);
    for (const auto& v : col_basis) REQUIRE(m.multiply(v).none());
    for (const auto& w : row_basis) REQUIRE(m.left_multiply(w).none());
    // Bases are independent: their span has full size.
    std::set<std::string> span;
    for (const auto& v : span_elements(col_basis, cols)) span.insert(v.to_string());
    REQUIRE(span.size() == (std::size_t{1} << col_basis.size()));
    // Every kernel vector found by brute force lies in the span.
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << cols); ++x) {
      BitVector v(cols);
      for (std::size_t c = 0; c < cols; ++c) {
        if ((x >> c) & 1U) v.set(c);
      }
      REQUIRE(m.multiply(v).none() == in_span(col_basis, v));
    }
    // Deterministic output.
    REQUIRE(m.column_nullspace_basis() == col_basis);
  }
}

TEST_CASE("wide matrices cross word boundaries") {
  std::mt19937_64 rng(7);
  for (std::size_t n : {63u, 64u, 65u, 130u}) {
    BitMatrix m = random_matrix(rng, n, n, 0.5);
    // Duplicate the first row into the last: rank drops below n.
    for (std::size_t c = 0; c < n; ++c) m.set(n - 1, c, m.get(0, c));
    const auto rank = m.rank();
    CHECK(rank < n);
    CHECK(rank == m.transpose().rank());
    for (const auto& v : m.column_nullspace_basis()) CHECK(m.multiply(v).none());
    CHECK(m.row_nullspace_basis().size() == n - rank);
  }
}

TEST_CASE("bit vector ordering and helpers") {
  auto a = BitVector::from_string("100");  // 1
  auto b = BitVector::from_string("010");  // 2
  CHECK(a < b);
  CHECK_FALSE(b < a);
  CHECK((a ^ b).to_string() == "110");
  CHECK((a ^ b).count() == 2);
  CHECK((a ^ b).ones() == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(BitVector::from_string("012"), std::invalid_argument);
}
