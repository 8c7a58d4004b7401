#include <braidgrowth/exact_linalg.hpp>

#include <braidgrowth/errors.hpp>

#include <random>

#include "doctest.h"

using namespace braidgrowth;

namespace {

// Schoolbook product with BigInt accumulation, independent of the limb code.
BigMatrix naive_product(const BigMatrix& a, const BigMatrix& b) {
  BigMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      BigInt s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a.at(i, k) * b.at(k, j);
      out.set(i, j, s);
    }
  return out;
}

BigMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bits) {
  BigMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      BigInt v = 0;
      for (int b = 0; b < bits; b += 32) v = (v << 32) + BigInt(static_cast<unsigned long>(rng() >> 32));
      if (rng() % 3 == 0) v = -v;
      if (rng() % 5 == 0) v = 0;
      m.set(i, j, v);
    }
  return m;
}

}  // namespace

TEST_CASE("storage holds signed values of any size") {
  BigMatrix m(2, 3);
  m.set(0, 0, -5);
  m.set(1, 2, factorial(40));
  m.set(0, 1, -factorial(30));
  CHECK(m.at(0, 0) == -5);
  CHECK(m.at(1, 2) == factorial(40));
  CHECK(m.at(0, 1) == -factorial(30));
  CHECK(m.is_negative(0, 1));
  CHECK(m.is_zero(1, 1));
  m.set(1, 2, 7);
  CHECK(m.at(1, 2) == 7);
  m.set_u128(1, 0, static_cast<unsigned __int128>(1) << 100, true);
  CHECK(m.at(1, 0) == -(BigInt(1) << 100));
  CHECK_THROWS(m.at(2, 0));
}

TEST_CASE("products against the schoolbook oracle") {
  std::mt19937_64 rng(7);
  for (int bits : {8, 64, 150}) {
    const BigMatrix a = random_matrix(rng, 7, 9, bits);
    const BigMatrix b = random_matrix(rng, 9, 4, bits);
    CHECK(mat_mul(a, b) == naive_product(a, b));
    BigVector x(9);
    for (std::size_t k = 0; k < 9; ++k) x[k] = b.at(k, 1);
    CHECK(mat_vec(a, x) == column(naive_product(a, b), 1));
  }
  const BigMatrix x = random_matrix(rng, 5, 5, 64);
  CHECK(mat_mul(BigMatrix::identity(5), x) == x);
  CHECK_THROWS_AS(mat_mul(x, BigMatrix(4, 4)), DimensionMismatch);
}

TEST_CASE("dot, column sums, symmetry, transpose") {
  CHECK(dot(BigVector{0, 1, 1, 1, 1}, BigVector{1, 6, 5, 11, 1}) == 23);
  CHECK_THROWS_AS(dot(BigVector{1}, BigVector{1, 2}), DimensionMismatch);
  const BigMatrix m = BigMatrix::from_rows({{1, -2}, {3, 4}});
  CHECK(column_sums(m) == BigVector{4, 2});
  CHECK_FALSE(is_symmetric(m));
  CHECK(is_symmetric(mat_mul(m, m.transpose())));
  CHECK(m.transpose().at(0, 1) == 3);
  CHECK(mat_vec(BigMatrix::identity(3), BigVector{4, -5, 6}) == BigVector{4, -5, 6});
}

TEST_CASE("labels are validated and carried through products") {
  BigMatrix m = BigMatrix::from_rows({{1, 0}, {0, 1}});
  CHECK_THROWS(m.set_row_labels({"a"}));
  CHECK_THROWS(m.set_row_labels({"a", "a"}));
  m.set_row_labels({"x", "y"});
  m.set_col_labels({"p", "q"});
  const BigMatrix product = mat_mul(m, m);
  REQUIRE(product.row_labels());
  CHECK((*product.row_labels())[1] == "y");
  CHECK((*product.col_labels())[0] == "p");
}

TEST_CASE("json round trip and strict parsing") {
  BigMatrix m = BigMatrix::from_rows({{1, -2, 0}, {0, 5, 7}});
  m.set(1, 0, factorial(35));
  m.set_row_labels({"3", "2+1"});
  m.set_col_labels({"a", "b", "c"});
  const std::string text = matrix_to_json(m);
  CHECK(text.find("\"entries\"") != std::string::npos);
  const BigMatrix back = matrix_from_json(text);
  CHECK(back == m);
  CHECK(*back.row_labels() == *m.row_labels());
  CHECK_THROWS_AS(matrix_from_json("{\"rows\":1}"), ParseError);
  CHECK_THROWS_AS(matrix_from_json("{\"rows\":1,\"cols\":1,\"entries\":[[\"1x\"]]}"), ParseError);
  CHECK_THROWS_AS(matrix_from_json("{\"rows\":1,\"cols\":2,\"entries\":[[\"1\"]]}"), ParseError);
  CHECK_THROWS_AS(matrix_from_json("not json"), ParseError);
}

TEST_CASE("plain rendering aligns columns") {
  BigMatrix m = BigMatrix::from_rows({{24, 1}, {0, 13}});
  m.set_row_labels({"2", "1+1"});
  CHECK(matrix_to_plain(m) == "2   | 24  1\n1+1 |  0 13\n");
}
