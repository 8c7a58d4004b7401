#pragma once

#include <braidgrowth/bigint.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace braidgrowth {

using Limb = std::uint64_t;

/// Dense exact integer matrix.
///
/// Entries are stored row-major as fixed-width sign-magnitude limb groups;
/// the width grows to the widest entry ever stored. A p(30) x p(30) matrix of
/// 108-bit counts thus costs 16 bytes per entry instead of a heap-allocated
/// big integer each.
class BigMatrix {
 public:
  BigMatrix() = default;
  BigMatrix(std::size_t rows, std::size_t cols, std::size_t width = 1);

  static BigMatrix identity(std::size_t n);
  static BigMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows);
  static BigMatrix from_rows(const std::vector<std::vector<BigInt>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  /// Limbs per entry.
  std::size_t width() const noexcept { return width_; }

  BigInt at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const BigInt& value);
  void set(std::size_t r, std::size_t c, long long value);
  void set_u128(std::size_t r, std::size_t c, unsigned __int128 magnitude, bool negative = false);

  std::span<const Limb> magnitude(std::size_t r, std::size_t c) const {
    return {limbs_.data() + (r * cols_ + c) * width_, width_};
  }
  bool is_negative(std::size_t r, std::size_t c) const { return negative_[r * cols_ + c] != 0; }
  bool is_zero(std::size_t r, std::size_t c) const;

  /// Grows the per-entry width; never shrinks.
  void reserve_width(std::size_t width);

  const std::optional<std::vector<std::string>>& row_labels() const noexcept { return row_labels_; }
  const std::optional<std::vector<std::string>>& col_labels() const noexcept { return col_labels_; }
  /// Throws std::invalid_argument on a size mismatch or duplicate label.
  void set_row_labels(std::vector<std::string> labels);
  void set_col_labels(std::vector<std::string> labels);

  BigMatrix transpose() const;

  /// Compares dimensions and values; labels and storage width are ignored.
  bool operator==(const BigMatrix& other) const;

 private:
  void check_index(std::size_t r, std::size_t c) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t width_ = 1;
  std::vector<Limb> limbs_;
  std::vector<std::uint8_t> negative_;
  std::optional<std::vector<std::string>> row_labels_;
  std::optional<std::vector<std::string>> col_labels_;
};

struct BigVector {
  BigVector() = default;
  explicit BigVector(std::size_t length) : entries(length) {}
  BigVector(std::initializer_list<long long> values);

  std::size_t size() const noexcept { return entries.size(); }
  BigInt& operator[](std::size_t i) { return entries[i]; }
  const BigInt& operator[](std::size_t i) const { return entries[i]; }
  bool operator==(const BigVector& other) const { return entries == other.entries; }

  static BigVector unit(std::size_t length, std::size_t i);

  std::vector<BigInt> entries;
  std::optional<std::vector<std::string>> labels;
};

/// Exact product; row labels come from `a`, column labels from `b`.
BigMatrix mat_mul(const BigMatrix& a, const BigMatrix& b);
BigVector mat_vec(const BigMatrix& a, const BigVector& x);
BigInt dot(const BigVector& v, const BigVector& w);

BigVector column(const BigMatrix& a, std::size_t c);
BigVector column_sums(const BigMatrix& a);
bool is_symmetric(const BigMatrix& a);

/// {"rows","cols","row_labels"?,"col_labels"?,"entries":[[decimal strings]]}
std::string matrix_to_json(const BigMatrix& m, int indent = -1);
BigMatrix matrix_from_json(std::string_view text);

/// Right-aligned columns, one row per line, for terminal output.
std::string matrix_to_plain(const BigMatrix& m);

}  // namespace braidgrowth
