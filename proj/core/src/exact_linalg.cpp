#include <braidgrowth/exact_linalg.hpp>

#include <braidgrowth/errors.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace braidgrowth {

namespace {

void check_labels(const std::vector<std::string>& labels, std::size_t expected, const char* axis) {
  if (labels.size() != expected)
    throw std::invalid_argument(std::string(axis) + " label count does not match dimension");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw std::invalid_argument(std::string(axis) + " labels must be unique");
}

BigInt from_limbs(std::span<const Limb> limbs, bool negative) {
  BigInt value;
  std::size_t used = limbs.size();
  while (used > 0 && limbs[used - 1] == 0) --used;
  if (used > 0) mpz_import(value.get_mpz_t(), used, -1, sizeof(Limb), 0, 0, limbs.data());
  if (negative) value = -value;
  return value;
}

// Adds x * |entry| (or subtracts, for negative entries) limb by limb into
// per-limb accumulators; combine() shifts them back together.
struct LimbAccumulator {
  explicit LimbAccumulator(std::size_t width) : parts(width) {}

  void add(const BigInt& x, std::span<const Limb> magnitude, bool negative) {
    for (std::size_t k = 0; k < magnitude.size(); ++k) {
      const Limb limb = magnitude[k];
      if (limb == 0) continue;
      if (negative)
        mpz_submul_ui(parts[k].get_mpz_t(), x.get_mpz_t(), limb);
      else
        mpz_addmul_ui(parts[k].get_mpz_t(), x.get_mpz_t(), limb);
    }
  }

  BigInt combine() {
    BigInt total = parts.empty() ? BigInt(0) : parts[0];
    for (std::size_t k = 1; k < parts.size(); ++k) {
      if (sgn(parts[k]) == 0) continue;
      BigInt shifted;
      mpz_mul_2exp(shifted.get_mpz_t(), parts[k].get_mpz_t(), 64 * k);
      total += shifted;
    }
    for (auto& p : parts) p = 0;
    return total;
  }

  std::vector<BigInt> parts;
};

}  // namespace

BigMatrix::BigMatrix(std::size_t rows, std::size_t cols, std::size_t width)
    : rows_(rows), cols_(cols), width_(std::max<std::size_t>(width, 1)) {
  limbs_.assign(rows_ * cols_ * width_, 0);
  negative_.assign(rows_ * cols_, 0);
}

BigMatrix BigMatrix::identity(std::size_t n) {
  BigMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1LL);
  return m;
}

BigMatrix BigMatrix::from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  BigMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionMismatch("ragged matrix rows");
    std::size_t j = 0;
    for (long long v : row) m.set(i, j++, v);
    ++i;
  }
  return m;
}

BigMatrix BigMatrix::from_rows(const std::vector<std::vector<BigInt>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  BigMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void BigMatrix::check_index(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
}

BigInt BigMatrix::at(std::size_t r, std::size_t c) const {
  check_index(r, c);
  return from_limbs(magnitude(r, c), is_negative(r, c));
}

bool BigMatrix::is_zero(std::size_t r, std::size_t c) const {
  const auto mag = magnitude(r, c);
  return std::all_of(mag.begin(), mag.end(), [](Limb l) { return l == 0; });
}

void BigMatrix::reserve_width(std::size_t width) {
  if (width <= width_) return;
  std::vector<Limb> wider(rows_ * cols_ * width, 0);
  for (std::size_t e = 0; e < rows_ * cols_; ++e)
    std::copy_n(limbs_.begin() + static_cast<std::ptrdiff_t>(e * width_), width_,
                wider.begin() + static_cast<std::ptrdiff_t>(e * width));
  limbs_ = std::move(wider);
  width_ = width;
}

void BigMatrix::set(std::size_t r, std::size_t c, const BigInt& value) {
  check_index(r, c);
  const mpz_srcptr z = value.get_mpz_t();
  const std::size_t size = mpz_size(z);
  reserve_width(size);
  Limb* dst = limbs_.data() + (r * cols_ + c) * width_;
  for (std::size_t k = 0; k < width_; ++k) dst[k] = k < size ? mpz_getlimbn(z, static_cast<mp_size_t>(k)) : 0;
  negative_[r * cols_ + c] = sgn(value) < 0;
}

void BigMatrix::set(std::size_t r, std::size_t c, long long value) {
  const bool negative = value < 0;
  const unsigned long long magnitude =
      negative ? 0ULL - static_cast<unsigned long long>(value) : static_cast<unsigned long long>(value);
  set_u128(r, c, magnitude, negative);
}

void BigMatrix::set_u128(std::size_t r, std::size_t c, unsigned __int128 magnitude, bool negative) {
  check_index(r, c);
  const Limb hi = static_cast<Limb>(magnitude >> 64);
  if (hi != 0) reserve_width(2);
  Limb* dst = limbs_.data() + (r * cols_ + c) * width_;
  std::fill_n(dst, width_, 0);
  dst[0] = static_cast<Limb>(magnitude);
  if (width_ > 1) dst[1] = hi;
  negative_[r * cols_ + c] = negative && magnitude != 0;
}

void BigMatrix::set_row_labels(std::vector<std::string> labels) {
  check_labels(labels, rows_, "row");
  row_labels_ = std::move(labels);
}

void BigMatrix::set_col_labels(std::vector<std::string> labels) {
  check_labels(labels, cols_, "column");
  col_labels_ = std::move(labels);
}

BigMatrix BigMatrix::transpose() const {
  BigMatrix t(cols_, rows_, width_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto src = magnitude(i, j);
      std::copy(src.begin(), src.end(), t.limbs_.begin() + static_cast<std::ptrdiff_t>((j * rows_ + i) * width_));
      t.negative_[j * rows_ + i] = negative_[i * cols_ + j];
    }
  if (row_labels_) t.col_labels_ = row_labels_;
  if (col_labels_) t.row_labels_ = col_labels_;
  return t;
}

bool BigMatrix::operator==(const BigMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  const std::size_t w = std::max(width_, other.width_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto a = magnitude(i, j);
      const auto b = other.magnitude(i, j);
      bool zero = true;
      for (std::size_t k = 0; k < w; ++k) {
        const Limb la = k < a.size() ? a[k] : 0;
        const Limb lb = k < b.size() ? b[k] : 0;
        if (la != lb) return false;
        zero = zero && la == 0;
      }
      if (!zero && is_negative(i, j) != other.is_negative(i, j)) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------

BigVector::BigVector(std::initializer_list<long long> values) {
  entries.reserve(values.size());
  for (long long v : values) entries.emplace_back(static_cast<long>(v));
}

BigVector BigVector::unit(std::size_t length, std::size_t i) {
  BigVector e(length);
  e.entries.at(i) = 1;
  return e;
}

BigMatrix mat_mul(const BigMatrix& a, const BigMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  BigMatrix c(a.rows(), b.cols());
  std::vector<LimbAccumulator> row(b.cols(), LimbAccumulator(b.width()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.is_zero(i, k)) continue;
      const BigInt aik = a.at(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) row[j].add(aik, b.magnitude(k, j), b.is_negative(k, j));
    }
    for (std::size_t j = 0; j < b.cols(); ++j) c.set(i, j, row[j].combine());
  }
  if (a.row_labels()) c.set_row_labels(*a.row_labels());
  if (b.col_labels()) c.set_col_labels(*b.col_labels());
  return c;
}

BigVector mat_vec(const BigMatrix& a, const BigVector& x) {
  if (a.cols() != x.size())
    throw DimensionMismatch("mat_vec: " + std::to_string(a.cols()) + " columns vs length " +
                            std::to_string(x.size()));
  BigVector y(a.rows());
  LimbAccumulator acc(a.width());
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (sgn(x[j]) != 0) support.push_back(j);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j : support) acc.add(x[j], a.magnitude(i, j), a.is_negative(i, j));
    y[i] = acc.combine();
  }
  if (a.row_labels()) y.labels = a.row_labels();
  return y;
}

BigInt dot(const BigVector& v, const BigVector& w) {
  if (v.size() != w.size())
    throw DimensionMismatch("dot: lengths " + std::to_string(v.size()) + " and " + std::to_string(w.size()));
  BigInt sum = 0;
  for (std::size_t i = 0; i < v.size(); ++i) mpz_addmul(sum.get_mpz_t(), v[i].get_mpz_t(), w[i].get_mpz_t());
  return sum;
}

BigVector column(const BigMatrix& a, std::size_t c) {
  BigVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = a.at(i, c);
  if (a.row_labels()) out.labels = a.row_labels();
  return out;
}

BigVector column_sums(const BigMatrix& a) {
  BigVector sums(a.cols());
  const BigInt one = 1;
  LimbAccumulator acc(a.width());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) acc.add(one, a.magnitude(i, j), a.is_negative(i, j));
    sums[j] = acc.combine();
  }
  if (a.col_labels()) sums.labels = a.col_labels();
  return sums;
}

bool is_symmetric(const BigMatrix& a) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const auto x = a.magnitude(i, j);
      const auto y = a.magnitude(j, i);
      if (!std::equal(x.begin(), x.end(), y.begin())) return false;
      if (a.is_negative(i, j) != a.is_negative(j, i)) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------

std::string matrix_to_json(const BigMatrix& m, int indent) {
  nlohmann::ordered_json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  if (m.row_labels()) j["row_labels"] = *m.row_labels();
  if (m.col_labels()) j["col_labels"] = *m.col_labels();
  auto entries = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_decimal(m.at(i, c)));
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j.dump(indent);
}

BigMatrix matrix_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matrix JSON: ") + e.what());
  }
  try {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != rows) throw ParseError("matrix JSON: entries/rows mismatch");
    BigMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      if (!entries[i].is_array() || entries[i].size() != cols)
        throw ParseError("matrix JSON: row " + std::to_string(i) + " has wrong length");
      for (std::size_t c = 0; c < cols; ++c) {
        const auto& cell = entries[i][c];
        if (!cell.is_string()) throw ParseError("matrix JSON: entries must be decimal strings");
        m.set(i, c, parse_decimal(cell.get<std::string>()));
      }
    }
    if (j.contains("row_labels")) m.set_row_labels(j["row_labels"].get<std::vector<std::string>>());
    if (j.contains("col_labels")) m.set_col_labels(j["col_labels"].get<std::vector<std::string>>());
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matrix JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("matrix JSON: ") + e.what());
  }
}

std::string matrix_to_plain(const BigMatrix& m) {
  std::vector<std::string> cells(m.rows() * m.cols());
  std::size_t width = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      cells[i * m.cols() + c] = to_decimal(m.at(i, c));
      width = std::max(width, cells[i * m.cols() + c].size());
    }
  std::size_t label_width = 0;
  if (m.row_labels())
    for (const auto& l : *m.row_labels()) label_width = std::max(label_width, l.size());
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.row_labels()) {
      const auto& l = (*m.row_labels())[i];
      out << l << std::string(label_width - l.size(), ' ') << " |";
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& s = cells[i * m.cols() + c];
      out << (c || m.row_labels() ? " " : "") << std::string(width - s.size(), ' ') << s;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace braidgrowth
