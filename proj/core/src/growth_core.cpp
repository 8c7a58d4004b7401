#include <braidgrowth/growth_core.hpp>

#include <braidgrowth/errors.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "residue.hpp"

namespace braidgrowth {

namespace {

constexpr std::size_t kDenseCheckLimit = 150;

std::size_t limbs_for(const BigInt& bound) { return mpz_size(bound.get_mpz_t()) + 1; }

void require_n(int n, int minimum, const char* what) {
  if (n < minimum)
    throw std::invalid_argument(std::string(what) + " requires n >= " + std::to_string(minimum));
}

void label(BigMatrix& m, const PartitionIndex& index) {
  m.set_row_labels(index.labels());
  m.set_col_labels(index.labels());
}

BigMatrix ntilde_for(const PartitionIndex& index, CountCache& cache) {
  const int n = index.n();
  const std::size_t p = index.size();
  const BigInt n_factorial = factorial(static_cast<unsigned>(n));
  BigMatrix ntilde(p, p, limbs_for(n_factorial));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      const BigInt value = count_graphs(index[i], index[j], cache);
      ntilde.set(i, j, value);
      ntilde.set(j, i, value);
    }
  // [1,...,1] is last in the canonical order.
  for (std::size_t j = 0; j < p; ++j) ntilde.set(p - 1, j, n_factorial);
  label(ntilde, index);
  return ntilde;
}

std::vector<int> signs_of(const PartitionIndex& index) {
  std::vector<int> signs;
  signs.reserve(index.size());
  for (const auto& p : index) signs.push_back(sign(p));
  return signs;
}

std::vector<BigInt> signed_class_counts(const PartitionIndex& index) {
  std::vector<BigInt> weights;
  weights.reserve(index.size());
  for (const auto& p : index) weights.push_back(sign(p) * class_count(p));
  return weights;
}

// core[a][b] for b >= a, one row at a time: walk the coarsenings g of a and
// the refinements b of each g.
template <class Acc, class Widen>
BigMatrix core_rows(const PartitionIndex& index, const RefinementTable& table, Widen widen) {
  const std::size_t p = index.size();
  const auto signs = signs_of(index);
  const auto weights = signed_class_counts(index);
  const int n = index.n();
  BigMatrix core(p, p, static_cast<std::size_t>(2 * n) / 64 + 1);
  std::vector<Acc> acc(p);
  for (std::size_t a = 0; a < p; ++a) {
    std::fill(acc.begin() + static_cast<std::ptrdiff_t>(a), acc.end(), Acc(0));
    for (const auto& ga : table.cols[a]) {
      const Acc w = widen(weights[ga.index]) * widen(ga.count);
      const auto& row = table.rows[ga.index];
      auto it = std::lower_bound(row.begin(), row.end(), a,
                                 [](const RefinementTable::Entry& e, std::size_t v) { return e.index < v; });
      for (; it != row.end(); ++it) acc[it->index] += w * widen(it->count);
    }
    for (std::size_t b = a; b < p; ++b) {
      Acc v = acc[b];
      if (signs[a] * signs[b] < 0) v = -v;
      if constexpr (std::is_same_v<Acc, BigInt>) {
        core.set(a, b, v);
        core.set(b, a, v);
      } else {
        const bool negative = v < 0;
        const unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
        core.set_u128(a, b, mag, negative);
        core.set_u128(b, a, mag, negative);
      }
    }
  }
  label(core, index);
  return core;
}

BigMatrix core_for(const PartitionIndex& index, const RefinementTable& table) {
  const int n = index.n();
  // |terms| <= 2^(3(n-1)), at most p(n) of them per entry.
  const double bits = 3.0 * (n - 1) + std::log2(static_cast<double>(index.size())) + 1;
  const auto weights = signed_class_counts(index);
  const bool weights_fit = std::all_of(weights.begin(), weights.end(),
                                       [](const BigInt& w) { return mpz_fits_slong_p(w.get_mpz_t()); });
  if (bits < 126 && weights_fit) {
    return core_rows<__int128>(index, table, [](const auto& x) -> __int128 {
      if constexpr (std::is_same_v<std::decay_t<decltype(x)>, BigInt>) {
        return static_cast<__int128>(x.get_si());
      } else {
        return static_cast<__int128>(x);
      }
    });
  }
  return core_rows<BigInt>(index, table, [](const auto& x) -> BigInt {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, BigInt>) {
      return x;
    } else {
      return BigInt(static_cast<unsigned long>(x));
    }
  });
}

BigVector indicator(const PartitionIndex& index, std::size_t position, bool complement) {
  BigVector v(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) v[i] = ((i == position) != complement) ? 1 : 0;
  v.labels = index.labels();
  return v;
}

void check(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation("reduced system: " + what);
}

}  // namespace

BigMatrix build_ntilde(int n, CountCache& cache) {
  require_n(n, 2, "build_ntilde");
  return ntilde_for(PartitionIndex(n), cache);
}

BigMatrix build_core(int n) {
  require_n(n, 2, "build_core");
  const PartitionIndex index(n);
  return core_for(index, refinement_table(index));
}

namespace {

ReducedSystem assemble(int n, BigMatrix ntilde) {
  ReducedSystem system;
  system.n = n;
  system.index = PartitionIndex(n);
  const auto& index = system.index;
  const RefinementTable table = refinement_table(index);

  system.ntilde = std::move(ntilde);
  system.core = core_for(index, table);

  // T~ = core N~ = D M^t W M D N~; entries are transition counts in [0, n!].
  const BigInt n_factorial = factorial(static_cast<unsigned>(n));
  detail::SandwichInput input{&table, signs_of(index), signed_class_counts(index), &system.ntilde};
  system.ttilde = detail::refinement_sandwich(input, mpz_sizeinbase(n_factorial.get_mpz_t(), 2));
  label(system.ttilde, index);

  system.u_tilde = indicator(index, index.size() - 1, false);
  system.v_tilde = indicator(index, 0, true);
  validate(system);
  return system;
}

GrowthSeries trivial_series(std::size_t max_length) {
  GrowthSeries trivial;
  trivial.n = 1;
  trivial.coefficients.assign(max_length + 1, 0);
  trivial.coefficients[0] = 1;
  return trivial;
}

}  // namespace

ReducedSystem build_reduced_system(int n, CountCache& cache) {
  require_n(n, 2, "build_reduced_system");
  return assemble(n, ntilde_for(PartitionIndex(n), cache));
}

void validate(const ReducedSystem& system) {
  const std::size_t p = system.index.size();
  const int n = system.n;
  check(system.ntilde.rows() == p && system.ntilde.cols() == p, "ntilde has wrong shape");
  check(system.core.rows() == p && system.core.cols() == p, "core has wrong shape");
  check(system.ttilde.rows() == p && system.ttilde.cols() == p, "ttilde has wrong shape");
  check(is_symmetric(system.core), "core is not symmetric");

  const BigInt n_factorial = factorial(static_cast<unsigned>(n));
  const BigVector sums = column_sums(system.ttilde);
  for (std::size_t j = 0; j < p; ++j)
    check(sums[j] == n_factorial, "column " + std::to_string(j) + " of ttilde sums to " + to_decimal(sums[j]));

  if (p <= kDenseCheckLimit) {
    check(mat_mul(system.core, system.ntilde) == system.ttilde, "ttilde != core * ntilde");
  } else {
    // Freivalds: T~ r = core (N~ r) for random r.
    std::mt19937_64 rng(static_cast<std::uint64_t>(n) * 0x9E3779B97F4A7C15ULL);
    for (int round = 0; round < 2; ++round) {
      BigVector r(p);
      for (auto& e : r.entries) e = BigInt(static_cast<unsigned long>(rng() >> 32));
      check(mat_vec(system.ttilde, r) == mat_vec(system.core, mat_vec(system.ntilde, r)),
            "ttilde != core * ntilde (randomised check)");
    }
  }

  check(system.u_tilde.size() == p && system.v_tilde.size() == p, "u/v have wrong length");
  for (std::size_t i = 0; i < p; ++i) {
    check(system.u_tilde[i] == (i + 1 == p ? 1 : 0), "u_tilde is not the indicator of [1,...,1]");
    check(system.v_tilde[i] == (i == 0 ? 0 : 1), "v_tilde is not the complement indicator of [n]");
  }
}

GrowthSeries growth_coefficients(const ReducedSystem& system, std::size_t max_length) {
  GrowthSeries series;
  series.n = system.n;
  series.coefficients.reserve(max_length + 1);
  BigVector x = system.u_tilde;
  series.coefficients.push_back(dot(system.v_tilde, x));
  for (std::size_t k = 1; k <= max_length; ++k) {
    x = mat_vec(system.ttilde, x);
    series.coefficients.push_back(dot(system.v_tilde, x));
  }
  return series;
}

GrowthSeries growth_series(int n, std::size_t max_length, CountCache& cache) {
  require_n(n, 1, "growth_series");
  if (n == 1) return trivial_series(max_length);
  return growth_coefficients(build_reduced_system(n, cache), max_length);
}

GrowthSeries growth_series(int n, std::size_t max_length) {
  require_n(n, 1, "growth_series");
  if (n == 1) return trivial_series(max_length);
  // The count table is only needed for N~; drop it before the heavy product.
  BigMatrix ntilde;
  {
    CountCache cache;
    ntilde = ntilde_for(PartitionIndex(n), cache);
  }
  return growth_coefficients(assemble(n, std::move(ntilde)), max_length);
}

std::string to_json(const GrowthSeries& series) {
  nlohmann::ordered_json j;
  j["n"] = series.n;
  j["generators"] = "simple-elements";
  auto coefficients = nlohmann::ordered_json::array();
  for (const auto& a : series.coefficients) coefficients.push_back(to_decimal(a));
  j["coefficients"] = std::move(coefficients);
  return j.dump();
}

std::string to_csv(const GrowthSeries& series) {
  std::ostringstream out;
  out << "l,a\n";
  for (std::size_t l = 0; l < series.coefficients.size(); ++l) out << l << ',' << to_decimal(series.coefficients[l]) << '\n';
  return out.str();
}

std::string to_plain(const GrowthSeries& series) {
  std::ostringstream out;
  for (const auto& a : series.coefficients) out << to_decimal(a) << '\n';
  return out.str();
}

}  // namespace braidgrowth
