#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "finegrad/bigint.hpp"
#include "finegrad/common.hpp"
#include "finegrad/orbit_count.hpp"

namespace finegrad {

/// Characteristic of the (algebraically closed) ground field: 0 or a prime.
class FieldSpec
{
public:
  FieldSpec() = default;
  /// Throws std::invalid_argument unless characteristic is 0 or prime.
  explicit FieldSpec(std::uint32_t characteristic);

  std::uint32_t characteristic() const { return characteristic_; }

private:
  std::uint32_t characteristic_ = 0;
};

enum class Series { M, A, B, C, D };

char series_letter(Series series);
/// Throws std::invalid_argument on anything but M, A, B, C, D.
Series parse_series(std::string_view text);
/// Smallest index with a defined count: 1 for M and C, 2 for A and B, 3 for D.
std::uint32_t first_index(Series series);

enum class Provenance { built_in, needs_import };

struct GradingCountRow
{
  Series series = Series::M;
  std::uint32_t index = 0;
  /// Type I / type II split, series A only.
  std::optional<BigInt> type_one;
  std::optional<BigInt> type_two;
  /// Empty exactly when provenance is needs_import.
  std::optional<BigInt> total;
  Provenance provenance = Provenance::built_in;
  /// Smallest m whose cycle index was missing.
  std::optional<unsigned> missing_m;
};

/// Number of abelian groups of order l: the product of p(e) over the prime
/// exponents e of l.
BigInt n_ab(std::uint64_t l);

/// Fine gradings on M_n(F), computed both as a divisor sum of n_ab and as a
/// product over prime powers; throws ConsistencyError if they disagree.
BigInt n_matrix(std::uint64_t n, FieldSpec field = {});

/// sum_{j<=n} N_M(j), via a smallest-prime-factor sieve.
BigInt matrix_count_sum(std::uint64_t n, FieldSpec field = {});
/// (1/n) sum_{j<=n} N_M(j).
double avg_matrix(std::uint64_t n, FieldSpec field = {});

/// N_M(r+1) minus 2 when r+1 is a power of two. Requires r >= 2 and
/// characteristic != 2.
BigInt n_A_typeI(std::uint32_t r, FieldSpec field = {});

/// f_0(n) = sum_{m=0}^{a} sum_{s=0}^{floor(2^{a-m-1} k)} N(m, 2^{a-m} k - 2s)
/// for n = 2^a k with k odd; N(0, q) = 1.
BigInt f0(std::uint32_t n, OrbitCounter& orbits);

/// f_0(r+1) minus 1 when r+1 is a power of two.
BigInt n_A_typeII(std::uint32_t r, OrbitCounter& orbits);

/// Both types; A_2 in characteristic 3 has 2 gradings (no type split).
GradingCountRow n_A(std::uint32_t r, FieldSpec field, OrbitCounter& orbits);

/// r + 1 for r >= 2.
BigInt n_B(std::uint32_t r);

/// Same double sum as f_0 with N_+ or N_-; N_+(0, q) = 1, N_-(0, q) = [q = 0].
BigInt f_pm(std::uint32_t n, Sign sign, OrbitCounter& orbits);

/// f_-(2r), minus 1 when r >= 2 is a power of two. C_1 = A_1 has 2.
GradingCountRow n_C(std::uint32_t r, OrbitCounter& orbits);

/// f_+(2r), minus 1 when r is a power of two; D_3 = A_3; D_4 has 17 in
/// characteristic 0 and is rejected otherwise.
GradingCountRow n_D(std::uint32_t r, FieldSpec field, OrbitCounter& orbits);

/// Single-count mode: propagates MissingCycleIndex.
GradingCountRow count_row(Series series, std::uint32_t index, FieldSpec field,
                          OrbitCounter& orbits);

/// Table mode: a missing cycle index yields a needs_import row with no total.
GradingCountRow table_row(Series series, std::uint32_t index, FieldSpec field,
                          OrbitCounter& orbits);

/// (1/r_max) * sum of totals from first_index(series) to r_max, exact.
BigRational avg_series_exact(Series series, std::uint32_t r_max, OrbitCounter& orbits,
                             FieldSpec field = {});
double avg_series(Series series, std::uint32_t r_max, OrbitCounter& orbits,
                  FieldSpec field = {});

} // namespace finegrad
