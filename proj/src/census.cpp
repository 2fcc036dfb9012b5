#include "finegrad/census.hpp"

#include <bit>
#include <string>
#include <vector>

#include "finegrad/partitions.hpp"

namespace finegrad {

namespace {

bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

// (prime, exponent) pairs of n >= 1.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n)
{
  std::vector<std::pair<std::uint64_t, unsigned>> factors;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e)
      factors.emplace_back(d, e);
  }
  if (n > 1)
    factors.emplace_back(n, 1);
  return factors;
}

void require_lie_field(FieldSpec field)
{
  if (field.characteristic() == 2)
    throw std::invalid_argument("Lie algebra counts require characteristic != 2");
}

// sum_{j=0}^{e} p(j): gradings contributed by one prime power p^e.
BigInt prime_power_factor(unsigned exponent)
{
  BigInt sum = 0;
  for (unsigned j = 0; j <= exponent; ++j)
    sum += count_partitions(j);
  return sum;
}

BigInt f_sum(std::uint32_t n, Action action, OrbitCounter& orbits)
{
  if (n == 0)
    throw std::invalid_argument("f sums require n >= 1");
  const unsigned alpha = static_cast<unsigned>(std::countr_zero(n));
  const std::uint32_t k = n >> alpha;
  BigInt total = 0;
  for (unsigned m = 0; m <= alpha; ++m) {
    const std::uint32_t q_top = k << (alpha - m);
    const auto values = orbits.table(m, action, q_top);
    // s runs over 0..floor(2^{alpha-m-1} k), i.e. q = q_top, q_top - 2, ... >= 0.
    for (std::int64_t q = q_top; q >= 0; q -= 2)
      total += values[static_cast<std::size_t>(q)];
  }
  return total;
}

} // namespace

FieldSpec::FieldSpec(std::uint32_t characteristic)
: characteristic_(characteristic)
{
  if (characteristic != 0 && !is_prime(characteristic))
    throw std::invalid_argument("characteristic must be 0 or a prime, got " +
                                std::to_string(characteristic));
}

char series_letter(Series series)
{
  return "MABCD"[static_cast<int>(series)];
}

Series parse_series(std::string_view text)
{
  if (text.size() == 1) {
    switch (text[0]) {
    case 'M':
      return Series::M;
    case 'A':
      return Series::A;
    case 'B':
      return Series::B;
    case 'C':
      return Series::C;
    case 'D':
      return Series::D;
    }
  }
  throw std::invalid_argument("unknown series '" + std::string(text) +
                              "' (expected M, A, B, C or D)");
}

std::uint32_t first_index(Series series)
{
  switch (series) {
  case Series::M:
  case Series::C:
    return 1;
  case Series::A:
  case Series::B:
    return 2;
  case Series::D:
    return 3;
  }
  return 1;
}

BigInt n_ab(std::uint64_t l)
{
  if (l == 0)
    throw std::invalid_argument("n_ab requires l >= 1");
  BigInt result = 1;
  for (auto [prime, exponent] : factorize(l))
    result *= count_partitions(exponent);
  return result;
}

BigInt n_matrix(std::uint64_t n, FieldSpec field)
{
  if (n == 0)
    throw std::invalid_argument("n_matrix requires n >= 1");
  const std::uint64_t p = field.characteristic();

  BigInt divisor_sum = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0)
      continue;
    for (std::uint64_t l : {d, n / d}) {
      if (p != 0 && l % p == 0)
        continue;
      divisor_sum += n_ab(l);
      if (d * d == n)
        break;
    }
  }

  BigInt product = 1;
  for (auto [prime, exponent] : factorize(n))
    if (prime != p)
      product *= prime_power_factor(exponent);

  if (product != divisor_sum)
    throw ConsistencyError("N_M(" + std::to_string(n) + "): divisor sum " +
                           divisor_sum.str() + " != prime product " + product.str());
  return product;
}

BigInt matrix_count_sum(std::uint64_t n, FieldSpec field)
{
  const std::uint64_t p = field.characteristic();
  std::vector<std::uint32_t> smallest_factor(n + 1, 0);
  for (std::uint64_t i = 2; i <= n; ++i)
    if (smallest_factor[i] == 0)
      for (std::uint64_t j = i; j <= n; j += i)
        if (smallest_factor[j] == 0)
          smallest_factor[j] = static_cast<std::uint32_t>(i);

  std::vector<std::uint64_t> factor_of_exponent;
  for (unsigned e = 0; e < 64; ++e)
    factor_of_exponent.push_back(static_cast<std::uint64_t>(prime_power_factor(e)));

  std::uint64_t sum = 0;
  for (std::uint64_t j = 1; j <= n; ++j) {
    std::uint64_t value = 1;
    for (std::uint64_t rest = j; rest > 1;) {
      const std::uint32_t prime = smallest_factor[rest];
      unsigned e = 0;
      while (rest % prime == 0) {
        rest /= prime;
        ++e;
      }
      if (prime != p)
        value *= factor_of_exponent[e];
    }
    sum += value;
  }
  return sum;
}

double avg_matrix(std::uint64_t n, FieldSpec field)
{
  if (n == 0)
    throw std::invalid_argument("avg_matrix requires n >= 1");
  return static_cast<double>(BigRational(matrix_count_sum(n, field), BigInt(n)));
}

BigInt n_A_typeI(std::uint32_t r, FieldSpec field)
{
  if (r < 2)
    throw std::invalid_argument("series A requires rank r >= 2");
  require_lie_field(field);
  BigInt count = n_matrix(r + 1, field);
  if (std::has_single_bit(r + 1))
    count -= 2;
  return count;
}

BigInt f0(std::uint32_t n, OrbitCounter& orbits)
{
  return f_sum(n, Action::asp, orbits);
}

BigInt n_A_typeII(std::uint32_t r, OrbitCounter& orbits)
{
  if (r < 2)
    throw std::invalid_argument("series A requires rank r >= 2");
  BigInt count = f0(r + 1, orbits);
  if (std::has_single_bit(r + 1))
    count -= 1;
  return count;
}

GradingCountRow n_A(std::uint32_t r, FieldSpec field, OrbitCounter& orbits)
{
  if (r < 2)
    throw std::invalid_argument("series A requires rank r >= 2");
  require_lie_field(field);
  GradingCountRow row;
  row.series = Series::A;
  row.index = r;
  if (r == 2 && field.characteristic() == 3) {
    row.total = 2;
    return row;
  }
  row.type_one = n_A_typeI(r, field);
  row.type_two = n_A_typeII(r, orbits);
  row.total = *row.type_one + *row.type_two;
  return row;
}

BigInt n_B(std::uint32_t r)
{
  if (r < 2)
    throw std::invalid_argument("series B requires rank r >= 2");
  return r + 1;
}

BigInt f_pm(std::uint32_t n, Sign sign, OrbitCounter& orbits)
{
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("f_+- requires an even n >= 2");
  return f_sum(n, twisted_action(sign), orbits);
}

GradingCountRow n_C(std::uint32_t r, OrbitCounter& orbits)
{
  if (r < 1)
    throw std::invalid_argument("series C requires rank r >= 1");
  GradingCountRow row;
  row.series = Series::C;
  row.index = r;
  BigInt count = f_pm(2 * r, Sign::minus, orbits);
  if (r >= 2 && std::has_single_bit(r))
    count -= 1;
  row.total = count;
  return row;
}

GradingCountRow n_D(std::uint32_t r, FieldSpec field, OrbitCounter& orbits)
{
  if (r < 3)
    throw std::invalid_argument("series D requires rank r >= 3");
  require_lie_field(field);
  GradingCountRow row;
  row.series = Series::D;
  row.index = r;
  if (r == 4) {
    if (field.characteristic() != 0)
      throw std::invalid_argument(
          "D4 fine gradings are only classified in characteristic 0");
    row.total = 17;
    return row;
  }
  BigInt count = f_pm(2 * r, Sign::plus, orbits);
  if (std::has_single_bit(r))
    count -= 1;
  row.total = count;
  return row;
}

GradingCountRow count_row(Series series, std::uint32_t index, FieldSpec field,
                          OrbitCounter& orbits)
{
  switch (series) {
  case Series::M: {
    if (index < 1)
      throw std::invalid_argument("series M requires n >= 1");
    GradingCountRow row;
    row.series = Series::M;
    row.index = index;
    row.total = n_matrix(index, field);
    return row;
  }
  case Series::A:
    return n_A(index, field, orbits);
  case Series::B: {
    require_lie_field(field);
    GradingCountRow row;
    row.series = Series::B;
    row.index = index;
    row.total = n_B(index);
    return row;
  }
  case Series::C:
    require_lie_field(field);
    return n_C(index, orbits);
  case Series::D:
    return n_D(index, field, orbits);
  }
  throw std::invalid_argument("unknown series");
}

GradingCountRow table_row(Series series, std::uint32_t index, FieldSpec field,
                          OrbitCounter& orbits)
{
  try {
    return count_row(series, index, field, orbits);
  } catch (const MissingCycleIndex& missing) {
    GradingCountRow row;
    row.series = series;
    row.index = index;
    row.provenance = Provenance::needs_import;
    row.missing_m = missing.m();
    return row;
  }
}

BigRational avg_series_exact(Series series, std::uint32_t r_max, OrbitCounter& orbits,
                             FieldSpec field)
{
  if (series == Series::M)
    throw std::invalid_argument("use avg_matrix for series M");
  if (r_max < 1)
    throw std::invalid_argument("avg_series requires r_max >= 1");
  BigInt sum = 0;
  for (std::uint32_t r = first_index(series); r <= r_max; ++r)
    sum += *count_row(series, r, field, orbits).total;
  return BigRational(sum, BigInt(r_max));
}

double avg_series(Series series, std::uint32_t r_max, OrbitCounter& orbits,
                  FieldSpec field)
{
  return static_cast<double>(avg_series_exact(series, r_max, orbits, field));
}

} // namespace finegrad
