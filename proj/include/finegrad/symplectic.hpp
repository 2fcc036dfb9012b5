#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "finegrad/bigint.hpp"
#include "finegrad/common.hpp"

namespace finegrad {

/// Largest m for which the symplectic group is enumerated in-process.
inline constexpr unsigned kMaxBuiltinM = 3;
/// Largest m for which vectors and matrices can be represented at all.
inline constexpr unsigned kMaxVectorM = 6;

/// A vector of Z_2^{2m}. Coordinate i (1-based) is stored in bit i-1, so the
/// integer value of `bits()` doubles as the point index.
class GF2Vector
{
public:
  GF2Vector() = default;
  /// Throws std::invalid_argument unless dim is even, 2 <= dim <= 12 and
  /// bits fit in dim bits.
  GF2Vector(unsigned dim, std::uint32_t bits);

  static GF2Vector basis(unsigned dim, unsigned coordinate); // 1-based

  unsigned dim() const { return dim_; }
  std::uint32_t bits() const { return bits_; }
  bool coordinate(unsigned i) const { return (bits_ >> (i - 1)) & 1u; }

  GF2Vector operator+(const GF2Vector& other) const;
  bool operator==(const GF2Vector&) const = default;

private:
  unsigned dim_ = 2;
  std::uint32_t bits_ = 0;
};

/// (x, y) = sum_i x_i y_{2m+1-i} mod 2.
bool sp_form(unsigned m, const GF2Vector& x, const GF2Vector& y);
/// Q(x) = sum_{i<=m} x_i x_{2m+1-i} mod 2.
bool q_form(unsigned m, const GF2Vector& x);

// Raw bit-level versions used in hot loops; no dimension checks.
bool sp_form_bits(unsigned m, std::uint32_t x, std::uint32_t y);
bool q_form_bits(unsigned m, std::uint32_t x);

/// T_+ (Q = 0) and T_- (Q = 1), each ordered by integer value.
std::pair<std::vector<GF2Vector>, std::vector<GF2Vector>> t_split(unsigned m);

/// A 2m x 2m matrix over GF(2), stored by columns: column j is the image of
/// the basis vector e_{j+1}.
class SpElement
{
public:
  static SpElement identity(unsigned m);
  /// x -> x + (x, v) v.
  static SpElement transvection(unsigned m, std::uint32_t v);
  /// Throws std::invalid_argument on a size mismatch.
  static SpElement from_columns(unsigned m, const std::vector<std::uint32_t>& cols);

  unsigned m() const { return m_; }
  unsigned dim() const { return 2 * m_; }
  std::uint32_t column(unsigned j) const { return cols_[j]; }

  std::uint32_t apply(std::uint32_t x) const
  {
    std::uint32_t y = 0;
    for (unsigned j = 0; x; ++j, x >>= 1)
      if (x & 1u)
        y ^= cols_[j];
    return y;
  }
  GF2Vector apply(const GF2Vector& x) const { return {dim(), apply(x.bits())}; }

  /// (this * other)(x) = this(other(x)).
  SpElement operator*(const SpElement& other) const;
  bool operator==(const SpElement& other) const = default;

  bool invertible() const;
  SpElement inverse() const;
  /// Checks (A e_i, A e_j) = (e_i, e_j) on all basis pairs.
  bool preserves_form() const;

  /// Packed column bits; unique per element for m <= 3.
  std::uint64_t key() const;

private:
  unsigned m_ = 1;
  std::array<std::uint16_t, 2 * kMaxVectorM> cols_{};
};

/// The 4^m - 1 symplectic transvections, ordered by their vector v.
std::vector<SpElement> transvections(unsigned m);

/// |Sp_{2m}(2)| = 2^{m^2} prod_{i=1}^m (2^{2i} - 1).
BigInt sp_order(unsigned m);

/// All of Sp_{2m}(2) as the closure of the transvections, sorted by key().
/// Throws BudgetExceeded for m > kMaxBuiltinM; std::invalid_argument for m = 0.
std::vector<SpElement> enumerate_sp(unsigned m);

/// Process-wide cached copy of enumerate_sp(m).
const std::vector<SpElement>& sp_group(unsigned m);

/// The unique t_A with (t_A, x) = Q(A^{-1} x) + Q(x) for all x.
std::uint32_t twist_vector_bits(const SpElement& a);
GF2Vector twist_vector(const SpElement& a);

} // namespace finegrad
