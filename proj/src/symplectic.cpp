#include "finegrad/symplectic.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "finegrad/common.hpp"

namespace finegrad {

namespace {

void check_m(unsigned m)
{
  if (m == 0 || m > kMaxVectorM)
    throw std::invalid_argument("m must be in 1.." + std::to_string(kMaxVectorM) +
                                ", got " + std::to_string(m));
}

// Bit i-1 of the result is coordinate 2m+1-i of x.
std::uint32_t reverse_coordinates(unsigned m, std::uint32_t x)
{
  std::uint32_t r = 0;
  for (unsigned i = 0; i < 2 * m; ++i)
    if ((x >> i) & 1u)
      r |= 1u << (2 * m - 1 - i);
  return r;
}

bool parity(std::uint32_t x) { return std::popcount(x) & 1; }

} // namespace

GF2Vector::GF2Vector(unsigned dim, std::uint32_t bits)
: dim_(dim)
, bits_(bits)
{
  if (dim == 0 || dim % 2 != 0 || dim > 2 * kMaxVectorM)
    throw std::invalid_argument("vector dimension must be even and in 2..12");
  if (bits >> dim)
    throw std::invalid_argument("vector bits exceed dimension");
}

GF2Vector GF2Vector::basis(unsigned dim, unsigned coordinate)
{
  if (coordinate == 0 || coordinate > dim)
    throw std::invalid_argument("basis coordinate out of range");
  return {dim, 1u << (coordinate - 1)};
}

GF2Vector GF2Vector::operator+(const GF2Vector& other) const
{
  if (dim_ != other.dim_)
    throw std::invalid_argument("vector dimension mismatch");
  return {dim_, bits_ ^ other.bits_};
}

bool sp_form_bits(unsigned m, std::uint32_t x, std::uint32_t y)
{
  return parity(x & reverse_coordinates(m, y));
}

bool q_form_bits(unsigned m, std::uint32_t x)
{
  const std::uint32_t low = (1u << m) - 1;
  return parity(x & reverse_coordinates(m, x) & low);
}

bool sp_form(unsigned m, const GF2Vector& x, const GF2Vector& y)
{
  if (x.dim() != 2 * m || y.dim() != 2 * m)
    throw std::invalid_argument("sp_form: dimension mismatch");
  return sp_form_bits(m, x.bits(), y.bits());
}

bool q_form(unsigned m, const GF2Vector& x)
{
  if (x.dim() != 2 * m)
    throw std::invalid_argument("q_form: dimension mismatch");
  return q_form_bits(m, x.bits());
}

std::pair<std::vector<GF2Vector>, std::vector<GF2Vector>> t_split(unsigned m)
{
  check_m(m);
  std::pair<std::vector<GF2Vector>, std::vector<GF2Vector>> split;
  for (std::uint32_t x = 0; x < (1u << (2 * m)); ++x)
    (q_form_bits(m, x) ? split.second : split.first).emplace_back(2 * m, x);
  return split;
}

SpElement SpElement::identity(unsigned m)
{
  check_m(m);
  SpElement a;
  a.m_ = m;
  for (unsigned j = 0; j < 2 * m; ++j)
    a.cols_[j] = static_cast<std::uint16_t>(1u << j);
  return a;
}

SpElement SpElement::transvection(unsigned m, std::uint32_t v)
{
  SpElement a = identity(m);
  for (unsigned j = 0; j < 2 * m; ++j)
    if (sp_form_bits(m, 1u << j, v))
      a.cols_[j] ^= static_cast<std::uint16_t>(v);
  return a;
}

SpElement SpElement::from_columns(unsigned m, const std::vector<std::uint32_t>& cols)
{
  check_m(m);
  if (cols.size() != 2 * m)
    throw std::invalid_argument("expected " + std::to_string(2 * m) + " columns");
  SpElement a;
  a.m_ = m;
  for (unsigned j = 0; j < 2 * m; ++j) {
    if (cols[j] >> (2 * m))
      throw std::invalid_argument("column exceeds dimension");
    a.cols_[j] = static_cast<std::uint16_t>(cols[j]);
  }
  return a;
}

SpElement SpElement::operator*(const SpElement& other) const
{
  if (m_ != other.m_)
    throw std::invalid_argument("matrix size mismatch");
  SpElement c;
  c.m_ = m_;
  for (unsigned j = 0; j < 2 * m_; ++j)
    c.cols_[j] = static_cast<std::uint16_t>(apply(other.cols_[j]));
  return c;
}

bool SpElement::invertible() const
{
  // Rank of the column set.
  std::vector<std::uint32_t> basis;
  for (unsigned j = 0; j < 2 * m_; ++j) {
    std::uint32_t v = cols_[j];
    for (std::uint32_t b : basis)
      v = std::min(v, v ^ b);
    if (v == 0)
      return false;
    basis.push_back(v);
    std::sort(basis.begin(), basis.end(), std::greater<>());
  }
  return true;
}

SpElement SpElement::inverse() const
{
  const unsigned n = 2 * m_;
  // Row i of [A | I] as two bit masks.
  std::vector<std::uint32_t> left(n), right(n);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j)
      if ((cols_[j] >> i) & 1u)
        left[i] |= 1u << j;
    right[i] = 1u << i;
  }
  for (unsigned col = 0; col < n; ++col) {
    unsigned pivot = col;
    while (pivot < n && !((left[pivot] >> col) & 1u))
      ++pivot;
    if (pivot == n)
      throw std::invalid_argument("matrix is singular");
    std::swap(left[col], left[pivot]);
    std::swap(right[col], right[pivot]);
    for (unsigned i = 0; i < n; ++i)
      if (i != col && ((left[i] >> col) & 1u)) {
        left[i] ^= left[col];
        right[i] ^= right[col];
      }
  }
  SpElement inv;
  inv.m_ = m_;
  for (unsigned j = 0; j < n; ++j)
    for (unsigned i = 0; i < n; ++i)
      if ((right[i] >> j) & 1u)
        inv.cols_[j] |= static_cast<std::uint16_t>(1u << i);
  return inv;
}

bool SpElement::preserves_form() const
{
  for (unsigned i = 0; i < 2 * m_; ++i)
    for (unsigned j = 0; j < 2 * m_; ++j)
      if (sp_form_bits(m_, cols_[i], cols_[j]) != sp_form_bits(m_, 1u << i, 1u << j))
        return false;
  return true;
}

std::uint64_t SpElement::key() const
{
  std::uint64_t k = 0;
  for (unsigned j = 0; j < 2 * m_; ++j)
    k = (k << (2 * m_)) | cols_[j];
  return k;
}

std::vector<SpElement> transvections(unsigned m)
{
  check_m(m);
  std::vector<SpElement> result;
  for (std::uint32_t v = 1; v < (1u << (2 * m)); ++v)
    result.push_back(SpElement::transvection(m, v));
  return result;
}

BigInt sp_order(unsigned m)
{
  BigInt order = BigInt{1} << (m * m);
  for (unsigned i = 1; i <= m; ++i)
    order *= (BigInt{1} << (2 * i)) - 1;
  return order;
}

std::vector<SpElement> enumerate_sp(unsigned m)
{
  if (m > kMaxBuiltinM)
    throw BudgetExceeded("enumeration budget exceeded: Sp(2m,2) for m=" +
                         std::to_string(m) + " (built-in limit m<=" +
                         std::to_string(kMaxBuiltinM) + ")");
  check_m(m);

  const auto generators = transvections(m);
  const auto expected = static_cast<std::size_t>(sp_order(m));
  std::vector<SpElement> elements;
  elements.reserve(expected);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(2 * expected);

  elements.push_back(SpElement::identity(m));
  seen.insert(elements.front().key());
  // Breadth-first closure; `elements` doubles as the queue.
  for (std::size_t head = 0; head < elements.size(); ++head) {
    const SpElement current = elements[head];
    for (const auto& g : generators) {
      SpElement next = current * g;
      if (seen.insert(next.key()).second)
        elements.push_back(next);
    }
  }
  if (elements.size() != expected)
    throw ConsistencyError("Sp closure has " + std::to_string(elements.size()) +
                           " elements, expected " + std::to_string(expected));
  std::sort(elements.begin(), elements.end(),
            [](const SpElement& a, const SpElement& b) { return a.key() < b.key(); });
  return elements;
}

const std::vector<SpElement>& sp_group(unsigned m)
{
  static std::mutex mutex;
  static std::map<unsigned, std::unique_ptr<const std::vector<SpElement>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[m];
  if (!slot)
    slot = std::make_unique<const std::vector<SpElement>>(enumerate_sp(m));
  return *slot;
}

std::uint32_t twist_vector_bits(const SpElement& a)
{
  // y -> Q(y) + Q(Ay) is linear; write it as (s, y). Then t_A = A s, because
  // (A s, x) = (s, A^{-1} x) = Q(A^{-1} x) + Q(x). Basis vectors have Q = 0,
  // and (s, e_j) is coordinate 2m+1-j of s.
  const unsigned m = a.m();
  std::uint32_t s = 0;
  for (unsigned j = 0; j < 2 * m; ++j)
    if (q_form_bits(m, a.column(j)))
      s |= 1u << (2 * m - 1 - j);
  return a.apply(s);
}

GF2Vector twist_vector(const SpElement& a)
{
  return {a.dim(), twist_vector_bits(a)};
}

} // namespace finegrad
