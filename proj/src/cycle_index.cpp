#include "finegrad/cycle_index.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <thread>
#include <vector>

#include "finegrad/symplectic.hpp"

namespace finegrad {

std::string_view action_tag(Action action)
{
  switch (action) {
  case Action::asp:
    return "asp";
  case Action::sp_plus:
    return "sp+";
  case Action::sp_minus:
    return "sp-";
  }
  return "?";
}

Action parse_action(std::string_view tag)
{
  if (tag == "asp")
    return Action::asp;
  if (tag == "sp+")
    return Action::sp_plus;
  if (tag == "sp-")
    return Action::sp_minus;
  throw std::invalid_argument("unknown action '" + std::string(tag) +
                              "' (expected asp, sp+ or sp-)");
}

std::uint64_t point_count(Action action, unsigned m)
{
  if (m == 0)
    return action == Action::sp_minus ? 0 : 1;
  const std::uint64_t half = std::uint64_t{1} << (m - 1);
  const std::uint64_t full = std::uint64_t{1} << m;
  switch (action) {
  case Action::asp:
    return full * full;
  case Action::sp_plus:
    return half * (full + 1);
  case Action::sp_minus:
    return half * (full - 1);
  }
  return 0;
}

BigInt group_order(Action action, unsigned m)
{
  BigInt order = sp_order(m);
  if (action == Action::asp)
    order <<= 2 * m;
  return order;
}

void CycleIndex::validate() const
{
  if (points != point_count(action, m))
    throw ConsistencyError("point count " + std::to_string(points) +
                           " does not match action " + std::string(action_tag(action)) +
                           " with m=" + std::to_string(m));
  BigInt sum = 0;
  for (const auto& [type, count] : entries) {
    if (type.weight() != points)
      throw ConsistencyError("weight mismatch: cycle type " + type.str() +
                             " is not a partition of " + std::to_string(points));
    if (count <= 0)
      throw ConsistencyError("non-positive count for cycle type " + type.str());
    sum += count;
  }
  if (sum != order)
    throw ConsistencyError("order-sum mismatch: counts sum to " + sum.str() +
                           ", order is " + order.str());
  if (points > 0) {
    const Partition identity(std::vector<std::uint32_t>(points, 1));
    if (!entries.contains(identity))
      throw ConsistencyError("identity cycle type missing");
  }
}

namespace {

// Cycle lengths histogram for a permutation of at most 64 points; slot L-1
// counts cycles of length L.
using TypeKey = std::array<std::uint8_t, 64>;
using Tally = std::map<TypeKey, std::uint64_t>;

// Cycle type of x -> image[x] restricted to the points in `domain`.
TypeKey cycle_type(const std::array<std::uint8_t, 64>& image, std::uint64_t domain)
{
  TypeKey key{};
  std::uint64_t unvisited = domain;
  while (unvisited) {
    const unsigned start = static_cast<unsigned>(std::countr_zero(unvisited));
    unsigned x = start;
    unsigned length = 0;
    do {
      unvisited &= ~(std::uint64_t{1} << x);
      x = image[x];
      ++length;
    } while (x != start);
    ++key[length - 1];
  }
  return key;
}

// image[x] = A x for every point x.
std::array<std::uint8_t, 64> linear_images(const SpElement& a)
{
  std::array<std::uint8_t, 64> image{};
  const unsigned n = 1u << a.dim();
  for (unsigned x = 1; x < n; ++x) {
    const unsigned low = static_cast<unsigned>(std::countr_zero(x));
    image[x] = static_cast<std::uint8_t>(image[x & (x - 1)] ^ a.column(low));
  }
  return image;
}

Partition to_partition(const TypeKey& key)
{
  std::vector<std::pair<std::uint32_t, std::uint32_t>> groups;
  for (unsigned i = 0; i < key.size(); ++i)
    if (key[i])
      groups.emplace_back(i + 1, key[i]);
  return Partition::from_multiplicities(groups);
}

// Splits the group into contiguous chunks, tallies each on its own thread and
// merges by addition, so the result does not depend on the worker count.
CycleIndex tally_group(Action action, unsigned m, unsigned workers,
                       const std::function<void(const SpElement&, Tally&)>& visit)
{
  const auto& group = sp_group(m);
  if (workers == 0)
    workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(group.size()));

  std::vector<Tally> tallies(workers);
  auto run = [&](unsigned w) {
    const std::size_t begin = group.size() * w / workers;
    const std::size_t end = group.size() * (w + 1) / workers;
    for (std::size_t i = begin; i < end; ++i)
      visit(group[i], tallies[w]);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w)
      threads.emplace_back(run, w);
  }

  CycleIndex cidx;
  cidx.m = m;
  cidx.action = action;
  cidx.points = point_count(action, m);
  cidx.order = group_order(action, m);
  for (const auto& tally : tallies)
    for (const auto& [key, count] : tally)
      cidx.entries[to_partition(key)] += count;
  cidx.validate();
  return cidx;
}

void check_builtin(unsigned m)
{
  if (m > kMaxBuiltinM)
    throw BudgetExceeded("enumeration budget exceeded: cycle index for m=" +
                         std::to_string(m) + " (built-in limit m<=" +
                         std::to_string(kMaxBuiltinM) + ")");
  if (m == 0)
    throw std::invalid_argument("cycle index requires m >= 1");
}

std::uint64_t all_points(unsigned m)
{
  const unsigned n = 1u << (2 * m);
  return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

} // namespace

CycleIndex cycle_index_asp(unsigned m, unsigned workers)
{
  check_builtin(m);
  const std::uint64_t domain = all_points(m);
  const unsigned dim = 2 * m;
  return tally_group(Action::asp, m, workers, [&](const SpElement& a, Tally& tally) {
    const auto linear = linear_images(a);
    // Echelon basis of Im(A + I), one distinct leading bit per vector.
    std::array<std::uint32_t, 12> basis{};
    std::uint32_t pivots = 0;
    unsigned rank = 0;
    for (unsigned j = 0; j < dim; ++j) {
      std::uint32_t v = a.column(j) ^ (1u << j);
      for (unsigned k = 0; k < rank; ++k)
        v = std::min(v, v ^ basis[k]);
      if (v == 0)
        continue;
      basis[rank++] = v;
      std::sort(basis.begin(), basis.begin() + rank, std::greater<>());
      pivots |= std::bit_floor(v);
    }
    const std::uint64_t weight = std::uint64_t{1} << rank;
    // Coset representatives: all vectors supported off the pivot bits.
    const std::uint32_t free_bits = ((1u << dim) - 1) & ~pivots;
    std::uint32_t t = 0;
    do {
      std::array<std::uint8_t, 64> image;
      for (unsigned x = 0; x < (1u << dim); ++x)
        image[x] = static_cast<std::uint8_t>(linear[x] ^ t);
      tally[cycle_type(image, domain)] += weight;
      t = (t - free_bits) & free_bits; // next subset of free_bits
    } while (t != 0);
  });
}

CycleIndex cycle_index_asp_exhaustive(unsigned m, unsigned workers)
{
  check_builtin(m);
  const std::uint64_t domain = all_points(m);
  const unsigned n = 1u << (2 * m);
  return tally_group(Action::asp, m, workers, [&](const SpElement& a, Tally& tally) {
    const auto linear = linear_images(a);
    for (unsigned t = 0; t < n; ++t) {
      std::array<std::uint8_t, 64> image;
      for (unsigned x = 0; x < n; ++x)
        image[x] = static_cast<std::uint8_t>(linear[x] ^ t);
      tally[cycle_type(image, domain)] += 1;
    }
  });
}

CycleIndex cycle_index_twisted(unsigned m, Sign sign, unsigned workers)
{
  check_builtin(m);
  const unsigned n = 1u << (2 * m);
  std::uint64_t domain = 0;
  for (unsigned x = 0; x < n; ++x)
    if (q_form_bits(m, x) == (sign == Sign::minus))
      domain |= std::uint64_t{1} << x;
  return tally_group(twisted_action(sign), m, workers,
                     [&](const SpElement& a, Tally& tally) {
                       auto image = linear_images(a);
                       const auto t = static_cast<std::uint8_t>(twist_vector_bits(a));
                       for (unsigned x = 0; x < n; ++x)
                         image[x] ^= t;
                       tally[cycle_type(image, domain)] += 1;
                     });
}

CycleIndex compute_cycle_index(Action action, unsigned m, unsigned workers)
{
  switch (action) {
  case Action::asp:
    return cycle_index_asp(m, workers);
  case Action::sp_plus:
    return cycle_index_twisted(m, Sign::plus, workers);
  case Action::sp_minus:
    return cycle_index_twisted(m, Sign::minus, workers);
  }
  throw std::invalid_argument("unknown action");
}

} // namespace finegrad
