#include "finegrad/partitions.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace finegrad {

Partition::Partition(std::vector<std::uint32_t> parts)
: parts_(std::move(parts))
{
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] == 0)
      throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
  }
}

Partition::Partition(std::initializer_list<std::uint32_t> parts)
: Partition(std::vector<std::uint32_t>(parts))
{}

Partition Partition::from_unsorted(std::vector<std::uint32_t> values)
{
  std::sort(values.begin(), values.end(), std::greater<>());
  return Partition(std::move(values));
}

Partition Partition::from_multiplicities(
    std::span<const std::pair<std::uint32_t, std::uint32_t>> groups)
{
  std::vector<std::uint32_t> values;
  for (auto [size, count] : groups)
    values.insert(values.end(), count, size);
  return from_unsorted(std::move(values));
}

std::uint64_t Partition::weight() const
{
  return std::accumulate(parts_.begin(), parts_.end(), std::uint64_t{0});
}

std::vector<std::pair<std::uint32_t, std::uint32_t>>
Partition::multiplicities() const
{
  std::vector<std::pair<std::uint32_t, std::uint32_t>> groups;
  for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) {
    if (!groups.empty() && groups.back().first == *it)
      ++groups.back().second;
    else
      groups.emplace_back(*it, 1);
  }
  return groups;
}

std::string Partition::str() const
{
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i)
    out << (i ? "," : "") << parts_[i];
  out << ')';
  return out.str();
}

namespace {

std::mutex partition_memo_mutex;
std::map<std::pair<std::uint64_t, std::uint64_t>, BigInt> partition_memo;

// Partitions of q into parts of size <= max_part, which by conjugation equals
// the number with at most max_part parts.
BigInt bounded_part_count(std::uint64_t max_part, std::uint64_t q)
{
  std::vector<BigInt> table(q + 1);
  table[0] = 1;
  for (std::uint64_t part = 1; part <= max_part; ++part)
    for (std::uint64_t j = part; j <= q; ++j)
      table[j] += table[j - part];
  return table[q];
}

} // namespace

BigInt count_partitions_at_most(std::uint64_t max_parts, std::uint64_t q)
{
  if (max_parts == 0)
    return q == 0 ? 1 : 0;
  const auto key = std::make_pair(std::min(max_parts, q), q);
  {
    std::lock_guard lock(partition_memo_mutex);
    if (auto it = partition_memo.find(key); it != partition_memo.end())
      return it->second;
  }
  BigInt value = bounded_part_count(key.first, q);
  std::lock_guard lock(partition_memo_mutex);
  partition_memo.emplace(key, value);
  return value;
}

BigInt count_partitions(std::uint64_t q)
{
  return count_partitions_at_most(q, q);
}

namespace {

void visit_partitions(std::uint32_t remaining, std::uint32_t max_part,
                      std::uint32_t parts_left,
                      std::vector<std::uint32_t>& prefix,
                      const std::function<void(const Partition&)>& visit)
{
  if (remaining == 0) {
    visit(Partition(prefix));
    return;
  }
  if (parts_left == 0)
    return;
  for (std::uint32_t part = std::min(remaining, max_part); part >= 1; --part) {
    // The remaining parts_left - 1 parts can absorb at most part each.
    if (std::uint64_t{part} * parts_left < remaining)
      break;
    prefix.push_back(part);
    visit_partitions(remaining - part, part, parts_left - 1, prefix, visit);
    prefix.pop_back();
  }
}

} // namespace

void for_each_partition(std::uint32_t q, std::uint32_t max_parts,
                        const std::function<void(const Partition&)>& visit)
{
  std::vector<std::uint32_t> prefix;
  visit_partitions(q, q, max_parts, prefix, visit);
}

std::vector<Partition> enumerate_partitions(std::uint32_t q,
                                            std::uint32_t max_parts)
{
  std::vector<Partition> result;
  for_each_partition(q, max_parts,
                     [&](const Partition& p) { result.push_back(p); });
  return result;
}

Shape shape_of(const Partition& kappa, std::uint32_t point_count)
{
  if (kappa.length() > point_count)
    throw std::invalid_argument("partition " + kappa.str() + " has more than " +
                                std::to_string(point_count) + " parts");
  std::vector<std::uint32_t> multiplicities;
  for (auto [value, count] : kappa.multiplicities())
    multiplicities.push_back(count);
  if (auto zeros = point_count - kappa.length(); zeros > 0)
    multiplicities.push_back(static_cast<std::uint32_t>(zeros));
  return Partition::from_unsorted(std::move(multiplicities));
}

FitsCounter::FitsCounter(const Partition& lambda)
: weight_(lambda.weight())
{
  // Largest sizes first so hopeless branches are pruned early.
  auto groups = lambda.multiplicities();
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    sizes_.push_back(it->first);
    counts_.push_back(it->second);
  }
}

BigInt FitsCounter::count(const Partition& mu)
{
  if (mu.weight() != weight_)
    throw std::invalid_argument("fits: weights differ");
  std::vector<std::uint32_t> remaining = counts_;
  return fill(remaining, mu.parts(), 0);
}

BigInt FitsCounter::fill(std::vector<std::uint32_t>& remaining,
                         const std::vector<std::uint32_t>& holes,
                         std::size_t next_hole)
{
  if (next_hole == holes.size())
    return 1;
  // Holes are sorted descending: a pigeon larger than the next hole never fits.
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (remaining[i] == 0)
      continue;
    if (sizes_[i] > holes[next_hole])
      return 0;
    break;
  }

  Key key{remaining, std::vector<std::uint32_t>(holes.begin() + next_hole,
                                                holes.end())};
  if (auto it = memo_.find(key); it != memo_.end())
    return it->second;

  BigInt total = 0;
  // Choose how many pigeons of each size go into this hole.
  auto choose = [&](auto&& self, std::size_t group, std::uint32_t capacity,
                    const BigInt& ways) -> void {
    if (capacity == 0) {
      total += ways * fill(remaining, holes, next_hole + 1);
      return;
    }
    if (group == sizes_.size())
      return;
    const std::uint32_t size = sizes_[group];
    const std::uint32_t available = remaining[group];
    const std::uint32_t most = std::min(available, capacity / size);
    for (std::uint32_t taken = 0; taken <= most; ++taken) {
      remaining[group] = available - taken;
      self(self, group + 1, capacity - taken * size,
           ways * binomial(available, taken));
    }
    remaining[group] = available;
  };
  choose(choose, 0, holes[next_hole], BigInt{1});

  memo_.emplace(std::move(key), total);
  return total;
}

BigInt fits(const Partition& lambda, const Partition& mu)
{
  return FitsCounter(lambda).count(mu);
}

std::map<Shape, BigInt> shape_counts(std::uint32_t q, std::uint32_t point_count)
{
  std::map<Shape, BigInt> counts;
  for_each_partition(q, point_count, [&](const Partition& kappa) {
    counts[shape_of(kappa, point_count)] += 1;
  });
  return counts;
}

BigInt count_with_shape(const Shape& mu, std::uint32_t q,
                        std::uint32_t point_count)
{
  if (mu.weight() != point_count)
    throw std::invalid_argument("shape " + mu.str() + " is not a partition of " +
                                std::to_string(point_count));
  BigInt count = 0;
  for_each_partition(q, point_count, [&](const Partition& kappa) {
    if (shape_of(kappa, point_count) == mu)
      count += 1;
  });
  return count;
}

} // namespace finegrad
