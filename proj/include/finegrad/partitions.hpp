#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "finegrad/bigint.hpp"

namespace finegrad {

/// A weakly decreasing sequence of positive integers. The empty sequence is
/// the partition of 0.
class Partition
{
public:
  Partition() = default;

  /// Throws std::invalid_argument unless `parts` is weakly decreasing and
  /// strictly positive.
  explicit Partition(std::vector<std::uint32_t> parts);
  Partition(std::initializer_list<std::uint32_t> parts);

  /// Sorts arbitrary positive values into a partition.
  static Partition from_unsorted(std::vector<std::uint32_t> values);

  /// Builds (size^count ...) from (size, count) pairs in any order.
  static Partition from_multiplicities(
      std::span<const std::pair<std::uint32_t, std::uint32_t>> groups);

  const std::vector<std::uint32_t>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  std::uint64_t weight() const;
  bool empty() const { return parts_.empty(); }

  /// Distinct part sizes with their multiplicities, in increasing size order.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> multiplicities() const;

  /// "(3,2,1,1)" style rendering; "()" for the empty partition.
  std::string str() const;

  auto operator<=>(const Partition&) const = default;
  bool operator==(const Partition&) const = default;

private:
  std::vector<std::uint32_t> parts_;
};

/// A partition of the point count M obtained from a partition kappa of
/// length <= M: pad kappa with zeros to M entries, then sort the
/// multiplicities of its distinct values.
using Shape = Partition;

/// p(q), the number of partitions of q (p(0) = 1).
BigInt count_partitions(std::uint64_t q);

/// p_M(q), the number of partitions of q into at most M parts.
BigInt count_partitions_at_most(std::uint64_t max_parts, std::uint64_t q);

/// Visits every partition of q with at most `max_parts` parts exactly once,
/// in reverse-lexicographic order: (4), (3,1), (2,2), (2,1,1), ...
void for_each_partition(std::uint32_t q, std::uint32_t max_parts,
                        const std::function<void(const Partition&)>& visit);

std::vector<Partition> enumerate_partitions(std::uint32_t q,
                                            std::uint32_t max_parts);

/// Shape of kappa relative to a point set of size M.
/// Throws std::invalid_argument if kappa has more than M parts.
Shape shape_of(const Partition& kappa, std::uint32_t point_count);

/// Number of maps from the parts of lambda to the parts of mu filling every
/// part of mu exactly. Parts are distinguishable even when equal.
/// Throws std::invalid_argument if the weights differ.
BigInt fits(const Partition& lambda, const Partition& mu);

/// fits(lambda, .) for one fixed lambda, memoized across calls.
/// Not thread-safe; use one instance per thread.
class FitsCounter
{
public:
  explicit FitsCounter(const Partition& lambda);

  BigInt count(const Partition& mu);

private:
  using Key = std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>;

  BigInt fill(std::vector<std::uint32_t>& remaining,
              const std::vector<std::uint32_t>& holes, std::size_t next_hole);

  std::vector<std::uint32_t> sizes_;
  std::vector<std::uint32_t> counts_;
  std::uint64_t weight_;
  std::map<Key, BigInt> memo_;
};

/// Number of partitions kappa of q, length <= M, with shape_of(kappa, M) = mu.
/// Throws std::invalid_argument if weight(mu) != M.
BigInt count_with_shape(const Shape& mu, std::uint32_t q,
                        std::uint32_t point_count);

/// All shapes of partitions of q with at most M parts, with their counts.
std::map<Shape, BigInt> shape_counts(std::uint32_t q, std::uint32_t point_count);

} // namespace finegrad
