#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "finegrad/partitions.hpp"

using namespace finegrad;

namespace {

// Euler's pentagonal-number recurrence, independent of the library's DP.
std::vector<BigInt> pentagonal_partition_counts(unsigned n_max)
{
  std::vector<BigInt> p(n_max + 1);
  p[0] = 1;
  for (unsigned n = 1; n <= n_max; ++n) {
    BigInt sum = 0;
    for (long k = 1;; ++k) {
      const long g1 = k * (3 * k - 1) / 2;
      const long g2 = k * (3 * k + 1) / 2;
      if (g1 > static_cast<long>(n))
        break;
      const int sign = (k % 2) ? 1 : -1;
      sum += sign * p[n - g1];
      if (g2 <= static_cast<long>(n))
        sum += sign * p[n - g2];
    }
    p[n] = sum;
  }
  return p;
}

// Multiplicities of values after zero padding, computed without shape_of.
Partition shape_by_hand(const Partition& kappa, unsigned M)
{
  std::map<unsigned, unsigned> counts;
  for (auto part : kappa.parts())
    ++counts[part];
  if (kappa.length() < M)
    counts[0] += M - static_cast<unsigned>(kappa.length());
  std::vector<std::uint32_t> mult;
  for (auto [value, c] : counts)
    mult.push_back(c);
  return Partition::from_unsorted(mult);
}

// Brute force over all maps parts(lambda) -> parts(mu).
std::uint64_t fits_brute(const Partition& lambda, const Partition& mu)
{
  const auto& pigeons = lambda.parts();
  const auto& holes = mu.parts();
  std::vector<std::size_t> choice(pigeons.size(), 0);
  std::uint64_t count = 0;
  while (true) {
    std::vector<std::uint64_t> fill(holes.size(), 0);
    for (std::size_t i = 0; i < pigeons.size(); ++i)
      fill[choice[i]] += pigeons[i];
    bool exact = true;
    for (std::size_t j = 0; j < holes.size(); ++j)
      exact = exact && fill[j] == holes[j];
    count += exact;
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == holes.size())
      choice[i++] = 0;
    if (i == choice.size())
      break;
  }
  return count;
}

} // namespace

TEST_CASE("partition type validates its invariants")
{
  CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Partition({2, 0}), std::invalid_argument);
  const Partition p{3, 2, 1, 1};
  CHECK(p.weight() == 7);
  CHECK(p.length() == 4);
  CHECK(p.str() == "(3,2,1,1)");
  CHECK(Partition{}.weight() == 0);
  CHECK(Partition::from_unsorted({1, 3, 1, 2}) == p);
}

TEST_CASE("partition counts")
{
  CHECK(count_partitions(0) == 1);
  CHECK(count_partitions(5) == 7);
  const auto euler = pentagonal_partition_counts(200);
  for (unsigned q = 0; q <= 200; ++q)
    CHECK(count_partitions(q) == euler[q]);
  CHECK(count_partitions(101) == euler[101]);
}

TEST_CASE("partitions into at most M parts")
{
  CHECK(count_partitions_at_most(3, 5) == 5);
  CHECK(count_partitions_at_most(1, 7) == 1);
  for (unsigned q = 0; q <= 30; ++q)
    CHECK(count_partitions_at_most(q + 3, q) == count_partitions(q));
  // p_3(1 + 2s) is the integer nearest to (s+2)^2 / 3.
  for (unsigned s = 0; s <= 60; ++s) {
    const double exact = (s + 2.0) * (s + 2.0) / 3.0;
    CHECK(count_partitions_at_most(3, 1 + 2 * s) == static_cast<long>(std::lround(exact)));
  }
}

TEST_CASE("enumeration order and counts")
{
  const auto four = enumerate_partitions(4, 2);
  REQUIRE(four.size() == 3);
  CHECK(four[0] == Partition{4});
  CHECK(four[1] == Partition{3, 1});
  CHECK(four[2] == Partition{2, 2});

  const auto zero = enumerate_partitions(0, 5);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].empty());

  // Every partition of 12 has at most 12 parts, so this is p(12) = 77.
  const auto twelve = enumerate_partitions(12, 16);
  CHECK(BigInt(twelve.size()) == count_partitions_at_most(16, 12));
  CHECK(twelve.size() == 77);
  CHECK(std::is_sorted(twelve.rbegin(), twelve.rend()));

  for (unsigned q = 0; q <= 40; ++q)
    CHECK(BigInt(enumerate_partitions(q, q).size()) == count_partitions(q));
  for (unsigned M = 1; M <= 8; ++M)
    for (unsigned q = 0; q <= 20; ++q)
      CHECK(BigInt(enumerate_partitions(q, M).size()) == count_partitions_at_most(M, q));
}

TEST_CASE("shape of a partition")
{
  CHECK(shape_of(Partition{4, 4, 4, 3, 1}, 7) == Partition{3, 2, 1, 1});
  CHECK(shape_of(Partition{}, 5) == Partition{5});
  CHECK(shape_of(Partition{2, 2, 1}, 4) == Partition{2, 1, 1});
  CHECK_THROWS_AS(shape_of(Partition{1, 1, 1}, 2), std::invalid_argument);

  // Invariance under injective relabelling of values (0 included).
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned M = 1 + rng() % 8;
    std::vector<std::uint32_t> values(M);
    for (auto& x : values)
      x = rng() % 4;
    // An injective relabelling of {0, 1, 2, 3} into {0, ..., 9}.
    std::vector<std::uint32_t> targets = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::shuffle(targets.begin(), targets.end(), rng);
    std::vector<std::uint32_t> kappa, image;
    for (auto x : values) {
      if (x)
        kappa.push_back(x);
      if (targets[x])
        image.push_back(targets[x]);
    }
    CHECK(shape_of(Partition::from_unsorted(kappa), M) ==
          shape_of(Partition::from_unsorted(image), M));
  }
}

TEST_CASE("fits counts pigeon assignments")
{
  for (std::uint32_t M = 1; M <= 7; ++M) {
    const Partition ones(std::vector<std::uint32_t>(M, 1));
    const Partition single{M};
    CHECK(fits(ones, single) == 1);
    if (M > 1)
      CHECK(fits(single, ones) == 0);
  }
  CHECK(fits(Partition{3, 3, 2}, Partition{5, 3}) == 2);
  CHECK_THROWS_AS(fits(Partition{3}, Partition{2}), std::invalid_argument);

  // Against brute force on every pair of partitions of small weights.
  for (unsigned n = 1; n <= 7; ++n) {
    const auto all = enumerate_partitions(n, n);
    for (const auto& lambda : all)
      for (const auto& mu : all)
        CHECK(fits(lambda, mu) == fits_brute(lambda, mu));
  }

  // fits(lambda, lambda) >= product of multiplicity factorials.
  for (const auto& lambda : enumerate_partitions(9, 9)) {
    BigInt bound = 1;
    for (auto [size, mult] : lambda.multiplicities())
      for (unsigned k = 2; k <= mult; ++k)
        bound *= k;
    CHECK(fits(lambda, lambda) >= bound);
  }
}

TEST_CASE("shape-constrained counts")
{
  CHECK(count_with_shape(Partition{6}, 0, 6) == 1);
  CHECK(count_with_shape(Partition{3, 2, 1, 1}, 16, 7) >= 1);
  CHECK_THROWS_AS(count_with_shape(Partition{3, 2}, 4, 6), std::invalid_argument);

  // Grouping enumerate_partitions by a hand-computed shape.
  for (unsigned M : {1u, 3u, 7u}) {
    for (unsigned q : {0u, 5u, 16u}) {
      std::map<Partition, BigInt> grouped;
      for (const auto& kappa : enumerate_partitions(q, M))
        grouped[shape_by_hand(kappa, M)] += 1;
      CHECK(shape_counts(q, M) == grouped);
      for (const auto& [mu, count] : grouped)
        CHECK(count_with_shape(mu, q, M) == count);
    }
  }

  for (unsigned M = 1; M <= 16; ++M) {
    for (unsigned q = 0; q <= 40; ++q) {
      BigInt total = 0;
      for (const auto& [mu, count] : shape_counts(q, M))
        total += count;
      CHECK(total == count_partitions_at_most(M, q));
    }
  }
}
