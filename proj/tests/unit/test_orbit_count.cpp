#include <doctest.h>

#include <chrono>

#include "finegrad/orbit_count.hpp"
#include "reference.hpp"

using namespace finegrad;
using finegrad::testing::orbit_reference;

namespace {

OrbitCounter& shared_counter()
{
  static OrbitCounter counter;
  return counter;
}

const Action kActions[] = {Action::asp, Action::sp_plus, Action::sp_minus};

} // namespace

TEST_CASE("shape-path Burnside count")
{
  auto& orbits = shared_counter();
  CHECK(burnside_shape(orbits.cycle_index(1, Action::asp), 4) == 5);
  CHECK(burnside_shape(orbits.cycle_index(2, Action::sp_minus), 5) == 7);
  for (Action a : kActions)
    for (unsigned m = 1; m <= 3; ++m)
      CHECK(burnside_shape(orbits.cycle_index(m, a), 0) == 1);
  CHECK_THROWS_AS(burnside_shape(orbits.cycle_index(1, Action::asp), 41), BudgetExceeded);
}

TEST_CASE("generating-function Burnside count")
{
  auto& orbits = shared_counter();
  const auto row = burnside_gf(orbits.cycle_index(2, Action::asp), 12).values;
  const std::vector<int> expected = {1, 1, 2, 4, 9, 17, 38, 74, 158, 318, 657, 1304, 2612};
  REQUIRE(row.size() == 13);
  for (std::size_t q = 0; q <= 12; ++q)
    CHECK(row[q] == expected[q]);
  CHECK(burnside_gf(orbits.cycle_index(3, Action::sp_plus), 10).values[10] == 4161);
  CHECK(burnside_gf(orbits.cycle_index(3, Action::asp), 12).values[12] == 379501);
  CHECK_THROWS_AS(burnside_gf(orbits.cycle_index(1, Action::asp), 257), BudgetExceeded);
}

TEST_CASE("orbit counts against the reference tables, m <= 3")
{
  auto& orbits = shared_counter();
  const std::pair<Action, const char*> actions[] = {
      {Action::asp, "asp"}, {Action::sp_minus, "sp-"}, {Action::sp_plus, "sp+"}};
  for (auto [action, tag] : actions)
    for (unsigned m = 1; m <= 3; ++m)
      for (unsigned q = 1; q <= 12; ++q)
        CHECK_MESSAGE(orbits.count(m, action, q).str() == orbit_reference(tag, m, q), tag,
                      " m=", m, " q=", q);
}

TEST_CASE("m = 0 conventions")
{
  auto& orbits = shared_counter();
  CHECK(orbits.count(0, Action::sp_minus, 3) == 0);
  CHECK(orbits.count(0, Action::sp_minus, 0) == 1);
  CHECK(orbits.count(0, Action::asp, 17) == 1);
  CHECK(orbits.count(0, Action::sp_plus, 5) == 1);
  const auto t = orbits.table(0, Action::sp_minus, 4);
  CHECK(t == std::vector<BigInt>{1, 0, 0, 0, 0});
}

TEST_CASE("direct orbit enumeration")
{
  CHECK(orbits_direct(1, Action::asp, 6) == 9);
  CHECK(orbits_direct(2, Action::sp_plus, 4) == 8);
  CHECK(orbits_direct(2, Action::asp, 2) == 2);
  CHECK_THROWS_AS(orbits_direct(3, Action::asp, 2), BudgetExceeded);
  CHECK_THROWS_AS(orbits_direct(2, Action::asp, 16), BudgetExceeded);
}

TEST_CASE("oracle equivalence: direct = shape = generating function")
{
  auto& orbits = shared_counter();
  int compared = 0;
  for (Action a : kActions)
    for (unsigned m = 1; m <= 2; ++m) {
      const auto& c = orbits.cycle_index(m, a);
      const auto gf = burnside_gf(c, 6).values;
      for (unsigned q = 0; q <= 6; ++q) {
        const auto direct = orbits_direct(m, a, q);
        CHECK(direct == burnside_shape(c, q));
        CHECK(direct == gf[q]);
        ++compared;
      }
    }
  CHECK(compared == 42);
}

TEST_CASE("path equivalence for m <= 3, q <= 40")
{
  auto& orbits = shared_counter();
  for (Action a : kActions)
    for (unsigned m = 1; m <= 3; ++m) {
      const auto& c = orbits.cycle_index(m, a);
      const auto gf = burnside_gf(c, 40).values;
      for (unsigned q = 0; q <= 40; ++q)
        CHECK_MESSAGE(burnside_shape(c, q) == gf[q], action_tag(a), " m=", m, " q=", q);
    }
}

TEST_CASE("bounds sandwich")
{
  auto& orbits = shared_counter();
  for (Action a : kActions)
    for (unsigned m = 1; m <= 3; ++m) {
      const auto values = orbits.table(m, a, 101);
      for (unsigned q = 0; q <= 101; ++q) {
        const auto [lower, upper] = orbit_bounds(m, a, q);
        CHECK(lower <= values[q]);
        CHECK(values[q] <= upper);
      }
    }
  // Lower bound attained for m = 1 (asp) and for N_-(2, q).
  const auto asp1 = orbits.table(1, Action::asp, 101);
  const auto minus2 = orbits.table(2, Action::sp_minus, 101);
  for (unsigned q = 0; q <= 101; ++q) {
    CHECK(asp1[q] == count_partitions_at_most(4, q));
    CHECK(minus2[q] == count_partitions_at_most(6, q));
  }
  const auto [lo, hi] = orbit_bounds(3, Action::asp, 12);
  CHECK(lo <= 379501);
  CHECK(379501 <= hi);
  CHECK_THROWS_AS(orbit_bounds(0, Action::asp, 3), std::invalid_argument);
}

TEST_CASE("small-q rigidity")
{
  auto& orbits = shared_counter();
  for (unsigned m = 1; m <= 3; ++m)
    for (unsigned q = 0; q <= 2; ++q)
      CHECK(orbits.count(m, Action::asp, q) == count_partitions(q));
}

TEST_CASE("divisibility is asserted, never rounded")
{
  auto c = cycle_index_asp(1);
  // Same total, different distribution: no longer a group's cycle index.
  c.entries[Partition{4}] -= 1;
  c.entries[Partition{2, 2}] += 1;
  bool threw = false;
  try {
    burnside_gf(c, 12);
  } catch (const ConsistencyError&) {
    threw = true;
  }
  CHECK(threw);
  CHECK_THROWS_AS(burnside_shape(c, 2), ConsistencyError);
}

TEST_CASE("missing and imported cycle indices")
{
  OrbitCounter orbits;
  try {
    orbits.count(4, Action::asp, 3);
    FAIL("expected a missing cycle index");
  } catch (const MissingCycleIndex& e) {
    CHECK(e.m() == 4);
    CHECK(std::string(e.what()).find("cycle index unavailable for m=4") != std::string::npos);
  }
  CHECK_FALSE(orbits.available(4, Action::sp_minus));
  CHECK(orbits.available(3, Action::sp_minus));
  CHECK_THROWS_AS(orbits.add_cycle_index(cycle_index_asp(1)), std::invalid_argument);

  // A trivial but invariant-satisfying m = 4 cycle index: all mass on the
  // identity. The orbit count is then |G|^-1 |G| C(q + M - 1, q).
  CycleIndex fake;
  fake.m = 4;
  fake.action = Action::sp_minus;
  fake.points = point_count(Action::sp_minus, 4);
  fake.order = group_order(Action::sp_minus, 4);
  fake.entries[Partition(std::vector<std::uint32_t>(fake.points, 1))] = fake.order;
  orbits.add_cycle_index(fake, "synthetic");
  CHECK(orbits.available(4, Action::sp_minus));
  CHECK(orbits.count(4, Action::sp_minus, 2) == binomial(fake.points + 1, 2));
  REQUIRE(orbits.imports().size() == 1);
  CHECK(orbits.imports()[0].source == "synthetic");
}

TEST_CASE("memoized counts are fast after the first pass")
{
  auto& orbits = shared_counter();
  orbits.table(3, Action::asp, 12);
  const auto start = std::chrono::steady_clock::now();
  for (unsigned q = 1; q <= 12; ++q)
    orbits.count(3, Action::asp, q);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  CHECK(elapsed < std::chrono::seconds(1));
}
