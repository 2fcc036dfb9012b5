#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "finegrad/bigint.hpp"
#include "finegrad/cycle_index.hpp"

namespace finegrad {

inline constexpr std::uint32_t kShapePathMaxQ = 40;
inline constexpr std::uint32_t kGeneratingFunctionMaxQ = 256;

/// N(q) = (1/|G|) sum_{lambda, mu} c(lambda) fits(lambda, mu) P(mu -> q).
/// Throws BudgetExceeded for q > kShapePathMaxQ and ConsistencyError if the
/// numerator is not divisible by the group order.
BigInt burnside_shape(const CycleIndex& cidx, std::uint32_t q);

/// Orbit counts for q = 0..q_max from the cycle index evaluated at
/// x_i = 1/(1 - t^i), expanded as an exact power series.
struct OrbitCountTable
{
  unsigned m = 0;
  Action action = Action::asp;
  std::vector<BigInt> values; // indexed by q
};

OrbitCountTable burnside_gf(const CycleIndex& cidx, std::uint32_t q_max);

/// Orbit count by explicit orbit partitioning of all multisets of size q,
/// closing each orbit under the group generators. Independent of the cycle
/// index. Throws BudgetExceeded unless m <= 2, q <= 15 and the number of
/// multisets is at most 10^6.
BigInt orbits_direct(unsigned m, Action action, std::uint32_t q);

struct OrbitBounds
{
  BigInt lower;
  BigInt upper;
};

/// lower = max(p_M(q), ceil(C(q+M-1, q) / |G|)), upper = C(q+M-1, q).
OrbitBounds orbit_bounds(unsigned m, Action action, std::uint32_t q);

/// The orbit count needs a cycle index that is neither built in nor imported.
class MissingCycleIndex : public std::runtime_error
{
public:
  MissingCycleIndex(unsigned m, Action action);
  unsigned m() const { return m_; }
  Action action() const { return action_; }

private:
  unsigned m_;
  Action action_;
};

struct ImportRecord
{
  std::string source;
  Action action;
  unsigned m;
};

/// Orbit counts N(m, q) for all three actions with the edge conventions for
/// m = 0. Built-in cycle indices (m <= kMaxBuiltinM) are computed on first
/// use; larger m must be imported. Thread-safe.
class OrbitCounter
{
public:
  OrbitCounter() = default;
  OrbitCounter(const OrbitCounter&) = delete;
  OrbitCounter& operator=(const OrbitCounter&) = delete;

  /// Registers an externally computed cycle index; replaces any previous one
  /// for the same (action, m). Built-in ranges are never overridden.
  void add_cycle_index(CycleIndex cidx, std::string source = "<memory>");
  /// Reads and validates a cycle-index file.
  void import_file(const std::filesystem::path& path);

  /// Persist built-in cycle indices under `dir` and reuse them on later runs.
  void set_cache_dir(std::filesystem::path dir);

  bool available(unsigned m, Action action) const;
  const CycleIndex& cycle_index(unsigned m, Action action);

  BigInt count(unsigned m, Action action, std::uint32_t q);
  std::vector<BigInt> table(unsigned m, Action action, std::uint32_t q_max);

  std::vector<ImportRecord> imports() const;

private:
  struct Entry
  {
    std::unique_ptr<CycleIndex> cidx;
    std::vector<BigInt> values;
  };
  Entry& entry(unsigned m, Action action);

  mutable std::recursive_mutex mutex_;
  std::map<std::pair<Action, unsigned>, Entry> entries_;
  std::vector<ImportRecord> imports_;
  std::optional<std::filesystem::path> cache_dir_;
};

} // namespace finegrad
