#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "finegrad/bigint.hpp"
#include "finegrad/common.hpp"
#include "finegrad/partitions.hpp"

namespace finegrad {

/// The three permutation actions whose orbits on multisets are counted:
/// ASp_{2m}(2) on all of Z_2^{2m}, and the twisted Sp_{2m}(2) action on T_+
/// or T_-.
enum class Action { asp, sp_plus, sp_minus };

/// "asp", "sp+", "sp-".
std::string_view action_tag(Action action);
/// Throws std::invalid_argument on an unknown tag.
Action parse_action(std::string_view tag);

inline Action twisted_action(Sign sign)
{
  return sign == Sign::plus ? Action::sp_plus : Action::sp_minus;
}

/// 4^m for asp, 2^{m-1}(2^m +- 1) for the twisted actions (m >= 1), and
/// 1, 1, 0 respectively for m = 0.
std::uint64_t point_count(Action action, unsigned m);

/// 4^m |Sp_{2m}(2)| for asp, |Sp_{2m}(2)| otherwise.
BigInt group_order(Action action, unsigned m);

/// Distribution of cycle types over a finite group acting on points.
struct CycleIndex
{
  unsigned m = 0;
  Action action = Action::asp;
  std::uint64_t points = 0;
  BigInt order = 0;
  std::map<Partition, BigInt> entries;

  /// Throws ConsistencyError naming the first violated invariant.
  void validate() const;

  bool operator==(const CycleIndex&) const = default;
};

/// Natural affine action x -> Ax + t of ASp_{2m}(2). Translations t that
/// differ by an element of Im(A + I) give conjugate maps, so only one t per
/// coset is traced and weighted by |Im(A + I)|.
/// `workers` = 0 uses std::thread::hardware_concurrency().
CycleIndex cycle_index_asp(unsigned m, unsigned workers = 0);

/// Same result as cycle_index_asp by tracing every pair (A, t).
CycleIndex cycle_index_asp_exhaustive(unsigned m, unsigned workers = 0);

/// Twisted action x -> Ax + t_A of Sp_{2m}(2) restricted to T_+ or T_-.
CycleIndex cycle_index_twisted(unsigned m, Sign sign, unsigned workers = 0);

/// Dispatch on the action; throws BudgetExceeded for m > kMaxBuiltinM.
CycleIndex compute_cycle_index(Action action, unsigned m, unsigned workers = 0);

/// A cycle-index file could not be parsed or failed validation.
class CycleIndexFormatError : public std::runtime_error
{
public:
  CycleIndexFormatError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Writes the `cycle-index v1` text format.
void export_cycle_index(const CycleIndex& cidx, std::ostream& out);
std::string export_cycle_index(const CycleIndex& cidx);

/// Parses and validates the `cycle-index v1` text format.
CycleIndex import_cycle_index(std::istream& in);
CycleIndex import_cycle_index(std::string_view text);

/// "1^2 3^1" rendering used in cycle-index files.
std::string cycle_type_string(const Partition& type);

} // namespace finegrad
