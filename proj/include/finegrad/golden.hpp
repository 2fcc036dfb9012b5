#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "finegrad/orbit_count.hpp"

namespace finegrad {

/// One line of the golden table file:
///   <kind> <key>=<value>... expected=<value>
struct GoldenRecord
{
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;
  std::string expected;
  std::size_t line = 0;

  /// Throws std::out_of_range if the key is absent.
  const std::string& field(std::string_view key) const;
  std::string label() const;
};

/// Throws std::invalid_argument naming the line on malformed input.
std::vector<GoldenRecord> parse_golden(std::string_view text);

/// The table file compiled into the library.
std::string_view golden_data();
const std::vector<GoldenRecord>& golden_records();

enum class VerifyScope { matrix, orbits, seriesA, seriesC, seriesD, constants, all };

VerifyScope parse_scope(std::string_view text);
std::string_view scope_name(VerifyScope scope);

struct VerifyCell
{
  enum class Status { pass, fail, skipped };

  std::string label;
  Status status = Status::pass;
  std::string expected;
  std::string computed; // empty when skipped
  std::string note;
};

/// Recomputes every golden cell in scope. Cells that need a cycle index which
/// is neither built in nor loaded in `orbits` come back as skipped.
std::vector<VerifyCell> verify_golden(VerifyScope scope, OrbitCounter& orbits);

/// Formats `value` with as many decimals as `reference` shows.
std::string format_like(double value, std::string_view reference);

} // namespace finegrad
