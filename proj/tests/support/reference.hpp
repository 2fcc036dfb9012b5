#pragma once

// Lookup of values from the embedded reference tables (data/golden.txt).

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "finegrad/golden.hpp"

namespace finegrad::testing {

/// Expected value of the unique record of `kind` whose fields match `fields`.
inline std::string reference(const std::string& kind,
                             const std::vector<std::pair<std::string, std::string>>& fields)
{
  for (const auto& record : golden_records()) {
    if (record.kind != kind)
      continue;
    bool match = true;
    for (const auto& [key, value] : fields)
      if (record.field(key) != value) {
        match = false;
        break;
      }
    if (match)
      return record.expected;
  }
  throw std::out_of_range("no reference value for " + kind);
}

inline std::string orbit_reference(const std::string& action, unsigned m, unsigned q)
{
  return reference("orbits", {{"action", action}, {"m", std::to_string(m)}, {"q", std::to_string(q)}});
}

inline double constant_reference(const std::string& name)
{
  return std::stod(reference("constant", {{"name", name}}));
}

} // namespace finegrad::testing
