#pragma once

#include <stdexcept>
#include <string>

namespace finegrad {

enum class Sign { plus, minus };

inline const char* sign_symbol(Sign sign) { return sign == Sign::plus ? "+" : "-"; }

/// A built-in computation was asked for more than it is allowed to do.
class BudgetExceeded : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// An exactness check failed; signals corrupted input or a coding defect.
class ConsistencyError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

} // namespace finegrad
