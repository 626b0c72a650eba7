#pragma once

#include <stdexcept>
#include <string>

namespace ffm {

// Work would exceed the configured enumeration / table budget.
class BudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Argument outside the region where a formula is defined or convergent.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// An internal consistency check failed (non-exact division, off-circle root,
// dual evaluations disagreeing). These indicate a bug, not bad input.
class NumericalFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace ffm
