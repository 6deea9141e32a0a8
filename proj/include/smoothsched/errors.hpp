#pragma once

#include <stdexcept>
#include <string>

namespace smoothsched {

/// Malformed input: bad instance data, out-of-range indices, parameter domain.
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed its assignment budget.
class BudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// No feasible assignment exists (e.g. a job with no eligible machine).
class Infeasible : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of a diagnostic does not hold.
class PreconditionError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// A generator would allocate more jobs or machines than the configured cap.
class ResourceLimit : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace smoothsched
