#pragma once

#include <stdexcept>

namespace eulerchi {

// Caller asked for parameters outside an operation's stated domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A profile whose chi values do not come out integral after dividing by n!.
class IntegralityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Two routes to the same quantity disagreed.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace eulerchi
