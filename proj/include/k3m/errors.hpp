#pragma once

#include <stdexcept>
#include <string>

namespace k3m {

// A mathematical precondition or validation condition failed. The message
// names the violated condition.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Malformed textual or JSON input.
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace k3m
