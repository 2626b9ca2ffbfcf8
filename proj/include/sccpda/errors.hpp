#pragma once

#include <stdexcept>
#include <string>

namespace sccpda {

// A caller-supplied object violates a domain rule (reducible polynomial,
// invalid PDA, field too small, ...). The CLI maps this to exit status 1.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Reading or parsing external input failed. CLI exit status 2.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed: a bug, never a user error.
class InternalFault : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace sccpda
