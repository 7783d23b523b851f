#ifndef REACHMOD_ERRORS_HPP
#define REACHMOD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace reachmod {

/// Malformed polynomial text or system file. Carries an optional location
/// ("line 4, field A[1][2]", "column 7") used by the CLI diagnostics.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::string location = {})
      : std::runtime_error(location.empty() ? what : location + ": " + what),
        location_(std::move(location)) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

/// Ranks, matrix shapes or ring variables do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands live in different polynomial rings.
class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// S-pair or chain-iteration cap hit. Never accompanied by a partial result.
class ResourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A post-condition checked at runtime failed. Indicates an engine bug or a
/// corrupted certificate, never bad user input.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace reachmod

#endif  // REACHMOD_ERRORS_HPP
