#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace osarr {

/// Malformed or inconsistent user input (bad file, proportional normals, ...).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, std::vector<int> items = {})
      : std::runtime_error(what), items_(std::move(items)) {}

  /// Indices of the offending items (hyperplanes, edges), when known.
  const std::vector<int>& items() const noexcept { return items_; }

 private:
  std::vector<int> items_;
};

/// The input is valid but outside the domain of the requested computation,
/// e.g. homotopy data requested for a supersolvable arrangement.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical identity that must hold failed. Always a bug or a
/// counterexample worth reporting; never silently recovered from.
class InternalInvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace osarr
