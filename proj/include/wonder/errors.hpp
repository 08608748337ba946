#pragma once

#include <stdexcept>
#include <string>

namespace wonder {

/// Malformed or inconsistent input data (parse errors, unknown ids, broken
/// diagram structure).
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A computation could not be completed (rewrite cap, retries exhausted).
class ComputationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A mathematical invariant that must hold did not: either an engine bug or
/// input data that violates the hypotheses in a way validation missed.
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace wonder
