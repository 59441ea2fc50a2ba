#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace msst {

/// Input violates a structural invariant (bad tree, bad graph, bad JSON).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Family or construction parameters outside their valid range.
class ParameterError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Operation is not defined for this input (e.g. girth bound on a forest).
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Generalized-convex instance rejected by validation or level construction.
class InstanceError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A construction produced a tree that contradicts its closed form.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Spanning-tree enumeration exceeded its cap.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t partial_count)
      : std::runtime_error(what), partial_count_(partial_count) {}

  std::uint64_t partial_count() const noexcept { return partial_count_; }

 private:
  std::uint64_t partial_count_;
};

}  // namespace msst
