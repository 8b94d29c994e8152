#pragma once

#include <stdexcept>
#include <string>

namespace tranche {

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Value outside the image of a map (e.g. lap inversion).
struct RangeError : std::range_error {
  using std::range_error::range_error;
};

// Requested detail is finer than the numerical grid can resolve.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A construction step produced inconsistent data.
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structural problem in a symbolic specification.
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tranche
