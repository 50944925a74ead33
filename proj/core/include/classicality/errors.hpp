#pragma once

#include <stdexcept>
#include <string>

namespace classicality {

/// Input lies outside the mathematical domain of an operation (invalid
/// spectrum, angle outside the ordering chamber, wrong cross-section type).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computation exceeds a practical size bound (e.g. permanent order).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A caller broke a precondition (unsorted input, mismatched dimensions).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace classicality
