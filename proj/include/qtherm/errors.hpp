#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qtherm {

/// Invalid argument or parameter combination.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Requested object would exceed the supported size.
struct CapacityError : std::length_error {
  using std::length_error::length_error;
};

/// A configuration is not part of the basis it was looked up in.
struct LookupError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// Input is valid but the quantity is undefined for it (empty window, pole, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A numerical routine failed.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::size_t dimension, double residual)
      : std::runtime_error(what), dimension_(dimension), residual_(residual) {}

  std::size_t dimension() const noexcept { return dimension_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t dimension_;
  double residual_;
};

}  // namespace qtherm
