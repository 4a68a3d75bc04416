#pragma once

#include <stdexcept>
#include <string>

namespace lieherm {

/// Input is malformed or violates a structural contract.
class StructuralError : public std::runtime_error {
public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

/// Input is structurally well-formed but numerically outside the supported domain.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lieherm
