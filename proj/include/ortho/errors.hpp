#pragma once

#include <stdexcept>
#include <string>

namespace ortho {

// Argument outside an operation's stated domain.
class DomainError : public std::invalid_argument {
public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A series or quadrature failed to reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Spectrum below the cutoff changed between depth and depth+1.
class UnstableEnumeration : public std::runtime_error {
public:
  explicit UnstableEnumeration(const std::string& what) : std::runtime_error(what) {}
};

// Moment method not applicable to the spectrum's dimension / order.
class IncompatibleMethod : public std::invalid_argument {
public:
  explicit IncompatibleMethod(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace ortho
