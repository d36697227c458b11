#pragma once

#include <stdexcept>
#include <string>

namespace voss {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

enum class Singularity { fold, cusp };

inline const char* to_string(Singularity s) { return s == Singularity::fold ? "fold" : "cusp"; }

// Sample on or beyond a fold/cusp curve of a net.
class SingularDomainError : public DomainError {
public:
  SingularDomainError(Singularity kind, const std::string& what)
      : DomainError(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  Singularity kind() const { return kind_; }

private:
  Singularity kind_;
};

// Numerical procedure did not converge or lost its invariants.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DegenerateError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace voss
