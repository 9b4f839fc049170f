#pragma once

#include <stdexcept>
#include <string>

namespace dyadic_bellman {

enum class ErrorKind {
  Domain,          // argument outside the mathematical domain
  Surface,         // (f, A) has no finite critical-surface F for this p
  Convergence,     // bracketing root finder failed
  Capacity,        // tree too shallow / too large for the request
  Representation,  // alpha has no finite base-m expansion on this tree
  Divergence,      // geometric series ratio >= 1
  Internal,        // invariant that must hold for valid input did not
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define DYADIC_BELLMAN_ERROR_TYPE(Name, Kind)                              \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

DYADIC_BELLMAN_ERROR_TYPE(DomainError, Domain)
DYADIC_BELLMAN_ERROR_TYPE(SurfaceError, Surface)
DYADIC_BELLMAN_ERROR_TYPE(ConvergenceError, Convergence)
DYADIC_BELLMAN_ERROR_TYPE(CapacityError, Capacity)
DYADIC_BELLMAN_ERROR_TYPE(RepresentationError, Representation)
DYADIC_BELLMAN_ERROR_TYPE(DivergenceError, Divergence)
DYADIC_BELLMAN_ERROR_TYPE(InternalError, Internal)

#undef DYADIC_BELLMAN_ERROR_TYPE

/// Process exit code used by the command-line tool for each error kind.
inline int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain:
    case ErrorKind::Representation:
    case ErrorKind::Divergence:
      return 2;
    case ErrorKind::Surface:
      return 3;
    case ErrorKind::Capacity:
      return 4;
    case ErrorKind::Convergence:
    case ErrorKind::Internal:
      return 1;
  }
  return 1;
}

}  // namespace dyadic_bellman
