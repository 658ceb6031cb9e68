#pragma once

#include <stdexcept>
#include <string>

namespace newtosc {

// Base for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Input is outside the domain of the requested operation.
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

struct SingularMatrixError : DomainError {
  explicit SingularMatrixError(const std::string& msg) : DomainError(msg) {}
};

struct ZeroVectorError : DomainError {
  explicit ZeroVectorError(const std::string& msg) : DomainError(msg) {}
};

// A weight vector that must be entrywise positive has a zero or negative
// entry; the requested closed form does not apply.
struct NonPositiveWeightError : DomainError {
  explicit NonPositiveWeightError(const std::string& msg) : DomainError(msg) {}
};

// A computation declined to answer because its validity conditions could not
// be certified. Distinct from DomainError: the input is legal, the method is
// not applicable.
struct Refusal : Error {
  explicit Refusal(const std::string& msg) : Error(msg) {}
};

// A numeric integral whose convergence could not be certified; the engine
// refuses rather than extrapolate.
struct NonConvergentError : Refusal {
  explicit NonConvergentError(const std::string& msg) : Refusal(msg) {}
};

// A request whose cost bound is exceeded (too many variables for the generic
// quadrature path, or an oscillation budget past the supported range).
struct CostGuardError : Refusal {
  explicit CostGuardError(const std::string& msg) : Refusal(msg) {}
};

}  // namespace newtosc
