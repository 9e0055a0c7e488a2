#pragma once

#include <stdexcept>
#include <string>

namespace qw1d {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonOrthonormal : Error {
  using Error::Error;
};
struct PhaseConstraintViolation : Error {
  using Error::Error;
};
struct WindowTooSmall : Error {
  using Error::Error;
};
struct NotInClass : Error {
  using Error::Error;
};
struct ClassMismatch : Error {
  using Error::Error;
};
struct DegenerateParameters : Error {
  using Error::Error;
};
struct NotUnitState : Error {
  using Error::Error;
};
struct InvalidWitness : Error {
  using Error::Error;
};
struct InternalInconsistency : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace qw1d
