#pragma once

#include <stdexcept>
#include <string>

namespace qkflag {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QKFLAG_ERROR(Name)                      \
  class Name : public Error {                   \
   public:                                      \
    explicit Name(const std::string& what)      \
        : Error(std::string(#Name ": ") + what) {} \
  }

QKFLAG_ERROR(RegistryMismatch);
QKFLAG_ERROR(InexactDivision);
QKFLAG_ERROR(IndexOutOfRange);
QKFLAG_ERROR(NonInvertibleBinding);
QKFLAG_ERROR(ExponentOverflow);
QKFLAG_ERROR(SignViolation);
QKFLAG_ERROR(InvalidShape);
QKFLAG_ERROR(EliminationFailure);
QKFLAG_ERROR(CapExceeded);
QKFLAG_ERROR(ShapeMismatch);
QKFLAG_ERROR(SingularSystem);
QKFLAG_ERROR(InconsistentSystem);
QKFLAG_ERROR(PoleAtQ1);
QKFLAG_ERROR(ParseError);

#undef QKFLAG_ERROR

// checked exponent arithmetic
int add_exp(int a, int b);
int mul_exp(int a, int b);

}  // namespace qkflag
