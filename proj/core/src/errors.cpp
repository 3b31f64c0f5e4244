#include "qkflag/errors.hpp"

namespace qkflag {

int add_exp(int a, int b) {
  int r;
  if (__builtin_add_overflow(a, b, &r))
    throw ExponentOverflow(std::to_string(a) + " + " + std::to_string(b));
  return r;
}

int mul_exp(int a, int b) {
  int r;
  if (__builtin_mul_overflow(a, b, &r))
    throw ExponentOverflow(std::to_string(a) + " * " + std::to_string(b));
  return r;
}

}  // namespace qkflag
