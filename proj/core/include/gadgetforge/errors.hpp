#pragma once

#include <stdexcept>
#include <string>

namespace gadgetforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Polynomial has no inverse modulo 2^k in the quotient ring.
class NotInvertible : public Error {
 public:
  using Error::Error;
};

// Sigma_p - rbar^2 I is not positive definite for the given (s, r, T).
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class MalformedEncoding : public Error {
 public:
  using Error::Error;
};

// Unknown parameter set, bad override file, invalid option values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Key generation hit the restart guard without finding a good trapdoor.
class KeygenExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace gadgetforge
