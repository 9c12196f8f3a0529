#pragma once

#include <stdexcept>
#include <string>

namespace infoax {

// Base class for every error raised by the library. The CLI maps all of
// these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: a weight vector that does not sum to one, a variable
// that is not total or not surjective, an unparsable rational, ...
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Two objects that must live on the same sample space do not.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class NotAPmf : public Error {
 public:
  using Error::Error;
};

class InvalidBase : public Error {
 public:
  using Error::Error;
};

class DegenerateFit : public Error {
 public:
  using Error::Error;
};

}  // namespace infoax
