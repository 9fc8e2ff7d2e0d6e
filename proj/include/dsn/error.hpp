#pragma once

#include <stdexcept>
#include <string>

namespace dsn {

// Base of every error the library throws. The CLI maps the subclasses onto
// exit codes (parse 2, budget 3, corruption 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidPoint : public Error {
 public:
  using Error::Error;
};

class InvalidSpace : public Error {
 public:
  using Error::Error;
};

class InvalidTerminal : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An exhaustive search would exceed its configured ceiling.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A structural fact that must hold for any valid input did not.
class StructuralCorruption : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace dsn
