#pragma once

#include <stdexcept>
#include <string>

namespace collatz {

/// Base of every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument: even input to an odd-only map, malformed literal, etc.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Partial map applied outside its domain.
class NotInDomain : public Error {
 public:
  using Error::Error;
};

/// Position 1 handed to an operation that would loop on it forever.
class TrivialLoop : public Error {
 public:
  TrivialLoop() : Error("position 1 is the trivial loop") {}
};

class StepCapExceeded : public Error {
 public:
  using Error::Error;
};

class InsufficientRange : public Error {
 public:
  using Error::Error;
};

class InsufficientRoot : public Error {
 public:
  using Error::Error;
};

class VersionMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace collatz
