#pragma once

#include <stdexcept>
#include <string>

namespace urnnet {

// Base class for every error raised by the library. Invalid input maps to
// the InvalidInput branch; everything else is a runtime failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InvalidSize : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class InvalidParameter : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class InvalidEdge : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class ConnectivityError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class DomainError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class GuardExceeded : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class InsufficientSamples : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class FitFailed : public Error {
 public:
  using Error::Error;
};

class IntegrationDiverged : public Error {
 public:
  using Error::Error;
};

}  // namespace urnnet
