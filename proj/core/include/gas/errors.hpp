// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <stdexcept>
#include <string>

namespace gas {

// Base class for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter or observation outside the support of a distribution.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Inconsistent model specification or constraint set.
class SpecError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// Estimation could not start or could not produce a result.
class EstimationError : public Error {
 public:
  using Error::Error;
};

}  // namespace gas
