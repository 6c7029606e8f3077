#pragma once

#include <stdexcept>
#include <string>

namespace wroot {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class CatalogError : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

class DerivativeSingularError : public Error {
 public:
  using Error::Error;
};

class WeightDomainError : public Error {
 public:
  using Error::Error;
};

class SeriesError : public Error {
 public:
  using Error::Error;
};

class InconclusiveOrderError : public Error {
 public:
  using Error::Error;
};

}  // namespace wroot
