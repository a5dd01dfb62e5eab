#pragma once

#include <stdexcept>
#include <string>

namespace mfgpoa {

// Base class for every error raised by the library. Each subclass maps to a
// named failure class of the public contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ZeroDenominatorError : public Error {
 public:
  explicit ZeroDenominatorError(const std::string& name)
      : Error("zero denominator: " + name), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class InvalidModelError : public Error {
 public:
  using Error::Error;
};

class IllPosedError : public Error {
 public:
  using Error::Error;
};

class OutOfDomainError : public Error {
 public:
  using Error::Error;
};

class BadGridError : public Error {
 public:
  using Error::Error;
};

class DegenerateCostError : public Error {
 public:
  using Error::Error;
};

class BlowupError : public Error {
 public:
  using Error::Error;
};

class IncompatibleGridError : public Error {
 public:
  using Error::Error;
};

class UnknownParameterError : public Error {
 public:
  explicit UnknownParameterError(const std::string& name)
      : Error("unknown parameter: " + name), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class InsufficientTailError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfgpoa
