#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pisot {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is mathematically rejected (reducible, not Pisot, not a unit, ...).
/// The CLI maps these to exit code 2.
class MathError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ReducibleError : public MathError {
 public:
  ReducibleError(const std::string& what, std::string factor)
      : MathError(what), factor_(std::move(factor)) {}
  const std::string& factor() const noexcept { return factor_; }

 private:
  std::string factor_;
};

class NotPisotError : public MathError {
 public:
  NotPisotError(const std::string& what, std::string box)
      : MathError(what), box_(std::move(box)) {}
  const std::string& offending_box() const noexcept { return box_; }

 private:
  std::string box_;
};

class ZeroDivisionError : public MathError {
 public:
  using MathError::MathError;
};

class OutOfRangeError : public MathError {
 public:
  using MathError::MathError;
};

class NotAUnitError : public MathError {
 public:
  using MathError::MathError;
};

class NotInHomoclinicGroupError : public MathError {
 public:
  using MathError::MathError;
};

class ZeroHomoclinicPointError : public MathError {
 public:
  using MathError::MathError;
};

class CharPolyMismatchError : public MathError {
 public:
  using MathError::MathError;
};

class NotUnimodularError : public MathError {
 public:
  using MathError::MathError;
};

class NotConjugatePairError : public MathError {
 public:
  using MathError::MathError;
};

/// Internal safety valves. Hitting one of these indicates a bug or a
/// configuration that is too tight; they are never silently truncated.
class OrbitCapExceeded : public Error {
 public:
  using Error::Error;
};

class PrecisionCapExceeded : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

/// Raised by the injectivity experiment when an exact collision is found that
/// is not explained by the kernel of the coding map.
class CounterexampleFound : public Error {
 public:
  using Error::Error;
};

}  // namespace pisot
