#ifndef L0SPIKE_ERRORS_HPP
#define L0SPIKE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace l0spike {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyTraceError : public Error {
 public:
  EmptyTraceError() : Error("trace is empty (T = 0)") {}
};

// Carries the 1-based index of the first offending sample.
class NonFiniteValueError : public Error {
 public:
  explicit NonFiniteValueError(std::size_t index)
      : Error("non-finite value at index " + std::to_string(index)),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class InvalidGammaError : public Error {
 public:
  explicit InvalidGammaError(double gamma)
      : Error("decay rate must lie in (0, 1), got " + std::to_string(gamma)) {}
};

class InvalidPenaltyError : public Error {
 public:
  explicit InvalidPenaltyError(double lambda)
      : Error("penalty must be nonnegative, got " + std::to_string(lambda)) {}
};

class InvalidChangepointsError : public Error {
 public:
  using Error::Error;
};

class UnknownAlgorithmError : public Error {
 public:
  explicit UnknownAlgorithmError(const std::string& name)
      : Error("unknown algorithm \"" + name + "\" (expected op, pelt, or auto)") {}
};

class SingularGramError : public Error {
 public:
  using Error::Error;
};

class UnstableRecursionError : public Error {
 public:
  using Error::Error;
};

class DegenerateSegmentError : public Error {
 public:
  using Error::Error;
};

class TraceTooShortError : public Error {
 public:
  using Error::Error;
};

class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

class HorizonMismatchError : public Error {
 public:
  using Error::Error;
};

// Raised when an internal quantity violates an invariant that user input
// cannot explain (e.g. a segment cost far below zero).
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace l0spike

#endif  // L0SPIKE_ERRORS_HPP
