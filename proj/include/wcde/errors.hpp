#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wcde {

// Base type for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownNodeError : public Error {
 public:
  using Error::Error;
};

class DuplicateEdgeError : public Error {
 public:
  using Error::Error;
};

class CycleError : public Error {
 public:
  CycleError(const std::string& what, std::vector<std::string> cycle)
      : Error(what), cycle_(std::move(cycle)) {}
  // Vertices of one offending cycle, in walk order.
  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

class PathBudgetExceededError : public Error {
 public:
  using Error::Error;
};

class EndpointInConditioningSetError : public Error {
 public:
  using Error::Error;
};

class SetsOverlapError : public Error {
 public:
  using Error::Error;
};

class IsEndpointError : public Error {
 public:
  using Error::Error;
};

class ContainsEndpointError : public Error {
 public:
  using Error::Error;
};

class TooManyVerticesError : public Error {
 public:
  using Error::Error;
};

class InvalidSampleSizeError : public Error {
 public:
  using Error::Error;
};

class StateSpaceTooLargeError : public Error {
 public:
  using Error::Error;
};

class TargetIntervenedError : public Error {
 public:
  using Error::Error;
};

class PositivityViolationError : public Error {
 public:
  PositivityViolationError(const std::string& what, std::string cell)
      : Error(what), cell_(std::move(cell)) {}
  const std::string& cell() const { return cell_; }

 private:
  std::string cell_;
};

class EmptyCellError : public Error {
 public:
  EmptyCellError(const std::string& what, std::string cell)
      : Error(what), cell_(std::move(cell)) {}
  const std::string& cell() const { return cell_; }

 private:
  std::string cell_;
};

class SingularDesignError : public Error {
 public:
  using Error::Error;
};

class UnsupportedContinuousWeightsError : public Error {
 public:
  using Error::Error;
};

class PropensityUnderflowError : public Error {
 public:
  PropensityUnderflowError(const std::string& what, double min_probability)
      : Error(what), min_probability_(min_probability) {}
  double min_probability() const { return min_probability_; }

 private:
  double min_probability_;
};

class MissingRowError : public Error {
 public:
  using Error::Error;
};

class FixtureNotAdversarialError : public Error {
 public:
  FixtureNotAdversarialError(const std::string& what, double gap)
      : Error(what), gap_(gap) {}
  double gap() const { return gap_; }

 private:
  double gap_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Raised when two internal computation routes disagree.
class InternalCheckError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace wcde
