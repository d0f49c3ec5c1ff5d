#pragma once

#include <stdexcept>
#include <string>

namespace complasso {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ConstantColumnError : public Error {
 public:
  explicit ConstantColumnError(int column)
      : Error("column " + std::to_string(column) + " has zero variance"), column(column) {}
  int column;
};

class ParseError : public Error {
 public:
  ParseError(int row, int col)
      : Error("unparseable value at row " + std::to_string(row) + ", column " +
              std::to_string(col)),
        row(row),
        col(col) {}
  int row;
  int col;
};

class MissingColumnError : public Error {
 public:
  explicit MissingColumnError(std::string name)
      : Error("column not found: " + name), name(std::move(name)) {}
  std::string name;
};

class RaggedRowError : public Error {
 public:
  explicit RaggedRowError(int row)
      : Error("row " + std::to_string(row) + " has a different number of fields"), row(row) {}
  int row;
};

class BadFractionsError : public Error {
 public:
  explicit BadFractionsError(const std::string& msg) : Error(msg) {}
};

class BadKError : public Error {
 public:
  explicit BadKError(int k, int p)
      : Error("cannot cut into " + std::to_string(k) + " clusters with p = " + std::to_string(p)),
        k(k),
        p(p) {}
  int k;
  int p;
};

class TooFewSignalsError : public Error {
 public:
  TooFewSignalsError() : Error("misclassification needs at least 2 signal indices") {}
};

class DimensionMismatchError : public Error {
 public:
  explicit DimensionMismatchError(const std::string& msg) : Error(msg) {}
};

class EmptyGridError : public Error {
 public:
  EmptyGridError() : Error("selection grid is empty") {}
};

class UnknownEstimatorError : public Error {
 public:
  explicit UnknownEstimatorError(std::string name)
      : Error("unknown estimator: " + name), name(std::move(name)) {}
  std::string name;
};

class UnknownSpecError : public Error {
 public:
  explicit UnknownSpecError(std::string name)
      : Error("unknown simulation design: " + name), name(std::move(name)) {}
  std::string name;
};

class SingularGramError : public Error {
 public:
  SingularGramError() : Error("X_S^T X_S is singular") {}
};

class SingularAError : public Error {
 public:
  SingularAError() : Error("block-diagonal A is singular") {}
};

class NegativeWeightError : public Error {
 public:
  NegativeWeightError() : Error("component weights must be nonnegative") {}
};

class EmptyTestSetError : public Error {
 public:
  EmptyTestSetError() : Error("test set is empty") {}
};

}  // namespace complasso
