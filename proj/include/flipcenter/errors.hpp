#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace flipcenter {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class DuplicatePoint : public Error {
 public:
  using Error::Error;
};

/// Raised when an edge set fails triangulation validation. Carries every
/// violation found, not only the first.
class NotATriangulation : public Error {
 public:
  explicit NotATriangulation(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class NotFlippable : public Error {
 public:
  using Error::Error;
};

class NotIndependent : public Error {
 public:
  using Error::Error;
};

class UnknownEdge : public Error {
 public:
  using Error::Error;
};

class PointSetMismatch : public Error {
 public:
  PointSetMismatch() : Error("triangulations are defined on different point sets") {}
};

class InvalidStep : public Error {
 public:
  InvalidStep(std::size_t index, const std::string& why);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class NoProgress : public Error {
 public:
  using Error::Error;
};

class ExactModeUnavailable : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. `line` is 0 when the problem is structural and only
/// the field path is known.
class ParseError : public Error {
 public:
  ParseError(std::string field, std::size_t line, const std::string& what);
  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace flipcenter
