#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stylometer {

enum class ErrorKind {
  MalformedRecord,
  DuplicateDocument,
  MalformedLine,
  UnbalancedParens,
  TreeBeforeDocHeader,
  EmptyNode,
  EmptyInput,
  EmptySample,
  ExactModeUnavailable,
  EmptyCategory,
  MissingLabel,
  SingularCovariance,
  TooFewSeeds,
  IncompleteVector,
  InvalidArgument,
  ModelFormat,
  MissingDependency,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Where in an input an error was detected. Byte offsets for SGML and tree
// files, 1-based line numbers for line-oriented formats.
struct SourceLocation {
  enum class Unit { ByteOffset, Line };
  Unit unit = Unit::ByteOffset;
  std::size_t value = 0;

  static SourceLocation at_byte(std::size_t offset) { return {Unit::ByteOffset, offset}; }
  static SourceLocation at_line(std::size_t line) { return {Unit::Line, line}; }
  std::string describe() const;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<SourceLocation> where = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<SourceLocation>& where() const noexcept { return where_; }
  // Message without the kind prefix and location suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::optional<SourceLocation> where_;
  std::string detail_;
};

// A recoverable problem recorded in lenient mode instead of thrown.
struct Diagnostic {
  ErrorKind kind;
  std::string message;
  std::optional<SourceLocation> where;
};

enum class ParseMode { Strict, Lenient };

}  // namespace stylometer
