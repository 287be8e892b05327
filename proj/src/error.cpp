#include "stylometer/error.hpp"

namespace stylometer {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedRecord: return "MalformedRecord";
    case ErrorKind::DuplicateDocument: return "DuplicateDocument";
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::UnbalancedParens: return "UnbalancedParens";
    case ErrorKind::TreeBeforeDocHeader: return "TreeBeforeDocHeader";
    case ErrorKind::EmptyNode: return "EmptyNode";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::EmptySample: return "EmptySample";
    case ErrorKind::ExactModeUnavailable: return "ExactModeUnavailable";
    case ErrorKind::EmptyCategory: return "EmptyCategory";
    case ErrorKind::MissingLabel: return "MissingLabel";
    case ErrorKind::SingularCovariance: return "SingularCovariance";
    case ErrorKind::TooFewSeeds: return "TooFewSeeds";
    case ErrorKind::IncompleteVector: return "IncompleteVector";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ModelFormat: return "ModelFormat";
    case ErrorKind::MissingDependency: return "MissingDependency";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

std::string SourceLocation::describe() const {
  return (unit == Unit::ByteOffset ? "byte " : "line ") + std::to_string(value);
}

namespace {

std::string compose(ErrorKind kind, const std::string& message,
                    const std::optional<SourceLocation>& where) {
  std::string out(to_string(kind));
  out += ": ";
  out += message;
  if (where) {
    out += " (at ";
    out += where->describe();
    out += ")";
  }
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::optional<SourceLocation> where)
    : std::runtime_error(compose(kind, message, where)),
      kind_(kind),
      where_(where),
      detail_(message) {}

}  // namespace stylometer
