#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace psys {

enum class ErrorCode {
  invalid_argument,
  invalid_element_id,
  invalid_poset,
  invalid_hypergraph,
  duplicate_rows,
  duplicate_element,
  unknown_element,
  unknown_attribute,
  unknown_hyperedge,
  degenerate_attribute,
  degenerate_system,
  ground_mismatch,
  singleton_hyperedge,
  same_hyperedge,
  bad_threshold,
  not_a_bijection,
  empty_input,
  missing_column,
  parse_error,
  io_error,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::invalid_element_id: return "InvalidElementId";
    case ErrorCode::invalid_poset: return "InvalidPoset";
    case ErrorCode::invalid_hypergraph: return "InvalidHypergraph";
    case ErrorCode::duplicate_rows: return "DuplicateRows";
    case ErrorCode::duplicate_element: return "DuplicateElement";
    case ErrorCode::unknown_element: return "UnknownElement";
    case ErrorCode::unknown_attribute: return "UnknownAttribute";
    case ErrorCode::unknown_hyperedge: return "UnknownHyperedge";
    case ErrorCode::degenerate_attribute: return "DegenerateAttribute";
    case ErrorCode::degenerate_system: return "DegenerateSystem";
    case ErrorCode::ground_mismatch: return "GroundMismatch";
    case ErrorCode::singleton_hyperedge: return "SingletonHyperedge";
    case ErrorCode::same_hyperedge: return "SameHyperedge";
    case ErrorCode::bad_threshold: return "BadThreshold";
    case ErrorCode::not_a_bijection: return "NotABijection";
    case ErrorCode::empty_input: return "EmptyInput";
    case ErrorCode::missing_column: return "MissingColumn";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::io_error: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : Error(code, detail, std::string(to_string(code)) + ": " + detail) {}

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 protected:
  Error(ErrorCode code, std::string detail, const std::string& what)
      : std::runtime_error(what), code_(code), detail_(std::move(detail)) {}

 private:
  ErrorCode code_;
  std::string detail_;
};

/// Input-format failure; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& detail)
      : Error(ErrorCode::parse_error, detail,
              "ParseError: " + (line ? "line " + std::to_string(line) + ": " : std::string()) + detail),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace psys
