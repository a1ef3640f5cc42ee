#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lcp {

enum class ErrorKind {
  malformed_input,
  parse,
  representation,
  closedness,
  ideal,
  usage,
  domain,
  degenerate_xi,
  metric,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::malformed_input: return "malformed-input";
    case ErrorKind::parse: return "parse";
    case ErrorKind::representation: return "representation";
    case ErrorKind::closedness: return "closedness";
    case ErrorKind::ideal: return "ideal";
    case ErrorKind::usage: return "usage";
    case ErrorKind::domain: return "domain";
    case ErrorKind::degenerate_xi: return "degenerate-xi";
    case ErrorKind::metric: return "metric";
  }
  return "unknown";
}

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorKind::parse, message + " (line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace lcp
