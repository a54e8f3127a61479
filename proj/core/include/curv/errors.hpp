#ifndef CURV_ERRORS_HPP
#define CURV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace curv {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Dimension / argument mismatch between operands.
class DimensionError : public Error {
public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

/// Malformed input file. Carries "path:line: message" text.
class ParseError : public Error {
public:
  ParseError(const std::string& file, long line, const std::string& msg)
      : Error(file + ":" + std::to_string(line) + ": " + msg), line_(line) {}
  long line() const { return line_; }

private:
  long line_;
};

/// An iterative method failed to reach its tolerance.
class ConvergenceError : public Error {
public:
  explicit ConvergenceError(const std::string& what) : Error(what) {}
};

/// A multi-rank exchange violated its contract (mismatched collectives,
/// asymmetric neighbor lists, unconfirmed shared entities, ...).
class ProtocolError : public Error {
public:
  explicit ProtocolError(const std::string& what) : Error(what) {}
};

/// Filesystem failure while reading or writing results.
class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace curv

#endif
