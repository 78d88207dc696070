#pragma once

#include <stdexcept>
#include <string>

namespace covquiz {

/// Base for every error raised by the toolkit.
///
/// `is_io()` separates file/format problems from domain failures so the
/// command-line front end can map them onto distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual bool is_io() const noexcept { return false; }
};

class IoError : public Error {
 public:
  using Error::Error;
  bool is_io() const noexcept override { return true; }
};

// minilang
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// flowgraph
class PathExplosion : public Error {
 public:
  using Error::Error;
};

class UncoverableElement : public Error {
 public:
  using Error::Error;
};

// bank
class DuplicateId : public Error {
 public:
  using Error::Error;
};

class DuplicateProgram : public Error {
 public:
  using Error::Error;
};

class SchemaMismatch : public Error {
 public:
  using Error::Error;
  bool is_io() const noexcept override { return true; }
};

class VerificationFailure : public Error {
 public:
  using Error::Error;
};

// qgen
class NoPeer : public Error {
 public:
  using Error::Error;
};

class InsufficientDistractors : public Error {
 public:
  using Error::Error;
};

class SpecUnachievable : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

// render_export
class PayloadTooLarge : public Error {
 public:
  using Error::Error;
};

// psychometrics
class UnknownOption : public Error {
 public:
  using Error::Error;
};

class RaggedRow : public Error {
 public:
  using Error::Error;
  bool is_io() const noexcept override { return true; }
};

class ConstantVector : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace covquiz
