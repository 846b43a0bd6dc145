#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace railestate {

enum class Errc {
  DuplicateKey,
  ForeignKeyViolation,
  InvariantViolation,
  UnknownLine,
  MalformedHeader,
  UnparsableDate,
  UnparsableNumber,
  MissingColumn,
  DanglingReference,
  MissingZipProperty,
  UnclosedRing,
  UnsupportedGeometry,
  DegenerateGeometry,
  InsufficientData,
  HorizonExceedsDeltas,
  UnknownTable,
  UnknownColumn,
  UnknownStation,
  InvalidQuery,
  UnsupportedSyntax,
  UnsafeSql,
  Io,
};

std::string_view to_string(Errc code);

/// Base exception for every failure raised by the library. The code is
/// stable and machine-readable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(Errc::UnsupportedSyntax, message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

enum class UnsafeReason { MultipleStatements, Comment, NonSelect, ParseFailure };

std::string_view to_string(UnsafeReason reason);

class UnsafeSqlError : public Error {
 public:
  UnsafeSqlError(UnsafeReason reason, const std::string& detail)
      : Error(Errc::UnsafeSql, std::string(to_string(reason)) + ": " + detail), reason_(reason) {}

  UnsafeReason reason() const noexcept { return reason_; }

 private:
  UnsafeReason reason_;
};

}  // namespace railestate
