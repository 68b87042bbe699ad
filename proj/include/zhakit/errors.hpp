#pragma once

#include <stdexcept>
#include <string>

namespace zhakit {

// Every error raised by the library derives from Error so the CLI can map
// them to exit status 1 in one place.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of the operation does not hold.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// The operation refuses to run because its size guard would be exceeded.
class RefusalError : public Error {
 public:
  using Error::Error;
};

}  // namespace zhakit
