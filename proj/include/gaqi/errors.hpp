#pragma once

#include <stdexcept>
#include <string>

namespace gaqi {

// Base for every precondition failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SignatureMismatch : public Error {
 public:
  SignatureMismatch() : Error("operands belong to different signatures") {}
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace gaqi
