#pragma once

#include <stdexcept>
#include <string>

namespace viewcheck {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or ill-typed input: litmus text, unknown identifiers,
/// duplicate initialisation.
class InputError : public Error {
 public:
  InputError(const std::string& msg, int line = 0, int column = 0);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace viewcheck
