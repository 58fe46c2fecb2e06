#include "viewcheck/value.hpp"

#include "viewcheck/error.hpp"

namespace viewcheck {

InputError::InputError(const std::string& msg, int line, int column)
    : Error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + msg : msg),
      line_(line),
      column_(column) {}

std::int64_t Value::as_int() const {
  if (kind_ != Kind::Int) throw Error("expected an integer, got " + to_string());
  return num_;
}

bool Value::as_bool() const {
  if (kind_ != Kind::Bool) throw Error("expected a boolean, got " + to_string());
  return num_ != 0;
}

bool Value::truthy() const {
  switch (kind_) {
    case Kind::Bool:
    case Kind::Int:
      return num_ != 0;
    default:
      throw Error("value " + to_string() + " used as a condition");
  }
}

std::string Value::to_string() const {
  switch (kind_) {
    case Kind::Bot:
      return "bot";
    case Kind::Int:
      return std::to_string(num_);
    case Kind::Bool:
      return num_ ? "true" : "false";
    case Kind::Empty:
      return "EMPTY";
  }
  return "?";
}

}  // namespace viewcheck
