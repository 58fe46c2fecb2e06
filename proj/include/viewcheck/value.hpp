#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace viewcheck {

/// Values held in shared variables and registers. Besides integers the
/// language needs booleans, the null value ⊥ and the queue's EMPTY marker.
class Value {
 public:
  enum class Kind : std::uint8_t { Bot, Int, Bool, Empty };

  constexpr Value() = default;

  static constexpr Value bot() { return Value(Kind::Bot, 0); }
  static constexpr Value integer(std::int64_t n) { return Value(Kind::Int, n); }
  static constexpr Value boolean(bool b) { return Value(Kind::Bool, b ? 1 : 0); }
  static constexpr Value empty() { return Value(Kind::Empty, 0); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_int() const { return kind_ == Kind::Int; }
  constexpr bool is_bool() const { return kind_ == Kind::Bool; }
  constexpr bool is_bot() const { return kind_ == Kind::Bot; }
  constexpr bool is_empty() const { return kind_ == Kind::Empty; }

  std::int64_t as_int() const;
  bool as_bool() const;

  /// Truthiness used by branch conditions: booleans as themselves, integers
  /// as non-zero. ⊥ and EMPTY are errors.
  bool truthy() const;

  std::string to_string() const;

  constexpr auto operator<=>(const Value&) const = default;

 private:
  constexpr Value(Kind k, std::int64_t n) : kind_(k), num_(n) {}

  Kind kind_ = Kind::Bot;
  std::int64_t num_ = 0;
};

}  // namespace viewcheck
