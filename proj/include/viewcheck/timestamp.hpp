#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace viewcheck {

/// Exact rational timestamp. Always kept normalised (positive denominator,
/// coprime parts) so that structural equality is numeric equality.
class Timestamp {
 public:
  constexpr Timestamp() = default;
  Timestamp(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  /// Midpoint of two timestamps, exact.
  static Timestamp midpoint(const Timestamp& a, const Timestamp& b);
  Timestamp next_integer() const;

  std::strong_ordering operator<=>(const Timestamp& other) const;
  bool operator==(const Timestamp& other) const = default;

  std::string to_string() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace viewcheck
