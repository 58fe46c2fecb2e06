#include "viewcheck/timestamp.hpp"

#include <numeric>

#include "viewcheck/error.hpp"

namespace viewcheck {

namespace {

using Wide = __int128;

std::int64_t narrow(Wide v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error("timestamp arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

}  // namespace

Timestamp::Timestamp(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error("timestamp with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Timestamp Timestamp::midpoint(const Timestamp& a, const Timestamp& b) {
  const Wide num = Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_;
  const Wide den = Wide(a.den_) * b.den_ * 2;
  // Reduce in wide arithmetic before narrowing.
  Wide x = num < 0 ? -num : num, y = den;
  while (y != 0) {
    Wide t = x % y;
    x = y;
    y = t;
  }
  if (x == 0) x = 1;
  return Timestamp(narrow(num / x), narrow(den / x));
}

Timestamp Timestamp::next_integer() const {
  // floor(q) + 1
  std::int64_t fl = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --fl;
  return Timestamp(fl + 1);
}

std::strong_ordering Timestamp::operator<=>(const Timestamp& other) const {
  return Wide(num_) * other.den_ <=> Wide(other.num_) * den_;
}

std::string Timestamp::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace viewcheck
