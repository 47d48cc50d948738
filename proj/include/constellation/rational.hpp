#pragma once

#include <cstdint>
#include <string>

namespace constellation {

// Exact rational arithmetic for distribution-factor ratios and the small
// collision factors. Backed by 128-bit integers; operands here are products
// of a handful of primes below 1e6, so overflow throws instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(long long value) : num_(value), den_(1) {}
  Rational(long long num, long long den);

  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

  double to_double() const;
  std::string str() const;  // "20/21"; integers print without the "/1"

  long long num() const;  // throws if the value left 64-bit range
  long long den() const;

 private:
  static Rational make(__int128 n, __int128 d);
  __int128 num_ = 0;
  __int128 den_ = 1;
};

}  // namespace constellation
