#include "constellation/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace constellation {
namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

__int128 checked_mul(__int128 a, __int128 b) {
  __int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational: overflow");
  return r;
}

std::string i128_str(__int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace

Rational Rational::make(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational r;
  r.num_ = n;
  r.den_ = d;
  return r;
}

Rational::Rational(long long num, long long den) { *this = make(num, den); }

Rational Rational::operator*(const Rational& o) const {
  __int128 g1 = gcd128(num_, o.den_);
  __int128 g2 = gcd128(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return make(checked_mul(num_ / g1, o.num_ / g2), checked_mul(den_ / g2, o.den_ / g1));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::domain_error("rational: division by zero");
  __int128 g1 = gcd128(num_, o.num_);
  __int128 g2 = gcd128(den_, o.den_);
  if (g1 == 0) g1 = 1;
  return make(checked_mul(num_ / g1, o.den_ / g2), checked_mul(den_ / g2, o.num_ / g1));
}

Rational Rational::operator+(const Rational& o) const {
  __int128 g = gcd128(den_, o.den_);
  __int128 n = checked_mul(num_, o.den_ / g) + checked_mul(o.num_, den_ / g);
  return make(n, checked_mul(den_ / g, o.den_));
}

Rational Rational::operator-(const Rational& o) const {
  Rational neg;
  neg.num_ = -o.num_;
  neg.den_ = o.den_;
  return *this + neg;
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::str() const {
  if (den_ == 1) return i128_str(num_);
  return i128_str(num_) + "/" + i128_str(den_);
}

long long Rational::num() const {
  if (num_ > INT64_MAX || num_ < INT64_MIN) throw std::overflow_error("rational: numerator exceeds 64 bits");
  return static_cast<long long>(num_);
}

long long Rational::den() const {
  if (den_ > INT64_MAX) throw std::overflow_error("rational: denominator exceeds 64 bits");
  return static_cast<long long>(den_);
}

}  // namespace constellation
