#include "constellation/constants.hpp"

#include <cmath>
#include <stdexcept>

#include "constellation/errors.hpp"
#include "constellation/sieve.hpp"

namespace constellation {
namespace {

void check_m(unsigned m) {
  if (m < 1 || m > kMaxSupportedM)
    throw std::domain_error("constellation constants support m in [1, 6]");
}

uint64_t largest_prime_leq(uint64_t v) {
  for (uint64_t u = v;; --u)
    if (is_prime(u)) return u;  // v >= 2 for every caller
}

long double int_pow(long double base, unsigned e) {
  long double r = 1;
  while (e--) r *= base;
  return r;
}

}  // namespace

uint64_t z_integer(unsigned m) {
  check_m(m);
  uint64_t z = 1;
  for (long long term = static_cast<long long>(m) + 1; term > 0; term -= 3)
    z *= static_cast<uint64_t>(term);
  return z;
}

Rational z_product(unsigned m) {
  if (m > kMaxSupportedM) throw std::domain_error("z_product: m must be <= 6");
  long long den = 1;
  for (uint64_t u = 2; u <= m + 1; ++u)
    if (is_prime(u)) den *= static_cast<long long>(u);
  return Rational(1, den);
}

ProductValue k_constant(unsigned m, uint64_t trunc, std::optional<double> tolerance) {
  check_m(m);
  if (trunc < m + 2) throw std::invalid_argument("k_constant: truncation prime must be >= m+2");
  const uint64_t q = largest_prime_leq(m + 1);
  long double prod = 1.0L;
  for_each_prime(trunc + 1, [&](uint64_t p) {
    if (p <= m + 1) return;
    prod *= 1.0L - 1.0L / int_pow(static_cast<long double>(p - q + 1), m + 1);
  });
  const long double value = static_cast<long double>(z_integer(m)) * prod;
  // omitted log-mass sum_{p > trunc} 1/(p-q+1)^(m+1), bounded by the integral
  // of (u-q)^-(m+1) from trunc to infinity
  const long double bound =
      1.0L / (static_cast<long double>(m) * int_pow(static_cast<long double>(trunc - q), m));
  const double tail = static_cast<double>(value * expm1l(bound));
  if (tolerance && tail > *tolerance)
    throw ToleranceNotMet("k_constant: tail bound " + std::to_string(tail) +
                          " exceeds requested tolerance at truncation " + std::to_string(trunc));
  return {static_cast<double>(value), trunc, tail};
}

ProductValue k_constant_auto(unsigned m, double tolerance) {
  uint64_t trunc = 1u << 16;
  for (;;) {
    ProductValue v = k_constant(m, trunc);
    if (v.tail_bound <= tolerance) return v;
    if (trunc >= kSieveCapacity / 2)
      throw ToleranceNotMet("k_constant: tolerance unreachable within sieve capacity");
    trunc *= 2;
  }
}

ProductValue c_constant(unsigned m, uint64_t trunc, std::optional<double> tolerance) {
  ProductValue k = k_constant(m, trunc);
  const double value = 1.0 / k.value;
  const double floor = k.value - k.tail_bound;
  const double tail = floor > 0 ? k.tail_bound / (k.value * floor) : INFINITY;
  if (tolerance && tail > *tolerance)
    throw ToleranceNotMet("c_constant: tail bound exceeds requested tolerance at truncation " +
                          std::to_string(trunc));
  return {value, trunc, tail};
}

Rational probability_ratio(unsigned m, uint64_t p, unsigned g) {
  if (p <= m + 1) throw std::domain_error("probability_ratio: requires p > m+1");
  if (g > m) throw std::invalid_argument("probability_ratio: g must be <= m");
  return Rational(static_cast<long long>(p - m - 1 + g), static_cast<long long>(p - m - 1));
}

Rational collision_factor(const Pattern& pattern) {
  const unsigned m = pattern.m();
  Rational f(1);
  for (const auto& rp : collision_primes(pattern)) {
    if (rp.p <= m + 1) continue;
    f = f * Rational(static_cast<long long>(rp.p - m - 1),
                     static_cast<long long>(rp.p - m - 1 + rp.g));
  }
  return f;
}

ProductValue predicted_pdf(const Pattern& pattern, uint64_t trunc) {
  if (!is_admissible(pattern)) return {INFINITY, trunc, 0.0};
  ProductValue c = c_constant(pattern.m(), trunc);
  const double factor = collision_factor(pattern).to_double();
  return {c.value * factor, trunc, c.tail_bound * factor};
}

Rational pdf_ratio(const Pattern& a, const Pattern& b) {
  if (a.m() != b.m()) throw std::domain_error("pdf_ratio: patterns must have equal length");
  if (!is_admissible(a) || !is_admissible(b))
    throw std::domain_error("pdf_ratio: patterns must be admissible");
  return collision_factor(a) / collision_factor(b);
}

}  // namespace constellation
