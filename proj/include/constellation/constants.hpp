#pragma once

#include <cstdint>
#include <optional>

#include "constellation/patterns.hpp"
#include "constellation/rational.hpp"

namespace constellation {

// Value of a truncated product over primes, with the truncation point and a
// rigorous bound on the absolute error contributed by the omitted primes.
struct ProductValue {
  double value = 0;
  uint64_t truncation_prime = 0;
  double tail_bound = 0;
};

inline constexpr uint64_t kDefaultTruncation = 10'000'000;

// The integer prefactor and products are exercised for tuple lengths 1..6;
// larger m is rejected rather than extrapolated.
inline constexpr unsigned kMaxSupportedM = 6;

// Product of the arithmetic sequence m+1, m-2, m-5, ... down to the last
// positive term.
uint64_t z_integer(unsigned m);

// Exact prod 1/u over primes u <= m+1. Accepts m = 0 (empty product).
Rational z_product(unsigned m);

// z(m) * prod over primes m+1 < p <= trunc of (1 - 1/(p-q+1)^(m+1)), with
// q the largest prime <= m+1. tail_bound covers the omitted factors; when a
// tolerance is requested and the bound exceeds it, throws ToleranceNotMet.
ProductValue k_constant(unsigned m, uint64_t trunc = kDefaultTruncation,
                        std::optional<double> tolerance = {});

// Doubles the truncation until the tail bound meets the tolerance.
ProductValue k_constant_auto(unsigned m, double tolerance);

// 1 / k(m), the limiting distribution factor of basic patterns; tail bound
// propagated through the reciprocal.
ProductValue c_constant(unsigned m, uint64_t trunc = kDefaultTruncation,
                        std::optional<double> tolerance = {});

// Frequency boost from a collision prime: (p-m-1+g)/(p-m-1), exact.
// Requires p > m+1.
Rational probability_ratio(unsigned m, uint64_t p, unsigned g);

// prod (p-m-1)/(p-m-1+g_p) over collision primes p > m+1, exact.
Rational collision_factor(const Pattern& pattern);

// C(m) * collision_factor(pattern). Inadmissible patterns occur finitely
// often; their limiting factor is flagged +inf rather than an error.
ProductValue predicted_pdf(const Pattern& pattern, uint64_t trunc = kDefaultTruncation);

// Exact predicted_pdf(a)/predicted_pdf(b); the common C(m) cancels.
// Requires equal m and both patterns admissible.
Rational pdf_ratio(const Pattern& a, const Pattern& b);

}  // namespace constellation
