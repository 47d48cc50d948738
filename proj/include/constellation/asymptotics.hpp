#pragma once

#include <cstdint>

#include "constellation/constants.hpp"
#include "constellation/patterns.hpp"

namespace constellation {

// Analytic expectation for a pattern at limit x.
struct Prediction {
  uint64_t x;
  Pattern pattern;
  ProductValue k_value;
  double logint;
  double predicted_count;  // 0 (flagged by admissible=false) for inadmissible shapes
  double predicted_f;
  bool admissible;
};

struct MertensResult {
  uint64_t x;
  double sum_minus_loglog;   // sum 1/p - ln ln x  ->  0.2616...
  double product_times_log;  // ln(x) * prod (1-1/p)  ->  exp(-0.577215...)
};

// int_{m+1}^{x} du / ln(u)^(m+1), adaptive quadrature, absolute tolerance
// 1e-8 (with a machine-precision relative floor for very large x). For
// m = 0 the lower limit is 2, matching the plain prime-count integral.
double log_integral(double x, unsigned m);

// ln(x)^(m+1)/x * log_integral(x, m); approaches 1 from above as x grows.
double limit_check(double x, unsigned m);

Prediction predicted_count(uint64_t x, const Pattern& pattern,
                           uint64_t trunc = kDefaultTruncation);

double mertens_sum(uint64_t x);      // x >= 3
double mertens_product(uint64_t x);  // x >= 2
MertensResult mertens(uint64_t x);   // both quantities in one pass

// Uncorrected model count: x * Z(m) * prod_{m+1 < p <= sqrt(x)} (1 - (m+1)/p).
double sieve_model(uint64_t x, unsigned m);

// k(m) * x / (ln(x)^(m+1) * sieve_model(x, m)); stabilizes to the constant
// r_m as x grows. m = 0 is plain prime counting with unit constant.
double r_factor(unsigned m, uint64_t x, uint64_t k_trunc = kDefaultTruncation);

// sum over primes m+1 < q <= sqrt(x) of ln(1 - (m+1)/q). The combination
// h + (m+1) ln ln sqrt(x) stabilizes to a constant as x grows.
double h_function(uint64_t x, unsigned m);

struct ExpansionCheck {
  double lhs;  // prod (1 - (m+1)/p)^-1 over primes m+1 < p <= trunc
  double rhs;  // truncated smooth-number sum; rhs -> lhs as t_limit grows
};

// Expands the reciprocal product as the sum over integers t <= t_limit whose
// prime factors all lie in (m+1, trunc] of (m+1)^Omega(t) / t, enumerated
// depth-first.
ExpansionCheck reciprocal_expansion(unsigned m, uint64_t trunc, uint64_t t_limit);

}  // namespace constellation
