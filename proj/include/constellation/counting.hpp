#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "constellation/patterns.hpp"

namespace constellation {

struct CountOptions {
  uint64_t segment_bytes = 256 * 1024;
  unsigned threads = 0;
};

// One measurement row.
struct CountRecord {
  uint64_t n;
  Pattern pattern;
  uint64_t count;
  double empirical_f;  // +inf when count == 0
  double naive;        // n / ln(n)^(m+1)
};

// Number of primes p <= n with p + a_i prime for every offset. The base
// prime may be anything down to 2; companions may exceed n (the sieve is
// extended past n by the largest offset).
uint64_t count_multiplets(uint64_t n, const Pattern& pattern, const CountOptions& opt = {});

// Same, for several patterns in one streaming pass.
std::vector<uint64_t> count_many(uint64_t n, std::span<const Pattern> patterns,
                                 const CountOptions& opt = {});

double naive_expected(uint64_t n, unsigned m);  // n / ln(n)^(m+1), n >= 3
double empirical_pdf_from_count(uint64_t n, unsigned m, uint64_t count);
double empirical_pdf(uint64_t n, const Pattern& pattern, const CountOptions& opt = {});

// empirical_pdf(a) / empirical_pdf(b) == N(n,b) / N(n,a); the log factors
// cancel at equal m. Throws UndefinedRatio when either count is zero.
double measure_ratio(uint64_t n, const Pattern& a, const Pattern& b,
                     const CountOptions& opt = {});

CountRecord make_count_record(uint64_t n, const Pattern& pattern, uint64_t count);
std::vector<CountRecord> count_records(uint64_t n, std::span<const Pattern> patterns,
                                       const CountOptions& opt = {});

}  // namespace constellation
