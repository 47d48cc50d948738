#pragma once

#include "constellation/report.hpp"

namespace constellation::verify {

enum class Suite { Fast, Full };

struct Options {
  uint64_t truncation = kDefaultTruncation;
  unsigned threads = 0;
  uint64_t segment_bytes = 256 * 1024;
  // Rows that would sieve past this count limit are skipped (fast suite).
  uint64_t max_count_limit = UINT64_MAX;
};

struct CriterionResult {
  int criterion = 0;
  std::vector<CheckRow> rows;
  double seconds = 0;  // wall time of the sieving passes this criterion pays for
  double budget = 0;   // seconds allowed; 0 = no budget
  // All rows pass (known discrepancies excepted) and the budget holds.
  bool pass_expected() const;
  // Every row passes, known discrepancies included.
  bool pass_strict() const;
};

// Criteria 1..12. Each recomputes what it needs so its timing is honest.
CriterionResult run_criterion(int criterion, const Options& opt = {});

VerificationReport run_suite(Suite suite, const Options& opt = {});

}  // namespace constellation::verify
