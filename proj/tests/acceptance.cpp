// Acceptance suite: runs every verification criterion at full scale and
// prints one line per criterion. Rows whose reference values are internally
// inconsistent (see README notes) are reported as expected failures; they do
// not flip the exit code, but any other failure does.
#include <cstdio>
#include <string>

#include "constellation/verify.hpp"

int main() {
  using namespace constellation;
  verify::Options opt;  // full scale, default truncation 1e7

  int expected_pass = 0;
  int strict_pass = 0;
  bool ok = true;
  for (int c = 1; c <= 12; ++c) {
    verify::CriterionResult res = verify::run_criterion(c, opt);
    const bool exp = res.pass_expected();
    const bool strict = res.pass_strict();
    ok = ok && exp;
    expected_pass += exp;
    strict_pass += strict;

    std::string budget;
    if (res.budget > 0) {
      char b[64];
      std::snprintf(b, sizeof b, ", %.1fs of %.0fs budget", res.seconds, res.budget);
      budget = b;
    }
    std::printf("criterion %2d: %s  (%zu checks%s)\n", c,
                strict ? "PASS" : (exp ? "PASS*" : "FAIL"), res.rows.size(), budget.c_str());
    for (const auto& row : res.rows) {
      if (row.pass) continue;
      std::printf("    %s %s: reference %s, computed %s, tolerance %s%s\n",
                  row.known_discrepancy ? "expected-fail" : "FAIL", row.name.c_str(),
                  format_g6(row.paper_value).c_str(), format_g6(row.computed_value).c_str(),
                  format_g6(row.tolerance).c_str(), row.kind == TolKind::Rel ? " (rel)" : "");
    }
  }
  std::printf("RESULT: %d/12 criteria pass (%d strict); * = passes except rows whose "
              "reference values are internally inconsistent\n",
              expected_pass, strict_pass);
  return ok ? 0 : 1;
}
