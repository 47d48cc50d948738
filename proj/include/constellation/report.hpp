#pragma once

#include <string>
#include <vector>

#include "constellation/asymptotics.hpp"
#include "constellation/counting.hpp"

namespace constellation {

// %.6g, with "inf"/"-inf"/"nan" spelled out for non-finite values.
std::string format_g6(double v);

struct PdfRow {
  uint64_t n;
  Pattern pattern;
  double empirical_f;
  double predicted_f;
  double ratio;  // empirical / predicted
};

struct ConstantsRow {
  unsigned m;
  uint64_t z;
  Rational z_prod;
  double k;
  double k_tail;
  double c;
  double c_tail;
  double r;  // r_m at the report's reference scale
};

enum class TolKind { Abs, Rel };

struct CheckRow {
  std::string name;
  double paper_value;  // the reference the row is checked against
  double computed_value;
  double tolerance;
  TolKind kind;
  bool pass;
  // bookkeeping, not serialized:
  int criterion = 0;          // acceptance criterion the row belongs to
  uint64_t sieve_limit = 0;   // largest count limit the row sieved to (0 = none)
  bool known_discrepancy = false;  // reference value inconsistent with its own companion data
};

struct VerificationReport {
  uint64_t limit = 0;       // max sieve limit across rows
  uint64_t truncation = 0;
  double wall_time = 0;     // seconds
  std::vector<CheckRow> rows;
  bool all_pass() const;
};

// Serializers with stable field order and fixed %.6g float formatting, so
// emitted text parses and re-emits byte-identically.
std::string to_json(const std::vector<CountRecord>& rows);
std::string to_csv(const std::vector<CountRecord>& rows);
std::string to_json(const std::vector<PdfRow>& rows);
std::string to_csv(const std::vector<PdfRow>& rows);
std::string to_json(const std::vector<Prediction>& rows);
std::string to_csv(const std::vector<Prediction>& rows);
std::string to_json(const std::vector<ConstantsRow>& rows);
std::string to_csv(const std::vector<ConstantsRow>& rows);
std::string to_json(const VerificationReport& report);
std::string to_csv(const VerificationReport& report);

// Parse emitted JSON and re-serialize it (round-trip identity check).
std::string reemit_count_json(const std::string& text);
std::string reemit_pdf_json(const std::string& text);
std::string reemit_prediction_json(const std::string& text);
std::string reemit_constants_json(const std::string& text);
std::string reemit_verification_json(const std::string& text);

// Write through a temp file in the same directory, then rename into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace constellation
