#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "constellation/report.hpp"

using namespace constellation;

namespace {
Pattern P(const char* s) { return Pattern::parse(s); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("fixed-precision formatting") {
  CHECK(format_g6(0.2781934) == "0.278193");
  CHECK(format_g6(36826.0) == "36826");
  CHECK(format_g6(1.32032364) == "1.32032");
  CHECK(format_g6(0.0) == "0");
  CHECK(format_g6(1e-7) == "1e-07");
  CHECK(format_g6(INFINITY) == "inf");
  CHECK(format_g6(-INFINITY) == "-inf");
}

TEST_CASE("count report round-trips byte-identically") {
  std::vector<CountRecord> rows = {
      {5800079, P("2"), 36826, 0.649402, 23914.9},
      {5800079, P("2,6"), 5520, 0.278193, 1535.62},
      {1000, P("25"), 0, INFINITY, 30.1358},
  };
  std::string text = to_json(rows);
  CHECK(reemit_count_json(text) == text);
  std::string csv = to_csv(rows);
  CHECK(csv.substr(0, csv.find('\n')) == "n,pattern,N,f,naive");
  CHECK(csv.find("\"2,6\"") != std::string::npos);
  CHECK(csv.find("inf") != std::string::npos);
}

TEST_CASE("pdf report round-trips") {
  std::vector<PdfRow> rows = {
      {5800079, P("2"), 0.6494, 0.757392, 0.857418},
      {1000, P("2,4"), 4.11274, INFINITY, 0.0},
  };
  std::string text = to_json(rows);
  CHECK(reemit_pdf_json(text) == text);
  CHECK(to_csv(rows).find("n,pattern,empirical_f,predicted_f,ratio") == 0);
}

TEST_CASE("prediction report round-trips") {
  std::vector<Prediction> rows = {
      {15485863, P("2,6"), {2.85738, 10000000, 1.2e-6}, 4259.27, 12170.3, 0.34997, true},
  };
  std::string text = to_json(rows);
  CHECK(text.find("\"truncation_prime\":10000000") != std::string::npos);
  CHECK(reemit_prediction_json(text) == text);
}

TEST_CASE("constants report round-trips") {
  std::vector<ConstantsRow> rows = {
      {0, 1, Rational(1), 1.0, 0.0, 1.0, 0.0, 0.890807},
      {2, 3, Rational(1, 6), 2.85738, 1.1e-6, 0.349971, 1.4e-7, 0.706673},
  };
  std::string text = to_json(rows);
  CHECK(text.find("\"Z\":\"1/6\"") != std::string::npos);
  CHECK(reemit_constants_json(text) == text);
}

TEST_CASE("verification report round-trips and carries tolerances") {
  VerificationReport rep;
  rep.limit = 5800079;
  rep.truncation = 10000000;
  rep.wall_time = 12.25;
  CheckRow abs_row;
  abs_row.name = "counts: N(5800079,(2))";
  abs_row.paper_value = 36826;
  abs_row.computed_value = 36826;
  abs_row.tolerance = 2;
  abs_row.kind = TolKind::Abs;
  abs_row.pass = true;
  CheckRow rel_row;
  rel_row.name = "prediction: (2,6)@15485863";
  rel_row.paper_value = 12170;
  rel_row.computed_value = 12170.3;
  rel_row.tolerance = 0.005;
  rel_row.kind = TolKind::Rel;
  rel_row.pass = true;
  CheckRow big_row;
  big_row.name = "counts: N(1000000000,(2))";
  big_row.paper_value = 3424506;
  big_row.computed_value = 3424506;
  big_row.tolerance = 2;
  big_row.kind = TolKind::Abs;
  big_row.pass = true;
  rep.rows = {abs_row, rel_row, big_row};
  CHECK(rep.all_pass());

  std::string text = to_json(rep);
  CHECK(text.find("\"tolerance\":\"2\"") != std::string::npos);
  CHECK(text.find("\"tolerance\":\"0.5%\"") != std::string::npos);
  CHECK(text.find("3424506") != std::string::npos);  // integer counts stay exact
  CHECK(reemit_verification_json(text) == text);

  rep.rows[1].pass = false;
  CHECK_FALSE(rep.all_pass());
  std::string csv = to_csv(rep);
  CHECK(csv.find("name,paper_value,computed_value,tolerance,pass") == 0);
  CHECK(csv.find("false") != std::string::npos);
}

TEST_CASE("atomic file writes") {
  const std::string path = "test_report_tmp_output.json";
  write_file_atomic(path, "first\n");
  CHECK(slurp(path) == "first\n");
  write_file_atomic(path, "second\n");
  CHECK(slurp(path) == "second\n");
  std::remove(path.c_str());
}
