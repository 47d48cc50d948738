// constellation: count prime multiplets, evaluate their distribution factors
// and constants, predict counts, and run the built-in verification table.
#include <cstdio>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "constellation/asymptotics.hpp"
#include "constellation/counting.hpp"
#include "constellation/errors.hpp"
#include "constellation/report.hpp"
#include "constellation/verify.hpp"

namespace {

using namespace constellation;

struct CliConfig {
  uint64_t limit = 0;
  std::vector<std::string> patterns;
  uint64_t truncation = kDefaultTruncation;
  unsigned threads = 0;
  uint64_t segment_bytes = 256 * 1024;
  std::string format = "json";
  std::string output;
  std::string suite = "fast";
};

std::vector<Pattern> parse_patterns(const CliConfig& cfg) {
  if (cfg.patterns.empty())
    throw std::invalid_argument("at least one --pattern is required");
  std::vector<Pattern> out;
  out.reserve(cfg.patterns.size());
  for (const auto& s : cfg.patterns) out.push_back(Pattern::parse(s));
  return out;
}

void emit(const CliConfig& cfg, const std::string& text) {
  if (cfg.output.empty())
    std::fputs(text.c_str(), stdout);
  else
    write_file_atomic(cfg.output, text);
}

int cmd_count(const CliConfig& cfg) {
  auto pats = parse_patterns(cfg);
  auto records = count_records(cfg.limit, pats, {cfg.segment_bytes, cfg.threads});
  emit(cfg, cfg.format == "csv" ? to_csv(records) : to_json(records));
  return 0;
}

int cmd_pdf(const CliConfig& cfg) {
  auto pats = parse_patterns(cfg);
  auto counts = count_many(cfg.limit, pats, {cfg.segment_bytes, cfg.threads});
  std::vector<PdfRow> rows;
  rows.reserve(pats.size());
  for (size_t i = 0; i < pats.size(); ++i) {
    const double empirical = empirical_pdf_from_count(cfg.limit, pats[i].m(), counts[i]);
    const double predicted = predicted_pdf(pats[i], cfg.truncation).value;
    double ratio;
    if (std::isinf(predicted))
      ratio = std::isinf(empirical) ? NAN : 0.0;
    else
      ratio = empirical / predicted;
    rows.push_back({cfg.limit, pats[i], empirical, predicted, ratio});
  }
  emit(cfg, cfg.format == "csv" ? to_csv(rows) : to_json(rows));
  return 0;
}

int cmd_predict(const CliConfig& cfg) {
  auto pats = parse_patterns(cfg);
  std::vector<Prediction> rows;
  rows.reserve(pats.size());
  for (const auto& pat : pats)
    rows.push_back(predicted_count(cfg.limit, pat, cfg.truncation));
  emit(cfg, cfg.format == "csv" ? to_csv(rows) : to_json(rows));
  return 0;
}

int cmd_constants(const CliConfig& cfg) {
  std::vector<ConstantsRow> rows;
  rows.push_back({0, 1, Rational(1), 1.0, 0.0, 1.0, 0.0,
                  r_factor(0, 10'000'000'000ull, cfg.truncation)});
  for (unsigned m = 1; m <= kMaxSupportedM; ++m) {
    ProductValue k = k_constant(m, cfg.truncation);
    ProductValue c = c_constant(m, cfg.truncation);
    rows.push_back({m, z_integer(m), z_product(m), k.value, k.tail_bound, c.value, c.tail_bound,
                    r_factor(m, 10'000'000'000ull, cfg.truncation)});
  }
  emit(cfg, cfg.format == "csv" ? to_csv(rows) : to_json(rows));
  return 0;
}

int cmd_verify(const CliConfig& cfg) {
  verify::Options opt;
  opt.truncation = cfg.truncation;
  opt.threads = cfg.threads;
  opt.segment_bytes = cfg.segment_bytes;
  auto suite = cfg.suite == "full" ? verify::Suite::Full : verify::Suite::Fast;
  VerificationReport report = verify::run_suite(suite, opt);
  emit(cfg, cfg.format == "csv" ? to_csv(report) : to_json(report));
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prime multiplet counts, distribution factors and predictions"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto add_shared = [&](CLI::App* sub, bool needs_limit, bool has_patterns) {
    if (needs_limit) sub->add_option("--limit", cfg.limit, "upper bound n")->required();
    if (has_patterns)
      sub->add_option("--pattern", cfg.patterns, "offset tuple, e.g. 2,6,8 (repeatable)");
    sub->add_option("--truncation", cfg.truncation, "largest prime kept in products");
    sub->add_option("--threads", cfg.threads, "worker threads (default CONSTELLATION_THREADS)");
    sub->add_option("--segment-size", cfg.segment_bytes, "sieve bitmap bytes per block");
    sub->add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", cfg.output, "write the report to a file (atomic)");
  };

  CLI::App* count = app.add_subcommand("count", "count multiplets for each pattern");
  add_shared(count, true, true);
  CLI::App* pdf = app.add_subcommand("pdf", "empirical and predicted distribution factors");
  add_shared(pdf, true, true);
  CLI::App* predict = app.add_subcommand("predict", "analytic count predictions");
  add_shared(predict, true, true);
  CLI::App* constants = app.add_subcommand("constants", "constellation constants table");
  add_shared(constants, false, false);
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the built-in verification table");
  add_shared(verify_cmd, false, false);
  verify_cmd->add_option("--suite", cfg.suite, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (count->parsed()) return cmd_count(cfg);
    if (pdf->parsed()) return cmd_pdf(cfg);
    if (predict->parsed()) return cmd_predict(cfg);
    if (constants->parsed()) return cmd_constants(cfg);
    if (verify_cmd->parsed()) return cmd_verify(cfg);
  } catch (const CapacityError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::bad_alloc&) {
    std::fprintf(stderr, "error: out of memory\n");
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
