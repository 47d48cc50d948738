#include "constellation/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "constellation/asymptotics.hpp"
#include "constellation/counting.hpp"
#include "constellation/sieve.hpp"

namespace constellation::verify {
namespace {

using steady = std::chrono::steady_clock;

// reference limits: the 4e5-th, 1e6-th, 2e6-th, 5e6-th and 1e7-th primes
constexpr uint64_t kN400k = 5'800'079;
constexpr uint64_t kN1M = 15'485'863;
constexpr uint64_t kN2M = 32'452'843;
constexpr uint64_t kN5M = 86'028'121;
constexpr uint64_t kN10M = 179'424'673;
constexpr uint64_t kE9 = 1'000'000'000;

double elapsed(steady::time_point t0) {
  return std::chrono::duration<double>(steady::now() - t0).count();
}

Pattern P(const char* text) { return Pattern::parse(text); }

CountOptions co(const Options& o) { return {o.segment_bytes, o.threads}; }

bool allowed(const Options& o, uint64_t count_limit) { return count_limit <= o.max_count_limit; }

CheckRow row(int crit, std::string name, double ref, double got, double tol, TolKind kind,
             uint64_t sieve_limit = 0, bool known = false) {
  const double err = std::fabs(got - ref);
  const bool pass = kind == TolKind::Abs ? err <= tol : err <= tol * std::fabs(ref);
  CheckRow r;
  r.name = std::move(name);
  r.paper_value = ref;
  r.computed_value = got;
  r.tolerance = tol;
  r.kind = kind;
  r.pass = pass;
  r.criterion = crit;
  r.sieve_limit = sieve_limit;
  r.known_discrepancy = known;
  return r;
}

std::vector<uint64_t> timed_counts(uint64_t n, const std::vector<Pattern>& pats, const Options& o,
                                   double& seconds) {
  auto t0 = steady::now();
  auto counts = count_many(n, pats, co(o));
  seconds += elapsed(t0);
  return counts;
}

// ---- criterion 1: pair counts at the 400000th prime --------------------

CriterionResult crit_pair_counts(const Options& o) {
  CriterionResult res{1, {}, 0, 5.0};
  if (!allowed(o, kN400k)) return res;
  const std::vector<Pattern> pats = {P("2"), P("4"), P("6"), P("12"), P("14"), P("30")};
  const double refs[] = {36826, 36707, 73187, 73449, 43993, 97825};
  auto counts = timed_counts(kN400k, pats, o, res.seconds);
  for (size_t i = 0; i < pats.size(); ++i)
    res.rows.push_back(row(1, "counts: N(5800079,(" + pats[i].str() + "))", refs[i],
                           static_cast<double>(counts[i]), 2, TolKind::Abs, kN400k));
  return res;
}

// ---- criterion 2: pair distribution factors -----------------------------

CriterionResult crit_pair_pdfs(const Options& o) {
  CriterionResult res{2, {}, 0, 0};
  if (!allowed(o, kN400k)) return res;
  const std::vector<Pattern> pats = {P("2"), P("14"), P("30")};
  const double refs[] = {0.6494, 0.543606, 0.244466};
  auto counts = timed_counts(kN400k, pats, o, res.seconds);
  for (size_t i = 0; i < pats.size(); ++i)
    res.rows.push_back(row(2, "pdf: f(5800079,(" + pats[i].str() + "))", refs[i],
                           empirical_pdf_from_count(kN400k, pats[i].m(), counts[i]), 5e-4,
                           TolKind::Abs, kN400k));
  return res;
}

// ---- criterion 3: triplet and quadruplet counts -------------------------

CriterionResult crit_triplet_quad_counts(const Options& o) {
  CriterionResult res{3, {}, 0, 30.0};
  const std::vector<Pattern> pats = {P("2,6"), P("2,6,8")};
  struct Case {
    uint64_t n;
    double tri, quad;
  };
  const Case cases[] = {{kN400k, 5520, 591}, {kN1M, 12092, 1229}, {kN2M, 21953, 2052}};
  for (const Case& c : cases) {
    if (!allowed(o, c.n)) continue;
    auto counts = timed_counts(c.n, pats, o, res.seconds);
    res.rows.push_back(row(3, "counts: N(" + std::to_string(c.n) + ",(2,6))", c.tri,
                           static_cast<double>(counts[0]), 2, TolKind::Abs, c.n));
    res.rows.push_back(row(3, "counts: N(" + std::to_string(c.n) + ",(2,6,8))", c.quad,
                           static_cast<double>(counts[1]), 2, TolKind::Abs, c.n));
  }
  return res;
}

// ---- criterion 4: quintuplet and sextuplet counts ------------------------

CriterionResult crit_quint_sext_counts(const Options& o) {
  CriterionResult res{4, {}, 0, 90.0};
  const Pattern quint = P("2,6,8,12");
  const Pattern sext = P("2,6,8,12,18");
  if (allowed(o, kN400k)) {
    auto c = timed_counts(kN400k, {quint, sext}, o, res.seconds);
    res.rows.push_back(row(4, "counts: N(5800079,(2,6,8,12))", 109, static_cast<double>(c[0]), 2,
                           TolKind::Abs, kN400k));
    res.rows.push_back(row(4, "counts: N(5800079,(2,6,8,12,18))", 15, static_cast<double>(c[1]), 2,
                           TolKind::Abs, kN400k));
  }
  if (allowed(o, kN1M)) {
    auto c = timed_counts(kN1M, {quint, sext}, o, res.seconds);
    res.rows.push_back(row(4, "counts: N(15485863,(2,6,8,12))", 205, static_cast<double>(c[0]), 2,
                           TolKind::Abs, kN1M));
    res.rows.push_back(row(4, "counts: N(15485863,(2,6,8,12,18))", 20, static_cast<double>(c[1]),
                           2, TolKind::Abs, kN1M));
  }
  if (allowed(o, kN10M)) {
    auto c = timed_counts(kN10M, {quint}, o, res.seconds);
    // the reference row is internally inconsistent: its own companion value
    // (the printed formula figure) matches the limit 32452843 instead
    res.rows.push_back(row(4, "counts: N(179424673,(2,6,8,12))", 336, static_cast<double>(c[0]), 2,
                           TolKind::Abs, kN10M, /*known=*/true));
  }
  if (allowed(o, kN2M)) {
    auto c = timed_counts(kN2M, {quint}, o, res.seconds);
    res.rows.push_back(row(4, "counts: N(32452843,(2,6,8,12)) (limit reconciliation)", 336,
                           static_cast<double>(c[0]), 2, TolKind::Abs, kN2M));
  }
  if (allowed(o, kN5M)) {
    auto c = timed_counts(kN5M, {sext}, o, res.seconds);
    res.rows.push_back(row(4, "counts: N(86028121,(2,6,8,12,18))", 57, static_cast<double>(c[0]),
                           2, TolKind::Abs, kN5M));
  }
  return res;
}

// ---- criterion 5: triplet distribution factors ---------------------------

CriterionResult crit_triplet_pdfs(const Options& o) {
  CriterionResult res{5, {}, 0, 0};
  if (!allowed(o, kN400k)) return res;
  const std::vector<Pattern> pats = {P("2,6"), P("2,12"), P("2,14"), P("6,70")};
  const double refs[] = {0.278193, 0.182965, 0.222554, 0.14695};
  // the (2,14) reference equals 0.8 * f(2,6) exactly, i.e. the predicted
  // ratio applied to the measured basic factor, not an exact count
  const bool known[] = {false, false, true, false};
  auto counts = timed_counts(kN400k, pats, o, res.seconds);
  for (size_t i = 0; i < pats.size(); ++i)
    res.rows.push_back(row(5, "pdf: f(5800079,(" + pats[i].str() + "))", refs[i],
                           empirical_pdf_from_count(kN400k, 2, counts[i]), 1e-3, TolKind::Abs,
                           kN400k, known[i]));
  return res;
}

// ---- criterion 6: constellation constants --------------------------------

CriterionResult crit_constants(const Options& o) {
  CriterionResult res{6, {}, 0, 0};
  auto t0 = steady::now();
  ProductValue k1 = k_constant(1, o.truncation);
  ProductValue c1 = c_constant(1, o.truncation);
  ProductValue c2 = c_constant(2, o.truncation);
  res.seconds += elapsed(t0);
  res.rows.push_back(row(6, "constants: k(1)", 1.32032, k1.value, 1e-4, TolKind::Abs));
  res.rows.push_back(row(6, "constants: C(1)", 0.757392, c1.value, 1e-4, TolKind::Abs));
  res.rows.push_back(row(6, "constants: C(2)", 0.34997, c2.value, 1e-3, TolKind::Abs));
  return res;
}

// ---- criterion 7: predicted counts ---------------------------------------

CriterionResult crit_predictions(const Options& o) {
  CriterionResult res{7, {}, 0, 0};
  struct Case {
    const char* pattern;
    uint64_t x;
    double ref;
    bool known;
    const char* note;
  };
  const Case cases[] = {
      {"2,6", kN400k, 5580, false, ""},
      {"2,6", kN1M, 12170, false, ""},
      {"2,6", kN2M, 22099, false, ""},
      {"2,6,8", kN400k, 551.54, false, ""},
      {"2,6,8,12", kN400k, 103, false, ""},
      {"2,6,8,12", kN1M, 191.36, false, ""},
      // reference printed for the 1e7-th prime but consistent with the
      // 2e6-th; the reconciled row follows
      {"2,6,8,12", kN10M, 311.6, true, ""},
      {"2,6,8,12", kN2M, 311.6, false, " (limit reconciliation)"},
      // sextuplet references were generated with a lower integration limit
      // one short of m+1; quadrature cross-checks follow
      {"2,6,8,12,18", kN400k, 16.09, true, ""},
      {"2,6,8,12,18", kN1M, 25.99, true, ""},
      {"2,6,8,12,18", kN5M, 68.61, true, ""},
      {"2,6,8,12,18", kN400k, 15.3419, false, " (quadrature cross-check)"},
      {"2,6,8,12,18", kN1M, 25.2398, false, " (quadrature cross-check)"},
      {"2,6,8,12,18", kN5M, 67.8637, false, " (quadrature cross-check)"},
  };
  auto t0 = steady::now();
  for (const Case& c : cases) {
    Prediction pred = predicted_count(c.x, P(c.pattern), o.truncation);
    const double tol = std::string_view(c.note).find("cross-check") != std::string_view::npos
                           ? 2e-3
                           : 5e-3;
    res.rows.push_back(row(7,
                           "prediction: (" + std::string(c.pattern) + ")@" + std::to_string(c.x) +
                               c.note,
                           c.ref, pred.predicted_count, tol, TolKind::Rel, 0, c.known));
  }
  res.seconds += elapsed(t0);
  return res;
}

// ---- criterion 8: twin primes to 1e9 --------------------------------------

CriterionResult crit_twins_e9(const Options& o) {
  CriterionResult res{8, {}, 0, 120.0};
  if (allowed(o, kE9)) {
    auto counts = timed_counts(kE9, {P("2")}, o, res.seconds);
    res.rows.push_back(row(8, "counts: N(1000000000,(2))", 3424506, static_cast<double>(counts[0]),
                           2, TolKind::Abs, kE9));
  }
  auto t0 = steady::now();
  Prediction pred = predicted_count(kE9, P("2"), o.truncation);
  res.seconds += elapsed(t0);
  res.rows.push_back(
      row(8, "prediction: (2)@1000000000", 3425230, pred.predicted_count, 1e-3, TolKind::Rel));
  return res;
}

// ---- criterion 9: ratio laws ----------------------------------------------

CriterionResult crit_ratio_laws(const Options& o) {
  CriterionResult res{9, {}, 0, 0};
  if (!allowed(o, kN400k)) return res;
  const std::vector<Pattern> pats = {P("2"),    P("6"),    P("14"),    P("30"),
                                     P("2,6"),  P("2,12"), P("10,30"), P("4,96")};
  auto c = timed_counts(kN400k, pats, o, res.seconds);
  auto ratio_row = [&](const char* name, const Pattern& a, const Pattern& b, uint64_t na,
                       uint64_t nb, double tol, bool known = false) {
    // f(a)/f(b) measured is N(b)/N(a); reference is the exact rational
    const double ref = pdf_ratio(a, b).to_double();
    const double got = static_cast<double>(nb) / static_cast<double>(na);
    res.rows.push_back(row(9, name, ref, got, tol, TolKind::Rel, kN400k, known));
  };
  ratio_row("ratio: f(6)/f(2) vs 1/2", pats[1], pats[0], c[1], c[0], 2.5e-2);
  ratio_row("ratio: f(14)/f(2) vs 5/6", pats[2], pats[0], c[2], c[0], 2.5e-2);
  ratio_row("ratio: f(30)/f(2) vs 3/8", pats[3], pats[0], c[3], c[0], 2.5e-2);
  ratio_row("ratio: f(2,12)/f(2,6) vs 2/3", pats[5], pats[4], c[5], c[4], 2.5e-2);
  ratio_row("ratio: f(10,30)/f(2,6) vs 1/2", pats[6], pats[4], c[6], c[4], 2.5e-2);
  // the collision reading predicts 20/21 here while the equal-signature
  // prose claims 1; the measured ratio arbitrates
  ratio_row("ratio: f(4,96)/f(2,6) vs 20/21", pats[7], pats[4], c[7], c[4], 3e-2);
  return res;
}

// ---- criterion 10: sieve-model constants -----------------------------------

CriterionResult crit_sieve_model(const Options& o) {
  CriterionResult res{10, {}, 0, 0};
  auto t0 = steady::now();
  const double refs[] = {0.890536, 0.7931, 0.7060};
  const double tols[] = {2e-3, 5e-3, 5e-3};
  for (unsigned m = 0; m <= 2; ++m) {
    const double r_lo = r_factor(m, 100'000'000ull, o.truncation);
    const double r_hi = r_factor(m, 10'000'000'000ull, o.truncation);
    res.rows.push_back(row(10, "sieve-model: r_" + std::to_string(m) + " at x=1e10", refs[m], r_hi,
                           tols[m], TolKind::Abs, 100'000));
    res.rows.push_back(row(10, "sieve-model: r_" + std::to_string(m) + " two-scale drift", 0.0,
                           std::fabs(r_hi - r_lo), 5e-3, TolKind::Abs, 100'000));
  }
  res.seconds += elapsed(t0);
  return res;
}

// ---- criterion 11: Mertens checks ------------------------------------------

CriterionResult crit_mertens(const Options& o) {
  CriterionResult res{11, {}, 0, 0};
  const uint64_t x = 100'000'000;
  if (!allowed(o, x)) return res;
  auto t0 = steady::now();
  MertensResult m = mertens(x);
  res.seconds += elapsed(t0);
  res.rows.push_back(row(11, "mertens: sum 1/p - lnln x at 1e8", 0.2616, m.sum_minus_loglog, 5e-3,
                         TolKind::Abs, x));
  res.rows.push_back(row(11, "mertens: ln x * prod(1-1/p) at 1e8", std::exp(-0.577215),
                         m.product_times_log, 3e-3, TolKind::Abs, x));
  return res;
}

// ---- criterion 12: property suites ------------------------------------------

uint64_t brute_count(uint64_t n, const Pattern& pat) {
  uint64_t c = 0;
  for (uint64_t p = 2; p <= n; ++p) {
    if (!is_prime(p)) continue;
    bool ok = true;
    for (uint64_t a : pat.offsets()) ok = ok && is_prime(p + a);
    c += ok;
  }
  return c;
}

CriterionResult crit_properties(const Options& o) {
  CriterionResult res{12, {}, 0, 0};
  auto t0 = steady::now();

  if (allowed(o, 100'000)) {
    const std::vector<Pattern> pats = {P("2"),   P("4"),      P("6"),        P("12"),
                                       P("2,4"), P("2,6"),    P("4,6"),      P("2,6,8"),
                                       P("6,8,12"), P("2,6,8,12"), P("1"),   P("3"),
                                       P("25"),  P("2,16")};
    uint64_t mismatches = 0;
    for (uint64_t n : {100ull, 1000ull, 10000ull, 100000ull}) {
      auto fast = count_many(n, pats, co(o));
      for (size_t i = 0; i < pats.size(); ++i)
        if (fast[i] != brute_count(n, pats[i])) ++mismatches;
    }
    res.rows.push_back(row(12, "property: counts equal trial-division brute force", 0,
                           static_cast<double>(mismatches), 0, TolKind::Abs, 100'000));
  }

  if (allowed(o, 1'000'000)) {
    // identical numbers for any segmentation and thread count
    const Pattern pats[] = {P("2"), P("2,6,8")};
    uint64_t worst = 0;
    for (const Pattern& pat : pats) {
      const uint64_t n = pat.m() == 1 ? 1'000'000 : 300'000;
      uint64_t base = count_multiplets(n, pat, {1u << 14, 1});
      for (const CountOptions& variant :
           {CountOptions{1u << 18, 2}, CountOptions{1u << 20, 3}, CountOptions{1u << 16, 4}}) {
        uint64_t got = count_multiplets(n, pat, variant);
        worst = std::max(worst, got > base ? got - base : base - got);
      }
    }
    res.rows.push_back(row(12, "property: counts invariant under segment/thread choice", 0,
                           static_cast<double>(worst), 0, TolKind::Abs, 1'000'000));
  }

  {
    double worst = 0;
    for (unsigned m = 0; m <= 3; ++m)
      for (double x : {50.0, 1e3, 1e5, 1e7}) {
        const double h = x * 1e-3;
        const double fd = (log_integral(x + h, m) - log_integral(x - h, m)) / (2 * h);
        const double expect = 1.0 / std::pow(std::log(x), static_cast<double>(m + 1));
        worst = std::max(worst, std::fabs(fd - expect) / expect);
      }
    res.rows.push_back(
        row(12, "property: quadrature differentiates back", 0, worst, 1e-6, TolKind::Abs));
  }

  {
    ExpansionCheck a = reciprocal_expansion(1, 7, 1'000'000);
    ExpansionCheck b = reciprocal_expansion(2, 5, 390'625);
    res.rows.push_back(row(12, "property: reciprocal expansion (m=1,P=7,T=1e6)", 0,
                           std::fabs(a.lhs - a.rhs) / a.lhs, 2e-2, TolKind::Abs));
    res.rows.push_back(row(12, "property: reciprocal expansion (m=2,P=5,T=390625)", 0,
                           std::fabs(b.lhs - b.rhs) / b.lhs, 2e-2, TolKind::Abs));
  }

  {
    // equal signatures must produce identical predictions
    const std::pair<const char*, const char*> pairs[] = {
        {"2", "4"}, {"2", "8"}, {"2,6", "8,12"}, {"2,6,8", "6,8,12"}, {"10,30", "20,60"}};
    double worst = 0;
    for (auto [a, b] : pairs) {
      const double fa = predicted_pdf(P(a), 100'000).value;
      const double fb = predicted_pdf(P(b), 100'000).value;
      worst = std::max(worst, std::fabs(fa - fb));
    }
    res.rows.push_back(row(12, "property: equal signatures give equal predictions", 0, worst,
                           1e-15, TolKind::Abs));
  }

  res.seconds = elapsed(t0);
  return res;
}

}  // namespace

bool CriterionResult::pass_expected() const {
  for (const auto& r : rows)
    if (!r.pass && !r.known_discrepancy) return false;
  return budget == 0 || seconds <= budget;
}

bool CriterionResult::pass_strict() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return budget == 0 || seconds <= budget;
}

CriterionResult run_criterion(int criterion, const Options& opt) {
  switch (criterion) {
    case 1: return crit_pair_counts(opt);
    case 2: return crit_pair_pdfs(opt);
    case 3: return crit_triplet_quad_counts(opt);
    case 4: return crit_quint_sext_counts(opt);
    case 5: return crit_triplet_pdfs(opt);
    case 6: return crit_constants(opt);
    case 7: return crit_predictions(opt);
    case 8: return crit_twins_e9(opt);
    case 9: return crit_ratio_laws(opt);
    case 10: return crit_sieve_model(opt);
    case 11: return crit_mertens(opt);
    case 12: return crit_properties(opt);
    default: throw std::invalid_argument("run_criterion: criterion must be 1..12");
  }
}

VerificationReport run_suite(Suite suite, const Options& opt) {
  Options o = opt;
  if (suite == Suite::Fast) o.max_count_limit = kN400k;
  VerificationReport report;
  report.truncation = o.truncation;
  auto t0 = steady::now();
  for (int c = 1; c <= 12; ++c) {
    CriterionResult res = run_criterion(c, o);
    for (auto& r : res.rows) {
      report.limit = std::max(report.limit, r.sieve_limit);
      report.rows.push_back(std::move(r));
    }
  }
  report.wall_time = elapsed(t0);
  return report;
}

}  // namespace constellation::verify
