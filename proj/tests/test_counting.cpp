#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "constellation/counting.hpp"
#include "constellation/errors.hpp"
#include "oracles.hpp"

using namespace constellation;

namespace {
Pattern P(const char* s) { return Pattern::parse(s); }
}  // namespace

TEST_CASE("small exact counts") {
  CHECK(count_multiplets(100, P("2")) == 8);
  CHECK(count_multiplets(10, P("2,4")) == 1);  // only 3,5,7
  CHECK(count_multiplets(10, P("2,6")) == 1);  // only 5,7,11
  CHECK(count_multiplets(1000, P("25")) == 0);
  CHECK(count_multiplets(10, P("3")) == 1);    // 2,5: odd offsets leave only the base prime 2
  CHECK(count_multiplets(10, P("1")) == 1);    // 2,3
  CHECK(count_multiplets(10, P("9")) == 1);    // 2,11
  CHECK(count_multiplets(10, P("7")) == 0);    // 2+7 = 9
}

TEST_CASE("boundary convention: companions may pass n") {
  CHECK(count_multiplets(2, P("2")) == 0);
  CHECK(count_multiplets(3, P("2")) == 1);  // 3,5
  CHECK(count_multiplets(5, P("2")) == 2);  // 3,5 and 5,7 with 7 > n
  CHECK(count_multiplets(6, P("2")) == 2);
  CHECK(count_multiplets(11, P("2")) == 3);  // 11,13 joins
}

TEST_CASE("counts match the brute-force oracle") {
  const std::vector<Pattern> pats = {P("2"),   P("4"),    P("6"),      P("2,4"), P("2,6"),
                                     P("4,6"), P("2,6,8"), P("6,8,12"), P("2,6,8,12"),
                                     P("1"),   P("3"),    P("25"),     P("30")};
  for (uint64_t n : {100ull, 1000ull, 30000ull}) {
    auto fast = count_many(n, pats);
    for (size_t i = 0; i < pats.size(); ++i) {
      INFO("pattern ", pats[i].str(), " at n=", n);
      CHECK(fast[i] == testoracle::slow_count(n, pats[i]));
    }
  }
}

TEST_CASE("counts are monotone in n") {
  uint64_t prev = 0;
  for (uint64_t n : {100ull, 1000ull, 10000ull, 100000ull}) {
    uint64_t c = count_multiplets(n, P("2,6"));
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("segmentation and thread count do not change counts") {
  const Pattern pat = P("2,6,8");
  const uint64_t n = 300'000;
  uint64_t base = count_multiplets(n, pat, {1u << 14, 1});
  CHECK(base == count_multiplets(n, pat, {1u << 18, 2}));
  CHECK(base == count_multiplets(n, pat, {1u << 20, 4}));
  CHECK(base == count_multiplets(n, pat, {1u << 16, 3}));
  // lookahead spanning several small segments
  const Pattern wide = P("2,300000");
  CHECK(count_multiplets(50'000, wide, {1u << 14, 1}) ==
        count_multiplets(50'000, wide, {1u << 20, 2}));
  CHECK(count_multiplets(50'000, wide, {1u << 14, 2}) ==
        testoracle::slow_count(50'000, wide));
  // offset close to the supported maximum: window holds four blocks
  const Pattern wider = P("2,999998");
  const uint64_t expect = testoracle::slow_count(100'000, wider);
  CHECK(count_multiplets(100'000, wider, {1u << 14, 1}) == expect);
  CHECK(count_multiplets(100'000, wider, {1u << 14, 3}) == expect);
  CHECK(count_multiplets(100'000, wider, {1u << 18, 2}) == expect);
}

TEST_CASE("reference pair and triplet counts") {
  const std::vector<Pattern> pats = {P("2"), P("6"), P("12"), P("2,6"), P("2,12")};
  auto counts = count_many(5'800'079, pats);
  CHECK(counts[0] == 36826);
  CHECK(counts[1] == 73187);
  CHECK(counts[2] == 73449);
  CHECK(counts[3] == 5520);
  CHECK(counts[4] == 8393);

  // measured ratios against the quoted approximations
  CHECK(static_cast<double>(counts[0]) / counts[1] == doctest::Approx(0.503).epsilon(0.02));
  CHECK(static_cast<double>(counts[1]) / counts[2] == doctest::Approx(1.0).epsilon(0.02));
  CHECK(static_cast<double>(counts[3]) / counts[4] == doctest::Approx(0.658).epsilon(0.03));

  CHECK(empirical_pdf_from_count(5'800'079, 1, counts[0]) ==
        doctest::Approx(0.6494).epsilon(2e-4));
  CHECK(empirical_pdf_from_count(5'800'079, 2, counts[3]) ==
        doctest::Approx(0.278193).epsilon(2e-4));
}

TEST_CASE("naive expectation") {
  CHECK(naive_expected(1'000'000, 0) == doctest::Approx(72382.41).epsilon(1e-5));
  CHECK(naive_expected(5'800'079, 1) == doctest::Approx(23914.87).epsilon(1e-5));
  CHECK(naive_expected(100, 1) == doctest::Approx(4.715292).epsilon(1e-5));
  CHECK(naive_expected(100'000, 2) == doctest::Approx(65.53042).epsilon(1e-5));
  CHECK_THROWS_AS(naive_expected(2, 1), std::invalid_argument);
}

TEST_CASE("empirical pdf") {
  // f * N * ln(n)^(m+1) == n by definition
  for (uint64_t n : {100ull, 5000ull}) {
    uint64_t c = count_multiplets(n, P("2"));
    double f = empirical_pdf_from_count(n, 1, c);
    CHECK(f * c * std::pow(std::log(static_cast<double>(n)), 2) ==
          doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
  }
  CHECK(empirical_pdf(100, P("2")) == doctest::Approx(0.589418).epsilon(1e-5));
  CHECK(empirical_pdf(1000, P("25")) == INFINITY);
  CHECK_THROWS_AS(empirical_pdf_from_count(2, 1, 1), std::invalid_argument);
}

TEST_CASE("measured ratios") {
  CHECK(measure_ratio(10'000, P("6"), P("2")) ==
        doctest::Approx(static_cast<double>(testoracle::slow_count(10'000, P("2"))) /
                        testoracle::slow_count(10'000, P("6")))
            .epsilon(1e-12));
  CHECK_THROWS_AS(measure_ratio(1000, P("2"), P("2,6")), std::domain_error);
  CHECK_THROWS_AS(measure_ratio(1000, P("25"), P("2")), UndefinedRatio);
}

TEST_CASE("capacity is refused up front") {
  CHECK_THROWS_AS(count_multiplets(2'200'000'000ull, P("2")), CapacityError);
  CHECK_THROWS_AS(count_multiplets(2'099'999'999ull, P("2,1000000")), CapacityError);
}

TEST_CASE("count records") {
  auto recs = count_records(100, std::vector<Pattern>{P("2"), P("2,4")});
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].n == 100);
  CHECK(recs[0].count == 8);
  CHECK(recs[0].naive == doctest::Approx(4.715292).epsilon(1e-5));
  CHECK(recs[1].pattern.str() == "2,4");
  CHECK(recs[1].count == 1);
}
