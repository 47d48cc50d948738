#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "constellation/errors.hpp"
#include "constellation/sieve.hpp"
#include "oracles.hpp"

using namespace constellation;

namespace {

std::vector<uint64_t> primes_below(uint64_t limit, SievePlan plan = {}) {
  std::vector<uint64_t> out;
  for_each_prime(limit, [&](uint64_t p) { out.push_back(p); }, plan);
  return out;
}

}  // namespace

TEST_CASE("plan validation") {
  CHECK_THROWS_AS(BlockStream(SievePlan{.limit = 1}), std::invalid_argument);
  CHECK_THROWS_AS(BlockStream(SievePlan{.limit = 3'000'000'000ull}), CapacityError);
  CHECK_THROWS_AS(BlockStream(SievePlan{.limit = 100, .segment_bytes = 8192}),
                  std::invalid_argument);
}

TEST_CASE("primes below 30") {
  CHECK(primes_below(30) == std::vector<uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(primes_below(2).empty());
  CHECK(primes_below(3) == std::vector<uint64_t>{2});
}

TEST_CASE("prime counting") {
  CHECK(prime_count(2) == 1);
  CHECK(prime_count(10) == 4);
  CHECK(prime_count(100) == 25);
  CHECK(prime_count(1'000'000) == 78498);
  CHECK_THROWS_AS(prime_count(1), std::invalid_argument);
}

TEST_CASE("prime counting at the reference limits") {
  CHECK(prime_count(5'800'079) == 400'000);
  CHECK(prime_count(15'485'863) == 1'000'000);
}

TEST_CASE("spot range near the millionth prime agrees with trial division") {
  std::set<uint64_t> found;
  sieve_stream(SievePlan{.limit = 15'486'100}, [&](const PrimeBlock& b) {
    if (b.hi() <= 15'485'700) return true;
    for (uint64_t u = std::max<uint64_t>(b.lo(), 15'485'700); u < b.hi(); ++u)
      if (b.is_prime(u)) found.insert(u);
    return true;
  });
  for (uint64_t u = 15'485'700; u < 15'486'100; ++u)
    CHECK(found.count(u) == (is_prime(u) ? 1u : 0u));
  CHECK(found.count(15'485'863) == 1);
}

TEST_CASE("nth prime") {
  CHECK(nth_prime(1) == 2);
  CHECK(nth_prime(2) == 3);
  CHECK(nth_prime(6) == 13);
  CHECK(nth_prime(25) == 97);
  CHECK(nth_prime(400'000) == 5'800'079);
  CHECK_THROWS_AS(nth_prime(0), std::invalid_argument);
}

TEST_CASE("prime_count and nth_prime invert each other") {
  for (uint64_t k : {1ull, 2ull, 10ull, 100ull, 9592ull, 40000ull})
    CHECK(prime_count(nth_prime(k)) == k);
}

TEST_CASE("trial-division oracle") {
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK_FALSE(is_prime(4));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(91));
  CHECK(is_prime(5'800'079));
  CHECK(is_prime(1'000'000'007ull));
}

TEST_CASE("sieve agrees with trial division up to 1e6") {
  const uint64_t limit = 1'000'000;
  auto primes = primes_below(limit);
  size_t idx = 0;
  uint64_t mismatches = 0;
  for (uint64_t u = 2; u < limit; ++u) {
    bool in_sieve = idx < primes.size() && primes[idx] == u;
    if (in_sieve) ++idx;
    if (in_sieve != is_prime(u)) ++mismatches;
  }
  CHECK(mismatches == 0);
  CHECK(idx == primes.size());
}

TEST_CASE("blocks are contiguous, ascending, and exact") {
  SievePlan plan{.limit = 777'777, .segment_bytes = 1u << 14};
  BlockStream stream(plan);
  uint64_t expect_lo = 2;
  uint64_t count = 0;
  while (auto block = stream.next()) {
    CHECK(block->lo() == expect_lo);
    CHECK(block->hi() > block->lo());
    expect_lo = block->hi();
    // spot primality through the accessor
    for (uint64_t u = block->lo(); u < std::min(block->hi(), block->lo() + 40); ++u)
      CHECK(block->is_prime(u) == is_prime(u));
    count += block->count_primes();
  }
  CHECK(expect_lo == plan.limit);
  CHECK(count == prime_count(777'776));
}

TEST_CASE("counts are invariant under segmentation and threading") {
  const uint64_t limit = 1'234'567;
  auto reference = primes_below(limit, SievePlan{.segment_bytes = 1u << 14, .threads = 1});
  for (SievePlan plan : {SievePlan{.segment_bytes = 1u << 18, .threads = 2},
                         SievePlan{.segment_bytes = 1u << 20, .threads = 4},
                         SievePlan{.segment_bytes = 1u << 16, .threads = 3}}) {
    CHECK(primes_below(limit, plan) == reference);
  }
}

TEST_CASE("early stop from sieve_stream") {
  int seen = 0;
  sieve_stream(SievePlan{.limit = 50'000'000, .segment_bytes = 1u << 14},
               [&](const PrimeBlock&) { return ++seen < 3; });
  CHECK(seen == 3);
}

TEST_CASE("larger-scale thread invariance") {
  const uint64_t limit = 30'000'000;
  uint64_t counts[3];
  unsigned threads[] = {1, 2, 4};
  for (int i = 0; i < 3; ++i) {
    BlockStream stream(SievePlan{.limit = limit, .threads = threads[i]});
    uint64_t c = 0;
    while (auto b = stream.next()) c += b->count_primes();
    counts[i] = c;
  }
  CHECK(counts[0] == counts[1]);
  CHECK(counts[0] == counts[2]);
  CHECK(counts[0] == 1'857'859);  // pi(3e7 - 1)
}

TEST_CASE("monotone prime counts") {
  uint64_t prev = 0;
  for (uint64_t n : {2ull, 10ull, 11ull, 100ull, 1000ull, 10000ull}) {
    uint64_t c = prime_count(n);
    CHECK(c >= prev);
    prev = c;
  }
}
