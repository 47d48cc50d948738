#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace constellation {

// Hard ceiling on the sieved range; beyond it the library refuses up front
// instead of risking overflow in segment arithmetic.
inline constexpr uint64_t kSieveCapacity = 2'100'000'000ull;

struct SievePlan {
  uint64_t limit = 0;                   // sieve covers [2, limit)
  uint64_t segment_bytes = 256 * 1024;  // odd-only bitmap bytes per block, >= 16 KiB
  unsigned threads = 0;                 // 0 = CONSTELLATION_THREADS or hardware default
};

// One sieved segment covering the integers [lo, hi). Primality is stored for
// odd values only (bit j <=> lo + 1 + 2j is prime; lo is always even) with 2
// reported through contains_two(). Immutable once constructed and safe to
// move between threads.
class PrimeBlock {
 public:
  PrimeBlock(uint64_t lo, uint64_t hi, std::vector<uint64_t> words);

  uint64_t lo() const { return lo_; }
  uint64_t hi() const { return hi_; }
  uint64_t first_odd() const { return lo_ + 1; }
  uint64_t bit_count() const;  // number of odd values covered
  const std::vector<uint64_t>& words() const { return words_; }
  bool contains_two() const { return lo_ <= 2 && 2 < hi_; }

  bool is_prime(uint64_t u) const;  // u must lie in [lo, hi)
  uint64_t count_primes() const;    // includes 2 when covered

 private:
  uint64_t lo_;
  uint64_t hi_;
  std::vector<uint64_t> words_;
};

// Streams contiguous ascending blocks covering [2, plan.limit). Segments may
// be sieved by a worker pool; delivery is re-serialized in index order, so a
// consumer sees the identical sequence for any thread count.
class BlockStream {
 public:
  explicit BlockStream(SievePlan plan);
  ~BlockStream();
  BlockStream(const BlockStream&) = delete;
  BlockStream& operator=(const BlockStream&) = delete;

  std::optional<PrimeBlock> next();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Push-style wrapper; stops early when fn returns false.
void sieve_stream(const SievePlan& plan, const std::function<bool(const PrimeBlock&)>& fn);

// Visits every prime < limit in ascending order.
void for_each_prime(uint64_t limit, const std::function<void(uint64_t)>& fn,
                    SievePlan base_plan = {});

uint64_t prime_count(uint64_t n);  // exact pi(n), n >= 2
uint64_t nth_prime(uint64_t k);    // 1-based; nth_prime(1) == 2

// Deterministic trial division by candidates up to sqrt(u). This is the
// oracle the sieve is checked against, so it stays independent of it.
bool is_prime(uint64_t u);

uint64_t isqrt(uint64_t n);

}  // namespace constellation
