#include "constellation/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "constellation/errors.hpp"
#include "constellation/kernels.hpp"

namespace constellation {
namespace {

unsigned env_default_threads() {
  if (const char* s = std::getenv("CONSTELLATION_THREADS")) {
    long v = std::strtol(s, nullptr, 10);
    if (v >= 1 && v <= 64) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? std::min(hw, 8u) : 1u;
}

void validate_plan(const SievePlan& plan) {
  if (plan.limit < 2) throw std::invalid_argument("sieve: limit must be >= 2");
  if (plan.limit > kSieveCapacity)
    throw CapacityError("sieve: limit " + std::to_string(plan.limit) + " exceeds capacity " +
                        std::to_string(kSieveCapacity));
  if (plan.segment_bytes < (1u << 14))
    throw std::invalid_argument("sieve: segment_size must be >= 16 KiB");
}

// Odd primes <= root, by a plain odd-index sieve. root <= ~46341.
std::vector<uint32_t> base_primes(uint64_t root) {
  std::vector<uint32_t> out;
  if (root < 3) return out;
  std::vector<uint8_t> comp((root - 1) / 2 + 1, 0);  // index i <=> 2i+1
  for (uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= root; ++i) {
    if (comp[i]) continue;
    uint64_t p = 2 * i + 1;
    for (uint64_t j = (p * p - 1) / 2; j < comp.size(); j += p) comp[j] = 1;
  }
  for (uint64_t i = 1; 2 * i + 1 <= root; ++i)
    if (!comp[i]) out.push_back(static_cast<uint32_t>(2 * i + 1));
  return out;
}

// Sieves the odd values of [lo, hi); lo is even, primes cover sqrt(hi-1).
PrimeBlock sieve_segment(uint64_t lo, uint64_t hi, const std::vector<uint32_t>& primes) {
  const uint64_t first = lo + 1;
  const uint64_t nbits = first < hi ? (hi - first + 1) / 2 : 0;
  std::vector<uint64_t> words((nbits + 63) / 64, ~0ull);
  if (nbits & 63u) words.back() = ~0ull >> (64 - (nbits & 63u));
  for (uint32_t p : primes) {
    uint64_t start = static_cast<uint64_t>(p) * p;
    if (start >= hi) break;  // primes ascend, so later ones are done too
    if (start < first) {
      uint64_t k = (first + p - 1) / p;
      if (!(k & 1)) ++k;  // odd multiples only
      start = k * p;
    }
    for (uint64_t idx = (start - first) / 2; idx < nbits; idx += p)
      words[idx >> 6] &= ~(1ull << (idx & 63u));
  }
  return PrimeBlock(lo, hi, std::move(words));
}

// TODO: presieve multiples of 3/5/7/11/13 with a precomputed wheel copy if
// the long-suite budget ever tightens; the plain loop is fast enough today.

}  // namespace

PrimeBlock::PrimeBlock(uint64_t lo, uint64_t hi, std::vector<uint64_t> words)
    : lo_(lo), hi_(hi), words_(std::move(words)) {}

uint64_t PrimeBlock::bit_count() const {
  const uint64_t first = first_odd();
  return first < hi_ ? (hi_ - first + 1) / 2 : 0;
}

bool PrimeBlock::is_prime(uint64_t u) const {
  if (u < lo_ || u >= hi_) throw std::out_of_range("PrimeBlock::is_prime: value outside block");
  if ((u & 1) == 0) return u == 2;
  uint64_t idx = (u - first_odd()) / 2;
  return (words_[idx >> 6] >> (idx & 63u)) & 1u;
}

uint64_t PrimeBlock::count_primes() const {
  return kernels::popcount_words(words_.data(), words_.size()) + (contains_two() ? 1 : 0);
}

struct BlockStream::Impl {
  SievePlan plan;
  uint64_t span = 0;
  uint64_t total = 0;
  std::vector<uint32_t> primes;
  unsigned nthreads = 1;

  uint64_t consume_next = 0;

  // parallel mode
  std::mutex mu;
  std::condition_variable cv_room;
  std::condition_variable cv_ready;
  std::map<uint64_t, PrimeBlock> ready;
  uint64_t produce_next = 0;
  unsigned max_ahead = 4;
  bool stop = false;
  std::vector<std::thread> workers;

  PrimeBlock make_block(uint64_t idx) const {
    uint64_t lo = 2 + idx * span;
    uint64_t hi = std::min(lo + span, plan.limit);
    return sieve_segment(lo, hi, primes);
  }

  void worker() {
    for (;;) {
      uint64_t idx;
      {
        std::unique_lock lk(mu);
        cv_room.wait(lk, [&] {
          return stop || (produce_next < total && produce_next < consume_next + max_ahead);
        });
        if (stop || produce_next >= total) return;
        idx = produce_next++;
      }
      PrimeBlock block = make_block(idx);
      {
        std::lock_guard lk(mu);
        ready.emplace(idx, std::move(block));
      }
      cv_ready.notify_all();
    }
  }
};

BlockStream::BlockStream(SievePlan plan) : impl_(std::make_unique<Impl>()) {
  validate_plan(plan);
  if (plan.threads == 0) plan.threads = env_default_threads();
  Impl& im = *impl_;
  im.plan = plan;
  im.span = plan.segment_bytes * 16;  // one bitmap byte covers 16 integers
  im.total = plan.limit <= 2 ? 0 : (plan.limit - 2 + im.span - 1) / im.span;
  im.primes = base_primes(isqrt(plan.limit - 1));
  im.nthreads = static_cast<unsigned>(std::min<uint64_t>(plan.threads, std::max<uint64_t>(im.total, 1)));
  if (im.nthreads > 1) {
    im.max_ahead = im.nthreads * 2;
    im.workers.reserve(im.nthreads);
    for (unsigned i = 0; i < im.nthreads; ++i)
      im.workers.emplace_back([p = impl_.get()] { p->worker(); });
  }
}

BlockStream::~BlockStream() {
  if (!impl_ || impl_->workers.empty()) return;
  {
    std::lock_guard lk(impl_->mu);
    impl_->stop = true;
  }
  impl_->cv_room.notify_all();
  for (auto& t : impl_->workers) t.join();
}

std::optional<PrimeBlock> BlockStream::next() {
  Impl& im = *impl_;
  if (im.consume_next >= im.total) return std::nullopt;
  if (im.workers.empty()) return im.make_block(im.consume_next++);
  std::unique_lock lk(im.mu);
  im.cv_ready.wait(lk, [&] { return im.ready.count(im.consume_next) != 0; });
  auto node = im.ready.extract(im.consume_next);
  ++im.consume_next;
  lk.unlock();
  im.cv_room.notify_all();
  return std::move(node.mapped());
}

void sieve_stream(const SievePlan& plan, const std::function<bool(const PrimeBlock&)>& fn) {
  BlockStream stream(plan);
  while (auto block = stream.next())
    if (!fn(*block)) return;
}

void for_each_prime(uint64_t limit, const std::function<void(uint64_t)>& fn, SievePlan base_plan) {
  if (limit <= 2) return;
  fn(2);
  base_plan.limit = limit;
  BlockStream stream(base_plan);
  while (auto block = stream.next()) {
    const auto& words = block->words();
    const uint64_t first = block->first_odd();
    for (size_t wi = 0; wi < words.size(); ++wi) {
      uint64_t w = words[wi];
      while (w) {
        unsigned bit = static_cast<unsigned>(std::countr_zero(w));
        fn(first + 2 * (static_cast<uint64_t>(wi) * 64 + bit));
        w &= w - 1;
      }
    }
  }
}

uint64_t prime_count(uint64_t n) {
  if (n < 2) throw std::invalid_argument("prime_count: n must be >= 2");
  BlockStream stream(SievePlan{.limit = n + 1});
  uint64_t count = 0;
  while (auto block = stream.next()) count += block->count_primes();
  return count;
}

uint64_t nth_prime(uint64_t k) {
  if (k == 0) throw std::invalid_argument("nth_prime: k must be >= 1");
  static constexpr uint64_t small[] = {2, 3, 5, 7, 11, 13};
  if (k <= 6) return small[k - 1];
  // Rosser bound: p_k < k (ln k + ln ln k) for k >= 6
  double kk = static_cast<double>(k);
  uint64_t bound = static_cast<uint64_t>(kk * (std::log(kk) + std::log(std::log(kk)))) + 8;
  BlockStream stream(SievePlan{.limit = bound + 1});
  uint64_t seen = 0;
  while (auto block = stream.next()) {
    uint64_t in_block = block->count_primes();
    if (seen + in_block < k) {
      seen += in_block;
      continue;
    }
    uint64_t need = k - seen;
    if (block->contains_two()) {
      if (need == 1) return 2;
      --need;
    }
    const auto& words = block->words();
    for (size_t wi = 0; wi < words.size(); ++wi) {
      uint64_t w = words[wi];
      uint64_t pc = static_cast<uint64_t>(std::popcount(w));
      if (pc < need) {
        need -= pc;
        continue;
      }
      while (--need) w &= w - 1;
      return block->first_odd() +
             2 * (static_cast<uint64_t>(wi) * 64 + static_cast<unsigned>(std::countr_zero(w)));
    }
  }
  throw std::logic_error("nth_prime: bound too small");  // unreachable by the Rosser bound
}

bool is_prime(uint64_t u) {
  if (u < 2) return false;
  if (u < 4) return true;
  if (u % 2 == 0 || u % 3 == 0) return false;
  for (uint64_t d = 5; d * d <= u; d += 6)
    if (u % d == 0 || u % (d + 2) == 0) return false;
  return true;
}

uint64_t isqrt(uint64_t n) {
  if (n == 0) return 0;
  auto r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace constellation
