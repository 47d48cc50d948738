#include "constellation/counting.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "constellation/errors.hpp"
#include "constellation/kernels.hpp"
#include "constellation/sieve.hpp"

namespace constellation {
namespace {

struct KernelJob {
  size_t slot;
  std::vector<uint32_t> shifts;  // offsets halved: odd-bitmap bit distance
};

}  // namespace

std::vector<uint64_t> count_many(uint64_t n, std::span<const Pattern> patterns,
                                 const CountOptions& opt) {
  if (n < 2) throw std::invalid_argument("count: n must be >= 2");
  std::vector<uint64_t> counts(patterns.size(), 0);
  if (patterns.empty()) return counts;

  std::vector<KernelJob> jobs;
  uint64_t max_offset = 0;
  for (size_t i = 0; i < patterns.size(); ++i) {
    const Pattern& pat = patterns[i];
    if (!pat.all_even()) {
      // an odd offset makes p + a even, so only the base prime 2 qualifies
      if (pat.max_offset() > UINT64_MAX - 2)
        throw CapacityError("count: offset too large to test companions of 2");
      bool ok = true;
      for (uint64_t a : pat.offsets()) ok = ok && is_prime(2 + a);
      counts[i] = ok ? 1 : 0;
      continue;
    }
    KernelJob job;
    job.slot = i;
    job.shifts.reserve(pat.m());
    for (uint64_t a : pat.offsets()) job.shifts.push_back(static_cast<uint32_t>(a / 2));
    jobs.push_back(std::move(job));
    max_offset = std::max(max_offset, pat.max_offset());
  }
  if (jobs.empty()) return counts;

  if (n > kSieveCapacity || max_offset > kSieveCapacity - n - 1)
    throw CapacityError("count: n plus the largest offset exceeds sieve capacity");

  const uint64_t look_bits = max_offset / 2 + 64;
  const size_t look_words = static_cast<size_t>(look_bits / 64) + 1;

  BlockStream stream(SievePlan{n + max_offset + 1, opt.segment_bytes, opt.threads});
  std::deque<PrimeBlock> window;
  uint64_t tail_bits = 0;  // bits buffered behind the head block
  bool exhausted = false;
  auto pump = [&] {
    if (auto b = stream.next()) {
      if (!window.empty()) tail_bits += b->bit_count();
      window.push_back(std::move(*b));
    } else {
      exhausted = true;
    }
  };

  std::vector<uint64_t> scratch;
  for (;;) {
    if (window.empty()) {
      if (exhausted) break;
      pump();
      continue;
    }
    while (!exhausted && tail_bits < look_bits) pump();

    const PrimeBlock& head = window.front();
    if (head.first_odd() > n) break;  // later blocks exist only as lookahead
    const uint64_t base_end = std::min(head.hi(), n + 1);
    const uint64_t nbase =
        base_end > head.first_odd() ? (base_end - head.first_odd() + 1) / 2 : 0;
    if (nbase > 0) {
      scratch.assign(head.words().size() + look_words, 0);
      std::copy(head.words().begin(), head.words().end(), scratch.begin());
      size_t filled = head.words().size();
      for (size_t bi = 1; bi < window.size() && filled < scratch.size(); ++bi) {
        const auto& ws = window[bi].words();
        size_t take = std::min(ws.size(), scratch.size() - filled);
        std::copy(ws.begin(), ws.begin() + take, scratch.begin() + filled);
        filled += take;
      }
      for (const KernelJob& job : jobs)
        counts[job.slot] +=
            kernels::count_joint(scratch.data(), nbase, job.shifts.data(), job.shifts.size());
    }
    window.pop_front();
    if (!window.empty()) tail_bits -= window.front().bit_count();
  }
  return counts;
}

uint64_t count_multiplets(uint64_t n, const Pattern& pattern, const CountOptions& opt) {
  return count_many(n, std::span<const Pattern>(&pattern, 1), opt)[0];
}

double naive_expected(uint64_t n, unsigned m) {
  if (n < 3) throw std::invalid_argument("naive_expected: n must be >= 3");
  long double logn = std::log(static_cast<long double>(n));
  long double denom = 1;
  for (unsigned i = 0; i <= m; ++i) denom *= logn;
  return static_cast<double>(static_cast<long double>(n) / denom);
}

double empirical_pdf_from_count(uint64_t n, unsigned m, uint64_t count) {
  if (n < 3) throw std::invalid_argument("empirical_pdf: n must be >= 3");
  if (count == 0) return INFINITY;
  return naive_expected(n, m) / static_cast<double>(count);
}

double empirical_pdf(uint64_t n, const Pattern& pattern, const CountOptions& opt) {
  return empirical_pdf_from_count(n, pattern.m(), count_multiplets(n, pattern, opt));
}

double measure_ratio(uint64_t n, const Pattern& a, const Pattern& b, const CountOptions& opt) {
  if (a.m() != b.m()) throw std::domain_error("measure_ratio: patterns must have equal length");
  const Pattern pats[] = {a, b};
  auto counts = count_many(n, pats, opt);
  if (counts[0] == 0 || counts[1] == 0)
    throw UndefinedRatio("measure_ratio: zero count at n=" + std::to_string(n));
  return static_cast<double>(counts[1]) / static_cast<double>(counts[0]);
}

CountRecord make_count_record(uint64_t n, const Pattern& pattern, uint64_t count) {
  return {n, pattern, count, empirical_pdf_from_count(n, pattern.m(), count),
          naive_expected(n, pattern.m())};
}

std::vector<CountRecord> count_records(uint64_t n, std::span<const Pattern> patterns,
                                       const CountOptions& opt) {
  auto counts = count_many(n, patterns, opt);
  std::vector<CountRecord> out;
  out.reserve(patterns.size());
  for (size_t i = 0; i < patterns.size(); ++i)
    out.push_back(make_count_record(n, patterns[i], counts[i]));
  return out;
}

}  // namespace constellation
