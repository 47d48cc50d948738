// AVX2 variants of the bitmap kernels, four words per step. This unit is
// compiled with -mavx2 -mpopcnt and only reached after a runtime cpu check.
#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include "constellation/kernels.hpp"

namespace constellation::kernels {

uint64_t count_joint_avx2(const uint64_t* words, uint64_t nbase, const uint32_t* shifts,
                          size_t nshifts) {
  size_t nwords = static_cast<size_t>(nbase >> 6);
  uint64_t total = 0;
  size_t i = 0;
  alignas(32) uint64_t lane[4];
  for (; i + 4 <= nwords; i += 4) {
    __m256i acc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
    for (size_t k = 0; k < nshifts; ++k) {
      uint32_t s = shifts[k];
      size_t q = s >> 6;
      uint32_t r = s & 63u;
      __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i + q));
      if (r) {
        __m256i hi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i + q + 1));
        v = _mm256_or_si256(_mm256_srli_epi64(v, static_cast<int>(r)),
                            _mm256_slli_epi64(hi, static_cast<int>(64 - r)));
      }
      acc = _mm256_and_si256(acc, v);
    }
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane), acc);
    total += static_cast<uint64_t>(_mm_popcnt_u64(lane[0])) +
             static_cast<uint64_t>(_mm_popcnt_u64(lane[1])) +
             static_cast<uint64_t>(_mm_popcnt_u64(lane[2])) +
             static_cast<uint64_t>(_mm_popcnt_u64(lane[3]));
  }
  // ragged tail (and the partial last word) via the scalar kernel
  total += count_joint_scalar(words + i, nbase - (static_cast<uint64_t>(i) << 6), shifts, nshifts);
  return total;
}

uint64_t popcount_words_avx2(const uint64_t* words, size_t nwords) {
  uint64_t a = 0, b = 0, c = 0, d = 0;
  size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    a += static_cast<uint64_t>(_mm_popcnt_u64(words[i]));
    b += static_cast<uint64_t>(_mm_popcnt_u64(words[i + 1]));
    c += static_cast<uint64_t>(_mm_popcnt_u64(words[i + 2]));
    d += static_cast<uint64_t>(_mm_popcnt_u64(words[i + 3]));
  }
  for (; i < nwords; ++i) a += static_cast<uint64_t>(_mm_popcnt_u64(words[i]));
  return a + b + c + d;
}

}  // namespace constellation::kernels

#endif
