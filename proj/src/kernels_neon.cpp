// NEON variants, two words per step, mirroring the scalar kernel exactly.
#if defined(__aarch64__)

#include <arm_neon.h>

#include "constellation/kernels.hpp"

namespace constellation::kernels {

uint64_t count_joint_neon(const uint64_t* words, uint64_t nbase, const uint32_t* shifts,
                          size_t nshifts) {
  size_t nwords = static_cast<size_t>(nbase >> 6);
  uint64_t total = 0;
  size_t i = 0;
  for (; i + 2 <= nwords; i += 2) {
    uint64x2_t acc = vld1q_u64(words + i);
    for (size_t k = 0; k < nshifts; ++k) {
      uint32_t s = shifts[k];
      size_t q = s >> 6;
      uint32_t r = s & 63u;
      uint64x2_t v = vld1q_u64(words + i + q);
      if (r) {
        uint64x2_t hi = vld1q_u64(words + i + q + 1);
        v = vorrq_u64(vshlq_u64(v, vdupq_n_s64(-static_cast<int64_t>(r))),
                      vshlq_u64(hi, vdupq_n_s64(static_cast<int64_t>(64 - r))));
      }
      acc = vandq_u64(acc, v);
    }
    uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(acc));
    total += vaddvq_u8(bytes);
  }
  total += count_joint_scalar(words + i, nbase - (static_cast<uint64_t>(i) << 6), shifts, nshifts);
  return total;
}

uint64_t popcount_words_neon(const uint64_t* words, size_t nwords) {
  uint64_t total = 0;
  size_t i = 0;
  for (; i + 2 <= nwords; i += 2) {
    uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(vld1q_u64(words + i)));
    total += vaddvq_u8(bytes);
  }
  for (; i < nwords; ++i) total += static_cast<uint64_t>(__builtin_popcountll(words[i]));
  return total;
}

}  // namespace constellation::kernels

#endif
