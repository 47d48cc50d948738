#include <bit>

#include "constellation/kernels.hpp"

namespace constellation::kernels {
namespace {

// 64 bits starting at bit offset 64*i + s.
inline uint64_t shifted_word(const uint64_t* w, size_t i, uint32_t s) {
  size_t q = s >> 6;
  uint32_t r = s & 63u;
  uint64_t lo = w[i + q];
  return r ? (lo >> r) | (w[i + q + 1] << (64 - r)) : lo;
}

}  // namespace

uint64_t count_joint_scalar(const uint64_t* words, uint64_t nbase, const uint32_t* shifts,
                            size_t nshifts) {
  if (nbase == 0) return 0;
  size_t full = static_cast<size_t>(nbase >> 6);
  uint32_t rem = static_cast<uint32_t>(nbase & 63u);
  uint64_t total = 0;
  for (size_t i = 0; i < full; ++i) {
    uint64_t acc = words[i];
    for (size_t k = 0; k < nshifts && acc; ++k) acc &= shifted_word(words, i, shifts[k]);
    total += static_cast<uint64_t>(std::popcount(acc));
  }
  if (rem) {
    uint64_t acc = words[full] & (~0ull >> (64u - rem));
    for (size_t k = 0; k < nshifts && acc; ++k) acc &= shifted_word(words, full, shifts[k]);
    total += static_cast<uint64_t>(std::popcount(acc));
  }
  return total;
}

uint64_t popcount_words_scalar(const uint64_t* words, size_t nwords) {
  uint64_t total = 0;
  for (size_t i = 0; i < nwords; ++i) total += static_cast<uint64_t>(std::popcount(words[i]));
  return total;
}

}  // namespace constellation::kernels
