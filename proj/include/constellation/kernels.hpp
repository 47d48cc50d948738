#pragma once

#include <cstddef>
#include <cstdint>

// Bitmap kernels behind the counting and prime-counting loops. Each has a
// portable scalar reference plus SIMD variants selected once at runtime;
// all variants are bit-for-bit equivalent and tested against each other.
namespace constellation::kernels {

// Counts bit positions j in [0, nbase) where bit j and bit (j + s) are set
// for every s in shifts. words must be readable (and zero-padded) through
// the word containing bit nbase - 1 + max(shifts), plus one more word.
uint64_t count_joint(const uint64_t* words, uint64_t nbase,
                     const uint32_t* shifts, size_t nshifts);
uint64_t count_joint_scalar(const uint64_t* words, uint64_t nbase,
                            const uint32_t* shifts, size_t nshifts);

uint64_t popcount_words(const uint64_t* words, size_t nwords);
uint64_t popcount_words_scalar(const uint64_t* words, size_t nwords);

#if defined(__x86_64__) || defined(__i386__)
bool avx2_available();
uint64_t count_joint_avx2(const uint64_t* words, uint64_t nbase,
                          const uint32_t* shifts, size_t nshifts);
uint64_t popcount_words_avx2(const uint64_t* words, size_t nwords);
#endif

#if defined(__aarch64__)
uint64_t count_joint_neon(const uint64_t* words, uint64_t nbase,
                          const uint32_t* shifts, size_t nshifts);
uint64_t popcount_words_neon(const uint64_t* words, size_t nwords);
#endif

// Variant the dispatched entry points use: "avx2", "neon" or "scalar".
// Overridable through CONSTELLATION_KERNEL=scalar|avx2|neon.
const char* active_kernel();

}  // namespace constellation::kernels
