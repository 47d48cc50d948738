#include "constellation/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace constellation::kernels {

#if defined(__x86_64__) || defined(__i386__)
bool avx2_available() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
}
#endif

namespace {

struct Dispatch {
  uint64_t (*joint)(const uint64_t*, uint64_t, const uint32_t*, size_t);
  uint64_t (*pop)(const uint64_t*, size_t);
  const char* name;
};

Dispatch resolve() {
  const char* env = std::getenv("CONSTELLATION_KERNEL");
  std::string want = env ? env : "auto";
#if defined(CONSTELLATION_HAVE_AVX2_TU)
  if (avx2_available() && (want == "auto" || want == "avx2"))
    return {count_joint_avx2, popcount_words_avx2, "avx2"};
  if (want == "avx2") throw std::runtime_error("CONSTELLATION_KERNEL=avx2 but cpu lacks avx2");
#endif
#if defined(CONSTELLATION_HAVE_NEON_TU)
  if (want == "auto" || want == "neon") return {count_joint_neon, popcount_words_neon, "neon"};
#endif
  if (want != "auto" && want != "scalar")
    throw std::runtime_error("kernel variant not available: " + want);
  return {count_joint_scalar, popcount_words_scalar, "scalar"};
}

const Dispatch& table() {
  static const Dispatch d = resolve();
  return d;
}

}  // namespace

uint64_t count_joint(const uint64_t* words, uint64_t nbase, const uint32_t* shifts,
                     size_t nshifts) {
  return table().joint(words, nbase, shifts, nshifts);
}

uint64_t popcount_words(const uint64_t* words, size_t nwords) {
  return table().pop(words, nwords);
}

const char* active_kernel() { return table().name; }

}  // namespace constellation::kernels
