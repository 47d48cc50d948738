#include "constellation/patterns.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <stdexcept>

namespace constellation {
namespace {

bool small_prime(uint64_t v) {
  if (v < 2) return false;
  for (uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Pattern::Pattern(std::vector<uint64_t> offsets) : offsets_(std::move(offsets)) {
  if (offsets_.empty()) throw std::invalid_argument("pattern: needs at least one offset");
  uint64_t prev = 0;
  for (uint64_t a : offsets_) {
    if (a <= prev)
      throw std::invalid_argument("pattern: offsets must be positive and strictly increasing");
    prev = a;
  }
}

Pattern Pattern::parse(std::string_view text) {
  std::vector<uint64_t> offs;
  size_t pos = 0;
  bool first = true;
  for (;;) {
    size_t comma = text.find(',', pos);
    std::string_view tok =
        trim(comma == std::string_view::npos ? text.substr(pos) : text.substr(pos, comma - pos));
    if (tok.empty())
      throw std::invalid_argument("pattern: empty token in \"" + std::string(text) + "\"");
    uint64_t v = 0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || end != tok.data() + tok.size())
      throw std::invalid_argument("pattern: bad token \"" + std::string(tok) + "\"");
    if (!(first && v == 0)) offs.push_back(v);  // a leading 0 names the base prime
    first = false;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Pattern(std::move(offs));
}

bool Pattern::all_even() const {
  return std::all_of(offsets_.begin(), offsets_.end(), [](uint64_t a) { return (a & 1) == 0; });
}

std::string Pattern::str() const {
  std::string s;
  for (size_t i = 0; i < offsets_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(offsets_[i]);
  }
  return s;
}

uint64_t difference_gcd(const Pattern& pattern) {
  uint64_t g = 0;
  const auto& a = pattern.offsets();
  for (size_t i = 0; i < a.size(); ++i) {
    g = std::gcd(g, a[i]);  // a_i - a_0
    for (size_t j = 0; j < i; ++j) g = std::gcd(g, a[i] - a[j]);
  }
  return g;
}

ResidueProfile residue_profile(const Pattern& pattern, uint64_t p) {
  if (p < 2) throw std::invalid_argument("residue_profile: p must be a prime");
  std::set<uint64_t> residues{0};
  for (uint64_t a : pattern.offsets()) residues.insert(a % p);
  auto nu = static_cast<unsigned>(residues.size());
  return {p, nu, pattern.m() + 1 - nu};
}

std::vector<std::pair<uint64_t, unsigned>> factorize(uint64_t a) {
  if (a == 0) throw std::invalid_argument("factorize: argument must be >= 1");
  std::vector<std::pair<uint64_t, unsigned>> out;
  for (uint64_t p = 2; p * p <= a; p += (p == 2) ? 1 : 2) {
    if (a % p) continue;
    unsigned e = 0;
    while (a % p == 0) {
      a /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (a > 1) out.push_back({a, 1});
  return out;
}

std::vector<ResidueProfile> collision_primes(const Pattern& pattern) {
  std::set<uint64_t> primes;
  const auto& a = pattern.offsets();
  for (size_t i = 0; i < a.size(); ++i) {
    for (auto [p, e] : factorize(a[i])) primes.insert(p);
    for (size_t j = 0; j < i; ++j)
      for (auto [p, e] : factorize(a[i] - a[j])) primes.insert(p);
  }
  std::vector<ResidueProfile> out;
  out.reserve(primes.size());
  for (uint64_t p : primes) out.push_back(residue_profile(pattern, p));
  return out;  // every collected prime divides a difference, so g >= 1
}

bool is_admissible(const Pattern& pattern) {
  // only primes p <= m+1 can have all p residue classes covered
  for (uint64_t p = 2; p <= pattern.m() + 1; ++p) {
    if (!small_prime(p)) continue;
    if (residue_profile(pattern, p).nu == p) return false;
  }
  return true;
}

PatternSignature signature(const Pattern& pattern) {
  PatternSignature sig;
  sig.m = pattern.m();
  for (const auto& rp : collision_primes(pattern))
    if (rp.p > pattern.m() + 1) sig.collisions.push_back({rp.p, rp.g});
  return sig;
}

}  // namespace constellation
