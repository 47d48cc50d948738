#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace constellation {

// Offset tuple (a_1 < ... < a_m) describing the multiplet p, p+a_1, ..., p+a_m.
// The base offset a_0 = 0 is implicit everywhere.
class Pattern {
 public:
  explicit Pattern(std::vector<uint64_t> offsets);

  // Comma-separated ascending integers, e.g. "2,6,8". A leading "0," naming
  // the base prime explicitly is tolerated and stripped.
  static Pattern parse(std::string_view text);

  const std::vector<uint64_t>& offsets() const { return offsets_; }
  unsigned m() const { return static_cast<unsigned>(offsets_.size()); }
  uint64_t max_offset() const { return offsets_.back(); }
  bool all_even() const;
  std::string str() const;

  bool operator==(const Pattern&) const = default;

 private:
  std::vector<uint64_t> offsets_;
};

struct ResidueProfile {
  uint64_t p = 0;
  unsigned nu = 0;  // distinct residues of {0, a_1, ..., a_m} mod p
  unsigned g = 0;   // (m+1) - nu, the residue-collision count
};

// Equivalence key for predicted distribution factors: m together with the
// (p, g) pairs of collision primes above m+1.
struct PatternSignature {
  unsigned m = 0;
  std::vector<std::pair<uint64_t, unsigned>> collisions;  // ascending p
  bool operator==(const PatternSignature&) const = default;
};

// gcd over all pairwise differences a_i - a_j (a_0 = 0 included).
uint64_t difference_gcd(const Pattern& pattern);

ResidueProfile residue_profile(const Pattern& pattern, uint64_t p);

// Profiles for exactly the primes dividing at least one pairwise difference
// (equivalently g > 0). Such primes never exceed the largest difference, so
// the list is finite and complete. Ascending by p.
std::vector<ResidueProfile> collision_primes(const Pattern& pattern);

// False iff {0, a_i} covers every residue class mod some prime, in which
// case only finitely many multiplets of this shape exist.
bool is_admissible(const Pattern& pattern);

PatternSignature signature(const Pattern& pattern);

// Full factorization by trial division, ascending (prime, exponent) pairs.
std::vector<std::pair<uint64_t, unsigned>> factorize(uint64_t a);

}  // namespace constellation
