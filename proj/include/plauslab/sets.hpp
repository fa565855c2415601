#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace plauslab {

// A subset of a small carrier (worlds or valuation points), bit i = element i.
using Mask = std::uint64_t;

inline constexpr int kMaskBits = 64;

inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }
inline bool contains(Mask m, int i) { return (m >> i) & 1U; }
inline int cardinality(Mask m) { return std::popcount(m); }
inline bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

std::vector<int> members(Mask m);

// "{w1,w3}" style rendering with the given element names.
std::string format_set(Mask m, const std::vector<std::string>& names);

// Number of worlds a finite structure may have. Defaults to 12; the
// PLAUSLAB_MAX_WORLDS environment variable may raise it to at most 14.
int max_worlds();

}  // namespace plauslab
