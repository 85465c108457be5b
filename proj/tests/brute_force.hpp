#pragma once

// Test-only reference implementations. They enumerate coefficient tuples
// directly and share no code with the library's DP tables.

#include <cstdint>
#include <optional>
#include <vector>

namespace frobkit::testing {

/// Number of (x_1..x_k) >= 0 with sum x_i g_i = m, by recursive enumeration.
inline std::uint64_t brute_count(std::uint64_t m, const std::vector<std::uint64_t>& gens, std::size_t from = 0) {
  if (from == gens.size()) return m == 0 ? 1 : 0;
  std::uint64_t total = 0;
  for (std::uint64_t used = 0; used <= m; used += gens[from]) {
    total += brute_count(m - used, gens, from + 1);
  }
  return total;
}

/// Largest m < limit with at most p representations. The caller picks a
/// limit known to exceed the answer plus the smallest generator.
inline std::optional<std::uint64_t> brute_frobenius(const std::vector<std::uint64_t>& gens, std::uint64_t p,
                                                    std::uint64_t limit) {
  std::optional<std::uint64_t> last;
  for (std::uint64_t m = 0; m < limit; ++m) {
    if (brute_count(m, gens) <= p) last = m;
  }
  return last;
}

inline std::uint64_t brute_sylvester(const std::vector<std::uint64_t>& gens, std::uint64_t p, std::uint64_t limit) {
  std::uint64_t n = 0;
  for (std::uint64_t m = 0; m < limit; ++m) {
    if (brute_count(m, gens) <= p) ++n;
  }
  return n;
}

}  // namespace frobkit::testing
