#pragma once

// Formula-free numerical semigroup machinery: representation counts by
// dynamic programming, p-Apery sets, and two independent routes to the
// p-Frobenius and p-Sylvester numbers.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "frobkit/bigint.hpp"
#include "frobkit/error.hpp"

namespace frobkit {

struct Limits {
  /// Maximum number of entries a DenumerantTable may hold.
  std::size_t table_cap = 100'000'000;
};

inline BigInt gcd_of(std::span<const BigInt> values) {
  if (values.empty()) {
    throw Error(ErrorKind::InvalidInput, "gcd of an empty list");
  }
  BigInt g = 0;
  for (const BigInt& v : values) {
    if (v < 1) {
      throw Error(ErrorKind::InvalidInput, "gcd arguments must be positive, got " + v.str());
    }
    g = boost::multiprecision::gcd(g, v);
  }
  return g;
}

inline BigInt gcd_of(std::initializer_list<BigInt> values) {
  return gcd_of(std::span<const BigInt>(values.begin(), values.size()));
}

/// Sorted, duplicate-free generators with gcd 1 and smallest element >= 2.
class GeneratorTuple {
 public:
  explicit GeneratorTuple(std::vector<BigInt> values) : gens_(std::move(values)) {
    if (gens_.empty()) {
      throw Error(ErrorKind::InvalidInput, "at least one generator is required");
    }
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    if (gens_.front() < 2) {
      throw Error(ErrorKind::InvalidInput,
                  "smallest generator must be at least 2, got " + gens_.front().str());
    }
    BigInt g = gcd_of(gens_);
    if (g != 1) {
      throw Error(ErrorKind::GcdNotOne, "gcd is " + g.str());
    }
  }

  std::span<const BigInt> values() const noexcept { return gens_; }
  std::size_t size() const noexcept { return gens_.size(); }
  const BigInt& operator[](std::size_t i) const { return gens_[i]; }
  const BigInt& min() const noexcept { return gens_.front(); }
  const BigInt& max() const noexcept { return gens_.back(); }

  friend bool operator==(const GeneratorTuple&, const GeneratorTuple&) = default;

 private:
  std::vector<BigInt> gens_;
};

/// counts[m] = number of nonnegative solutions of sum x_i * gens_i = m,
/// for 0 <= m <= bound. Immutable once built.
class DenumerantTable {
 public:
  DenumerantTable(GeneratorTuple gens, std::size_t bound, const Limits& limits = {})
      : gens_(std::move(gens)) {
    if (bound >= limits.table_cap) {
      throw Error(ErrorKind::ResourceLimit,
                  "denumerant table bound " + std::to_string(bound) + " exceeds cap of " +
                      std::to_string(limits.table_cap) + " entries");
    }
    std::vector<std::size_t> steps;
    for (const BigInt& g : gens_.values()) {
      if (g <= BigInt(bound)) steps.push_back(g.convert_to<std::size_t>());
    }
    if (!fill_narrow(steps, bound)) fill_wide(steps, bound);
  }

  const GeneratorTuple& generators() const noexcept { return gens_; }
  std::size_t bound() const noexcept { return counts_.size() - 1; }
  const BigInt& operator[](std::size_t m) const { return counts_[m]; }
  std::span<const BigInt> counts() const noexcept { return counts_; }

 private:
  // Coin-counting recurrence, one pass per generator. The 64-bit pass gives
  // up on the first overflow and the table is redone with BigInt.
  bool fill_narrow(const std::vector<std::size_t>& steps, std::size_t bound) {
    std::vector<std::uint64_t> narrow(bound + 1, 0);
    narrow[0] = 1;
    for (std::size_t step : steps) {
      for (std::size_t m = step; m <= bound; ++m) {
        if (__builtin_add_overflow(narrow[m], narrow[m - step], &narrow[m])) return false;
      }
    }
    counts_.assign(narrow.begin(), narrow.end());
    return true;
  }

  void fill_wide(const std::vector<std::size_t>& steps, std::size_t bound) {
    counts_.assign(bound + 1, BigInt(0));
    counts_[0] = 1;
    for (std::size_t step : steps) {
      for (std::size_t m = step; m <= bound; ++m) counts_[m] += counts_[m - step];
    }
  }

  GeneratorTuple gens_;
  std::vector<BigInt> counts_;
};

inline DenumerantTable denumerant_table(const GeneratorTuple& gens, std::size_t bound,
                                        const Limits& limits = {}) {
  return DenumerantTable(gens, bound, limits);
}

inline BigInt denumerant(const BigInt& m, const GeneratorTuple& gens, const Limits& limits = {}) {
  if (m < 0) {
    throw Error(ErrorKind::InvalidInput, "denumerant argument must be nonnegative");
  }
  const std::size_t index = to_index(m, "denumerant argument");
  if (index >= limits.table_cap) {
    throw Error(ErrorKind::ResourceLimit, "denumerant argument " + m.str() + " exceeds table cap");
  }
  return DenumerantTable(gens, index, limits)[index];
}

namespace detail {

inline std::size_t initial_bound(const GeneratorTuple& gens) {
  constexpr std::size_t floor = 256;
  if (gens.max() > BigInt(1u << 20)) {
    return std::size_t{1} << 22;
  }
  return std::max(floor, 4 * gens.max().convert_to<std::size_t>());
}

/// Builds tables of geometrically growing bound until `settled` accepts one.
/// Growth stops at the table cap, after which ResourceLimit is thrown.
template <typename Predicate>
DenumerantTable grow_table_until(const GeneratorTuple& gens, const Limits& limits,
                                 std::string_view what, Predicate&& settled) {
  if (limits.table_cap == 0) {
    throw Error(ErrorKind::ResourceLimit, std::string(what) + ": table cap is zero");
  }
  const std::size_t last = limits.table_cap - 1;
  std::size_t bound = std::min(initial_bound(gens), last);
  for (;;) {
    DenumerantTable table(gens, bound, limits);
    if (settled(table)) {
      return table;
    }
    if (bound == last) {
      throw Error(ErrorKind::ResourceLimit,
                  std::string(what) + " did not settle within " + std::to_string(limits.table_cap) +
                      " table entries");
    }
    bound = bound > last / 2 ? last : 2 * bound;
  }
}

/// Same growth policy, returning whatever `attempt` extracts from the first
/// table where it succeeds.
template <typename Attempt>
auto grow_until(const GeneratorTuple& gens, const Limits& limits, std::string_view what,
                Attempt&& attempt) {
  decltype(attempt(std::declval<const DenumerantTable&>())) result;
  grow_table_until(gens, limits, what, [&](const DenumerantTable& table) {
    result = attempt(table);
    return result.has_value();
  });
  return std::move(*result);
}

}  // namespace detail

/// entries[j] = least nonnegative m with m = j (mod a1) and d(m) >= p+1.
class AperyTable {
 public:
  AperyTable(GeneratorTuple gens, std::uint64_t p, std::vector<BigInt> entries)
      : gens_(std::move(gens)), p_(p), entries_(std::move(entries)) {}

  const GeneratorTuple& generators() const noexcept { return gens_; }
  std::uint64_t p() const noexcept { return p_; }
  std::span<const BigInt> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const BigInt& operator[](std::size_t j) const { return entries_[j]; }
  const BigInt& max_entry() const { return *std::max_element(entries_.begin(), entries_.end()); }

 private:
  GeneratorTuple gens_;
  std::uint64_t p_;
  std::vector<BigInt> entries_;
};

/// Reads the Apery set off an existing table; nullopt if some residue class
/// has no qualifying element within the table's bound.
inline std::optional<AperyTable> apery_from_table(const DenumerantTable& table, std::uint64_t p) {
  const GeneratorTuple& gens = table.generators();
  if (gens.min() > BigInt(table.bound())) {
    return std::nullopt;
  }
  const auto a1 = gens.min().convert_to<std::size_t>();
  std::vector<std::optional<std::size_t>> least(a1);
  std::size_t filled = 0;
  const auto counts = table.counts();
  for (std::size_t m = 0; m < counts.size() && filled < a1; ++m) {
    auto& slot = least[m % a1];
    if (!slot && counts[m] > p) {
      slot = m;
      ++filled;
    }
  }
  if (filled < a1) {
    return std::nullopt;
  }
  std::vector<BigInt> entries;
  entries.reserve(a1);
  for (const auto& m : least) {
    entries.emplace_back(*m);
  }
  return AperyTable(gens, p, std::move(entries));
}

inline AperyTable apery_set(const GeneratorTuple& gens, std::uint64_t p, const Limits& limits = {}) {
  return detail::grow_until(gens, limits, "apery set",
                            [p](const DenumerantTable& t) { return apery_from_table(t, p); });
}

inline BigInt p_frobenius_via_apery(const AperyTable& apery) {
  return apery.max_entry() - apery.generators().min();
}

inline BigInt p_frobenius_via_apery(const GeneratorTuple& gens, std::uint64_t p,
                                    const Limits& limits = {}) {
  return p_frobenius_via_apery(apery_set(gens, p, limits));
}

/// n_p = (sum of entries)/a1 - (a1-1)/2; the two terms must combine to an
/// integer for a correct Apery table.
inline BigInt p_sylvester_via_apery(const AperyTable& apery) {
  const BigInt& a1 = apery.generators().min();
  BigInt sum = 0;
  for (const BigInt& e : apery.entries()) {
    sum += e;
  }
  const BigInt numerator = 2 * sum - a1 * (a1 - 1);
  const BigInt denominator = 2 * a1;
  if (numerator % denominator != 0) {
    throw Error(ErrorKind::AssertionFailure,
                "Apery sum " + sum.str() + " does not give an integral Sylvester number");
  }
  return numerator / denominator;
}

inline BigInt p_sylvester_via_apery(const GeneratorTuple& gens, std::uint64_t p,
                                    const Limits& limits = {}) {
  return p_sylvester_via_apery(apery_set(gens, p, limits));
}

/// Result of a forward scan over representation counts.
struct ScanResult {
  BigInt frobenius;      ///< largest m with d(m) <= p
  BigInt sylvester;      ///< number of m >= 0 with d(m) <= p
  std::size_t settled_from = 0;  ///< every m >= this has d(m) >= p+1
};

/// Scans for a window of a1 consecutive values with d >= p+1. Adding a1 never
/// lowers a count, so everything past the window is settled.
inline std::optional<ScanResult> scan_table(const DenumerantTable& table, std::uint64_t p) {
  const GeneratorTuple& gens = table.generators();
  if (gens.min() > BigInt(table.bound())) {
    return std::nullopt;
  }
  const auto a1 = gens.min().convert_to<std::size_t>();
  const auto counts = table.counts();
  std::size_t run = 0;
  std::size_t last_low = 0;
  std::size_t low_count = 0;
  for (std::size_t m = 0; m < counts.size(); ++m) {
    if (counts[m] <= p) {
      last_low = m;
      ++low_count;
      run = 0;
    } else if (++run == a1) {
      return ScanResult{BigInt(last_low), BigInt(low_count), m + 1 - a1};
    }
  }
  return std::nullopt;
}

inline ScanResult scan_counts(const GeneratorTuple& gens, std::uint64_t p, const Limits& limits = {}) {
  return detail::grow_until(gens, limits, "p-Frobenius scan",
                            [p](const DenumerantTable& t) { return scan_table(t, p); });
}

inline BigInt p_frobenius_scan(const GeneratorTuple& gens, std::uint64_t p, const Limits& limits = {}) {
  return scan_counts(gens, p, limits).frobenius;
}

inline BigInt p_sylvester_count(const GeneratorTuple& gens, std::uint64_t p, const Limits& limits = {}) {
  return scan_counts(gens, p, limits).sylvester;
}

/// Generators expressible as a nonnegative combination of the others. They
/// do not invalidate anything but are worth flagging.
inline std::vector<BigInt> redundant_generators(const GeneratorTuple& gens, const Limits& limits = {}) {
  std::vector<BigInt> redundant;
  if (gens.size() < 2 || gens.max() >= BigInt(limits.table_cap)) {
    return redundant;
  }
  for (std::size_t i = 1; i < gens.size(); ++i) {
    const auto target = gens[i].convert_to<std::size_t>();
    std::vector<bool> reachable(target + 1, false);
    reachable[0] = true;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (j == i || gens[j] > BigInt(target)) {
        continue;
      }
      const auto step = gens[j].convert_to<std::size_t>();
      for (std::size_t m = step; m <= target; ++m) {
        reachable[m] = reachable[m] || reachable[m - step];
      }
    }
    if (reachable[target]) {
      redundant.push_back(gens[i]);
    }
  }
  return redundant;
}

}  // namespace frobkit
