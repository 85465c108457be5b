#pragma once

// Cross-checks the closed forms against the scan oracle over parameter
// grids. Tuples are evaluated concurrently; reports are assembled in
// enumeration order, so the output does not depend on scheduling.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "frobkit/bigint.hpp"
#include "frobkit/error.hpp"
#include "frobkit/semigroup.hpp"
#include "frobkit/shifted_geometric.hpp"

namespace frobkit {

enum class Quantity { Frobenius, Sylvester };
enum class PPolicy { TheoremRange, FixedMax };

/// Inclusive integer interval.
struct IntRange {
  BigInt lo;
  BigInt hi;
};

struct SweepSpec {
  std::size_t vars = 3;
  IntRange a{1, 3};
  IntRange b{2, 3};
  IntRange c{1, 10};  ///< zero is skipped
  IntRange n{1, 2};
  PPolicy p_policy = PPolicy::TheoremRange;
  std::uint64_t p_max = 0;  ///< used by PPolicy::FixedMax
  Quantity quantity = Quantity::Frobenius;
  std::uint64_t sample_seed = 0;
  std::size_t sample_limit = 0;  ///< 0 keeps every tuple
  BigInt cost_threshold = 20000;  ///< tuples with a1 above this are skipped
  Limits limits;
  unsigned threads = 0;  ///< 0 picks hardware concurrency
};

inline void validate(const SweepSpec& spec) {
  auto check = [](const IntRange& r, const BigInt& min, const char* name) {
    if (r.lo > r.hi) {
      throw Error(ErrorKind::InvalidInput, std::string(name) + " range is empty");
    }
    if (r.lo < min) {
      throw Error(ErrorKind::InvalidInput,
                  std::string(name) + " must be at least " + min.str() + ", range starts at " + r.lo.str());
    }
  };
  if (spec.vars != 3 && spec.vars != 4) {
    throw Error(ErrorKind::InvalidInput, "vars must be 3 or 4");
  }
  check(spec.a, 1, "a");
  check(spec.b, 2, "b");
  check(spec.n, 1, "n");
  if (spec.c.lo > spec.c.hi) {
    throw Error(ErrorKind::InvalidInput, "c range is empty");
  }
  if (spec.c.lo == 0 && spec.c.hi == 0) {
    throw Error(ErrorKind::InvalidInput, "c range contains only 0");
  }
  if (spec.n.hi > BigInt(1'000'000)) {
    throw Error(ErrorKind::InvalidInput, "n range is too large");
  }
}

struct ParamTuple {
  BigInt a;
  BigInt b;
  BigInt c;
  std::uint32_t n = 1;
};

enum class PointStatus { Matched, Mismatched, NoCase, OutOfRange };

struct PointResult {
  ParamTuple params;
  std::uint64_t p = 0;
  std::optional<BigInt> closed;
  std::optional<std::string> closed_error;
  BigInt oracle;
  std::optional<std::string> case_id;  ///< c < 0 triples only
  PointStatus status = PointStatus::Mismatched;

  bool match() const { return status == PointStatus::Matched; }
};

enum class SkipReason { GcdNotOne, Invalid, Cost };

inline std::string to_string(SkipReason reason) {
  switch (reason) {
    case SkipReason::GcdNotOne: return "gcd";
    case SkipReason::Invalid: return "invalid";
    case SkipReason::Cost: return "cost";
  }
  return "unknown";
}

struct SkippedTuple {
  ParamTuple params;
  SkipReason reason = SkipReason::Invalid;
  std::string detail;
};

struct Summary {
  std::size_t total = 0;
  std::size_t matched = 0;
  std::size_t mismatched = 0;
  std::size_t skipped_gcd = 0;
  std::size_t skipped_invalid = 0;
  std::size_t skipped_cost = 0;
  std::size_t no_case = 0;
  std::size_t out_of_range = 0;

  friend bool operator==(const Summary&, const Summary&) = default;
};

struct VerificationReport {
  std::vector<PointResult> points;
  std::vector<SkippedTuple> skipped;
  Summary summary;

  bool passed() const { return summary.mismatched == 0; }
};

using FamilyParams = std::variant<ShiftedGeometricTriple, ShiftedGeometricQuad>;

/// g_p or n_p by the applicable closed form; raises the closed-form errors
/// (OutOfValidityRange, NoClosedFormCase, Unsupported) unchanged.
inline BigInt closed_form(const FamilyParams& params, std::uint64_t p, Quantity quantity) {
  if (quantity == Quantity::Sylvester) {
    if (const auto* t = std::get_if<ShiftedGeometricTriple>(&params)) {
      return p_sylvester_closed(*t, p);
    }
    throw Error(ErrorKind::Unsupported, "no closed p-Sylvester form for four generators");
  }
  return std::visit([p](const auto& f) { return p_frobenius_closed(f, p); }, params);
}

namespace detail {

template <std::size_t K>
ParamTuple tuple_of(const ShiftedGeometric<K>& params) {
  return {params.a(), params.b(), params.c(), params.n()};
}

inline ParamTuple tuple_of(const FamilyParams& params) {
  return std::visit([](const auto& f) { return tuple_of(f); }, params);
}

inline const GeneratorTuple& generators_of(const FamilyParams& params) {
  return std::visit([](const auto& f) -> const GeneratorTuple& { return f.generators(); }, params);
}

/// Largest p covered by the closed form's stated validity range.
inline BigInt theorem_limit(const FamilyParams& params) {
  if (const auto* t = std::get_if<ShiftedGeometricTriple>(&params)) {
    return decompose_qr(*t).q;
  }
  const auto& quad = std::get<ShiftedGeometricQuad>(params);
  return quad.b() - decompose_abg(quad).beta;
}

inline PointResult evaluate_point(const FamilyParams& params, std::uint64_t p, Quantity quantity,
                                  const ScanResult& oracle) {
  PointResult out;
  out.params = tuple_of(params);
  out.p = p;
  out.oracle = quantity == Quantity::Frobenius ? oracle.frobenius : oracle.sylvester;
  if (const auto* t = std::get_if<ShiftedGeometricTriple>(&params); t && t->c() < 0) {
    out.case_id = to_string(classify_negative_shift(*t).id);
  }
  try {
    out.closed = closed_form(params, p, quantity);
    out.status = *out.closed == out.oracle ? PointStatus::Matched : PointStatus::Mismatched;
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::OutOfValidityRange:
        out.status = PointStatus::OutOfRange;
        break;
      case ErrorKind::NoClosedFormCase:
      case ErrorKind::Unsupported:
        out.status = PointStatus::NoCase;
        break;
      default:
        throw;
    }
    out.closed_error = std::string(to_string(e.kind()));
  }
  return out;
}

/// Scans once at the largest p; smaller p settle earlier on the same table.
inline DenumerantTable oracle_table(const GeneratorTuple& gens, std::uint64_t p_max,
                                    const Limits& limits) {
  return grow_table_until(gens, limits, "oracle scan",
                          [p_max](const DenumerantTable& t) { return scan_table(t, p_max).has_value(); });
}

inline std::optional<FamilyParams> make_family(std::size_t vars, const ParamTuple& t) {
  if (vars == 4) return FamilyParams(make_quad(t.a, t.b, t.c, t.n));
  return FamilyParams(make_triple(t.a, t.b, t.c, t.n));
}

struct TupleOutcome {
  std::vector<PointResult> points;
  std::optional<SkippedTuple> skipped;
};

inline TupleOutcome run_tuple(const SweepSpec& spec, const ParamTuple& tuple) {
  TupleOutcome out;
  std::optional<FamilyParams> params;
  try {
    params = make_family(spec.vars, tuple);
  } catch (const Error& e) {
    const SkipReason reason = e.kind() == ErrorKind::GcdNotOne ? SkipReason::GcdNotOne : SkipReason::Invalid;
    out.skipped = SkippedTuple{tuple, reason, e.what()};
    return out;
  }
  const GeneratorTuple& gens = generators_of(*params);
  if (gens.min() > spec.cost_threshold) {
    out.skipped = SkippedTuple{tuple, SkipReason::Cost,
                               "smallest generator " + gens.min().str() + " exceeds cost threshold"};
    return out;
  }
  std::uint64_t p_last = spec.p_max;
  if (spec.p_policy == PPolicy::TheoremRange) {
    p_last = checked_narrow<std::uint64_t>(theorem_limit(*params), "theorem range");
  }
  try {
    const DenumerantTable table = oracle_table(gens, p_last, spec.limits);
    for (std::uint64_t p = 0; p <= p_last; ++p) {
      out.points.push_back(evaluate_point(*params, p, spec.quantity, *scan_table(table, p)));
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ResourceLimit) throw;
    out.points.clear();
    out.skipped = SkippedTuple{tuple, SkipReason::Cost, e.what()};
  }
  return out;
}

inline std::vector<ParamTuple> enumerate_tuples(const SweepSpec& spec) {
  std::vector<ParamTuple> tuples;
  for (BigInt a = spec.a.lo; a <= spec.a.hi; ++a) {
    for (BigInt b = spec.b.lo; b <= spec.b.hi; ++b) {
      for (BigInt c = spec.c.lo; c <= spec.c.hi; ++c) {
        if (c == 0) continue;
        for (BigInt n = spec.n.lo; n <= spec.n.hi; ++n) {
          tuples.push_back({a, b, c, n.convert_to<std::uint32_t>()});
        }
      }
    }
  }
  if (spec.sample_limit == 0 || tuples.size() <= spec.sample_limit) {
    return tuples;
  }
  // Partial Fisher-Yates on indices; raw mt19937_64 output is portable,
  // unlike the standard distributions.
  std::mt19937_64 rng(spec.sample_seed);
  std::vector<std::size_t> index(tuples.size());
  for (std::size_t i = 0; i < index.size(); ++i) index[i] = i;
  for (std::size_t i = 0; i < spec.sample_limit; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (index.size() - i));
    std::swap(index[i], index[j]);
  }
  index.resize(spec.sample_limit);
  std::sort(index.begin(), index.end());
  std::vector<ParamTuple> sampled;
  sampled.reserve(index.size());
  for (std::size_t i : index) sampled.push_back(std::move(tuples[i]));
  return sampled;
}

}  // namespace detail

/// Closed form vs scan oracle at a single point.
inline PointResult verify_point(const FamilyParams& params, std::uint64_t p,
                                Quantity quantity = Quantity::Frobenius, const Limits& limits = {}) {
  return detail::evaluate_point(params, p, quantity,
                                scan_counts(detail::generators_of(params), p, limits));
}

inline VerificationReport verify_grid(const SweepSpec& spec) {
  validate(spec);
  const std::vector<ParamTuple> tuples = detail::enumerate_tuples(spec);
  std::vector<detail::TupleOutcome> outcomes(tuples.size());

  unsigned workers = spec.threads != 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, tuples.size())));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < tuples.size(); i = next++) {
      try {
        outcomes[i] = detail::run_tuple(spec, tuples[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);

  VerificationReport report;
  Summary& s = report.summary;
  for (auto& outcome : outcomes) {
    if (outcome.skipped) {
      switch (outcome.skipped->reason) {
        case SkipReason::GcdNotOne: ++s.skipped_gcd; break;
        case SkipReason::Invalid: ++s.skipped_invalid; break;
        case SkipReason::Cost: ++s.skipped_cost; break;
      }
      report.skipped.push_back(std::move(*outcome.skipped));
    }
    for (auto& point : outcome.points) {
      switch (point.status) {
        case PointStatus::Matched: ++s.matched; break;
        case PointStatus::Mismatched: ++s.mismatched; break;
        case PointStatus::NoCase: ++s.no_case; break;
        case PointStatus::OutOfRange: ++s.out_of_range; break;
      }
      report.points.push_back(std::move(point));
    }
  }
  s.total = report.points.size() + report.skipped.size();
  return report;
}

// ---------------------------------------------------------------------------
// Empirical validity ranges

struct TwoGenerators {
  BigInt a;
  BigInt b;
};

using ValidityParams = std::variant<ShiftedGeometricTriple, ShiftedGeometricQuad, TwoGenerators>;

/// Largest p <= p_max such that the unchecked formula equals the oracle for
/// every p' <= p; nullopt if it already fails at p = 0.
inline std::optional<std::uint64_t> discover_validity(const ValidityParams& params, std::uint64_t p_max,
                                                      const Limits& limits = {}) {
  struct Probe {
    std::uint64_t p;
    std::optional<BigInt> operator()(const ShiftedGeometricTriple& t) const { return p_frobenius_formula(t, p); }
    std::optional<BigInt> operator()(const ShiftedGeometricQuad& q) const { return p_frobenius_formula(q, p); }
    std::optional<BigInt> operator()(const TwoGenerators& g) const {
      return p_frobenius_two_generators(g.a, g.b, p);
    }
  };
  const GeneratorTuple gens = std::visit(
      [](const auto& f) {
        if constexpr (std::is_same_v<std::decay_t<decltype(f)>, TwoGenerators>) {
          return GeneratorTuple({f.a, f.b});
        } else {
          return f.generators();
        }
      },
      params);

  const DenumerantTable table = detail::oracle_table(gens, p_max, limits);
  std::optional<std::uint64_t> valid;
  for (std::uint64_t p = 0; p <= p_max; ++p) {
    const auto formula = std::visit(Probe{p}, params);
    if (!formula || *formula != scan_table(table, p)->frobenius) break;
    valid = p;
  }
  return valid;
}

}  // namespace frobkit
