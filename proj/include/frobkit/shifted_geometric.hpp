#pragma once

// Closed forms for generator families a*b^(n+i) - c, i = 0..K-1, with K = 3
// (triples) or K = 4 (quads).

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobkit/bigint.hpp"
#include "frobkit/error.hpp"
#include "frobkit/semigroup.hpp"

namespace frobkit {

template <std::size_t K>
class ShiftedGeometric {
  static_assert(K == 3 || K == 4, "only triples and quads have closed forms");

 public:
  static constexpr std::size_t arity = K;

  /// Validates a >= 1, b >= 2, c != 0, n >= 1, a*b^n - c >= 2 and gcd 1.
  static ShiftedGeometric make(const BigInt& a, const BigInt& b, const BigInt& c, std::uint32_t n) {
    if (a < 1) throw Error(ErrorKind::InvalidParameters, "a must be at least 1, got " + a.str());
    if (b < 2) throw Error(ErrorKind::InvalidParameters, "b must be at least 2, got " + b.str());
    if (c == 0) throw Error(ErrorKind::InvalidParameters, "c must be nonzero");
    if (n < 1) throw Error(ErrorKind::InvalidParameters, "n must be at least 1");

    std::array<BigInt, K> leads;
    std::array<BigInt, K> values;
    for (std::size_t i = 0; i < K; ++i) {
      leads[i] = a * ipow(b, n + static_cast<std::uint32_t>(i));
      values[i] = leads[i] - c;
    }
    if (values[0] < 2) {
      throw Error(ErrorKind::InvalidParameters,
                  "smallest generator a*b^n - c = " + values[0].str() + " is below 2");
    }
    const BigInt g = gcd_of(std::span<const BigInt>(values));
    if (g != 1) {
      throw Error(ErrorKind::GcdNotOne, "gcd is " + g.str());
    }
    return ShiftedGeometric(a, b, c, n, leads, values);
  }

  const BigInt& a() const noexcept { return a_; }
  const BigInt& b() const noexcept { return b_; }
  const BigInt& c() const noexcept { return c_; }
  std::uint32_t n() const noexcept { return n_; }

  /// -c when c < 0.
  std::optional<BigInt> c0() const {
    if (c_ < 0) return BigInt(-c_);
    return std::nullopt;
  }

  /// a*b^(n+i) - c
  const BigInt& generator(std::size_t i) const { return values_.at(i); }
  /// a*b^(n+i)
  const BigInt& lead(std::size_t i) const { return leads_.at(i); }
  const BigInt& a1() const noexcept { return values_[0]; }
  const GeneratorTuple& generators() const noexcept { return gens_; }

 private:
  ShiftedGeometric(BigInt a, BigInt b, BigInt c, std::uint32_t n, std::array<BigInt, K> leads,
                   std::array<BigInt, K> values)
      : a_(std::move(a)),
        b_(std::move(b)),
        c_(std::move(c)),
        n_(n),
        leads_(std::move(leads)),
        values_(std::move(values)),
        gens_(std::vector<BigInt>(values_.begin(), values_.end())) {}

  BigInt a_;
  BigInt b_;
  BigInt c_;
  std::uint32_t n_;
  std::array<BigInt, K> leads_;
  std::array<BigInt, K> values_;
  GeneratorTuple gens_;
};

using ShiftedGeometricTriple = ShiftedGeometric<3>;
using ShiftedGeometricQuad = ShiftedGeometric<4>;

inline ShiftedGeometricTriple make_triple(const BigInt& a, const BigInt& b, const BigInt& c,
                                          std::uint32_t n) {
  return ShiftedGeometricTriple::make(a, b, c, n);
}

inline ShiftedGeometricQuad make_quad(const BigInt& a, const BigInt& b, const BigInt& c,
                                      std::uint32_t n) {
  return ShiftedGeometricQuad::make(a, b, c, n);
}

// ---------------------------------------------------------------------------
// Decompositions

/// a1 = (b+1) q + r, 0 <= r <= b.
struct QRDecomposition {
  BigInt q;
  BigInt r;
};

inline QRDecomposition decompose_qr(const ShiftedGeometricTriple& t) {
  const BigInt base = t.b() + 1;
  return {t.a1() / base, t.a1() % base};
}

/// a1 = alpha (b^2+b+1) + beta (b+1) + gamma, beta (b+1) + gamma <= b^2+b,
/// gamma <= b.
struct ABGDecomposition {
  BigInt alpha;
  BigInt beta;
  BigInt gamma;
};

inline ABGDecomposition decompose_abg(const ShiftedGeometricQuad& quad) {
  const BigInt& b = quad.b();
  const BigInt block = b * b + b + 1;
  const BigInt alpha = quad.a1() / block;
  const BigInt rest = quad.a1() - alpha * block;
  return {alpha, rest / (b + 1), rest % (b + 1)};
}

// ---------------------------------------------------------------------------
// Case selection for c < 0

enum class NegativeShiftCase { One = 1, Two = 2, Three = 3, Four = 4, None = 0 };

inline std::string to_string(NegativeShiftCase id) {
  return id == NegativeShiftCase::None ? "none" : std::to_string(static_cast<int>(id));
}

/// The comparison quantities behind the case choice, with X = a*b^(n+1):
///   1: (r-1)X >= c0 max{b-r, r-1}
///   2: (b-r)X >= (b-r)c0 > (r-1)X
///   3: (r-1)X >= (b-r)c0 > (b-r)X
///   4: (b-r)c0 > X max{b-r, r-1}
struct NegativeShiftClassification {
  NegativeShiftCase id = NegativeShiftCase::None;
  BigInt r_minus_1_lead;
  BigInt b_minus_r_lead;
  BigInt b_minus_r_shift;
  BigInt r_minus_1_shift;
  std::array<bool, 4> holds{};
};

inline NegativeShiftClassification classify_negative_shift(const ShiftedGeometricTriple& t) {
  if (t.c() > 0) {
    throw Error(ErrorKind::InvalidParameters, "case selection applies to c < 0 only");
  }
  const auto [q, r] = decompose_qr(t);
  const BigInt c0 = -t.c();
  const BigInt& lead = t.lead(1);

  NegativeShiftClassification out;
  out.r_minus_1_lead = (r - 1) * lead;
  out.b_minus_r_lead = (t.b() - r) * lead;
  out.b_minus_r_shift = (t.b() - r) * c0;
  out.r_minus_1_shift = (r - 1) * c0;

  const BigInt& rl = out.r_minus_1_lead;
  const BigInt& bl = out.b_minus_r_lead;
  const BigInt& bs = out.b_minus_r_shift;
  const BigInt& rs = out.r_minus_1_shift;
  // c0 > 0 and X > 0, so c0*max{u,v} = max{c0 u, c0 v} and likewise for X.
  out.holds[0] = rl >= std::max(bs, rs);
  out.holds[1] = bl >= bs && bs > rl;
  out.holds[2] = rl >= bs && bs > bl;
  out.holds[3] = bs > std::max(bl, rl);

  int matches = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (out.holds[i]) {
      out.id = static_cast<NegativeShiftCase>(i + 1);
      ++matches;
    }
  }
  if (matches > 1) {
    throw Error(ErrorKind::AssertionFailure, "case conditions are not mutually exclusive");
  }
  return out;
}

// ---------------------------------------------------------------------------
// p-Frobenius closed forms

/// Coefficients of the maximal Apery element: x2*g2 + x3*g3 (+ x4*g4).
/// g_p is that element minus a1.
template <std::size_t K>
struct MaximalPosition {
  std::array<BigInt, K - 1> coords;

  bool inside_grid() const {
    for (const BigInt& x : coords) {
      if (x < 0) return false;
    }
    return true;
  }
};

/// Where the largest element of the p-Apery set sits according to the
/// closed forms, without any validity-range check. nullopt when no case of
/// the c < 0 selector applies.
inline std::optional<MaximalPosition<3>> maximal_position(const ShiftedGeometricTriple& t,
                                                          std::uint64_t p) {
  const auto [q, r] = decompose_qr(t);
  const BigInt& b = t.b();
  const BigInt pp(p);
  auto at = [](BigInt x2, BigInt x3) { return MaximalPosition<3>{{std::move(x2), std::move(x3)}}; };

  if (t.c() > 0) {
    if (r >= 1) return at(r - 1, q + pp);
    return at(b, q + pp - 1);
  }
  switch (classify_negative_shift(t).id) {
    case NegativeShiftCase::One: return at(r - 1, q + pp);
    case NegativeShiftCase::Two: return at(b, q + pp - 1);
    case NegativeShiftCase::Three: return at(pp * b + r + pp - 1, q - pp);
    case NegativeShiftCase::Four: return at((pp + 1) * b + pp, q - pp - 1);
    case NegativeShiftCase::None: break;
  }
  return std::nullopt;
}

inline MaximalPosition<4> maximal_position(const ShiftedGeometricQuad& quad, std::uint64_t p) {
  const auto [alpha, beta, gamma] = decompose_abg(quad);
  const BigInt pp(p);
  if (gamma >= 1) return {{gamma - 1, beta + pp, alpha}};
  return {{BigInt(0), quad.b() + beta + pp, alpha - 1}};
}

namespace detail {

template <std::size_t K>
BigInt value_at(const ShiftedGeometric<K>& params, const MaximalPosition<K>& pos) {
  BigInt value = -params.a1();
  for (std::size_t i = 0; i + 1 < K; ++i) {
    value += pos.coords[i] * params.generator(i + 1);
  }
  return value;
}

template <std::size_t K>
void require_inside_grid(const MaximalPosition<K>& pos, std::uint64_t p) {
  if (!pos.inside_grid()) {
    throw Error(ErrorKind::OutOfValidityRange,
                "the maximal position for p = " + std::to_string(p) + " has a negative coordinate");
  }
}

}  // namespace detail

/// The raw formula value, with no validity-range check. Useful for probing
/// where the formulas stop agreeing with the oracle.
inline std::optional<BigInt> p_frobenius_formula(const ShiftedGeometricTriple& t, std::uint64_t p) {
  auto pos = maximal_position(t, p);
  if (!pos) return std::nullopt;
  return detail::value_at(t, *pos);
}

inline BigInt p_frobenius_formula(const ShiftedGeometricQuad& quad, std::uint64_t p) {
  return detail::value_at(quad, maximal_position(quad, p));
}

/// Valid for 0 <= p <= q. Throws OutOfValidityRange outside that range (or
/// when the maximal position falls off the grid) and NoClosedFormCase when c < 0
/// and none of the four case conditions holds.
inline BigInt p_frobenius_closed(const ShiftedGeometricTriple& t, std::uint64_t p) {
  const auto [q, r] = decompose_qr(t);
  if (BigInt(p) > q) {
    throw Error(ErrorKind::OutOfValidityRange,
                "p = " + std::to_string(p) + " exceeds q = " + q.str());
  }
  auto pos = maximal_position(t, p);
  if (!pos) {
    throw Error(ErrorKind::NoClosedFormCase, "no closed-form case applies for c = " + t.c().str());
  }
  detail::require_inside_grid(*pos, p);
  return detail::value_at(t, *pos);
}

/// Valid for 0 <= p <= b - beta.
inline BigInt p_frobenius_closed(const ShiftedGeometricQuad& quad, std::uint64_t p) {
  const auto abg = decompose_abg(quad);
  const BigInt limit = quad.b() - abg.beta;
  if (BigInt(p) > limit) {
    throw Error(ErrorKind::OutOfValidityRange,
                "p = " + std::to_string(p) + " exceeds b - beta = " + limit.str());
  }
  const auto pos = maximal_position(quad, p);
  detail::require_inside_grid(pos, p);
  return detail::value_at(quad, pos);
}

/// g_p(a, b) = (p+1)ab - a - b.
inline BigInt p_frobenius_two_generators(const BigInt& a, const BigInt& b, std::uint64_t p) {
  if (a < 2 || b < 2) {
    throw Error(ErrorKind::InvalidParameters, "both generators must be at least 2");
  }
  const BigInt g = boost::multiprecision::gcd(a, b);
  if (g != 1) {
    throw Error(ErrorKind::GcdNotOne, "gcd is " + g.str());
  }
  return (BigInt(p) + 1) * a * b - a - b;
}

// ---------------------------------------------------------------------------
// p-Sylvester closed form (c > 0 triples)

inline BigInt p_sylvester_closed(const ShiftedGeometricTriple& t, std::uint64_t p) {
  if (t.c() < 0) {
    throw Error(ErrorKind::Unsupported, "no closed form for the p-Sylvester number when c < 0");
  }
  const auto [q, r] = decompose_qr(t);
  const BigInt pp(p);
  if (pp > q) {
    throw Error(ErrorKind::OutOfValidityRange,
                "p = " + std::to_string(p) + " exceeds q = " + q.str());
  }
  const BigInt& b = t.b();
  const BigInt& g1 = t.generator(0);
  const BigInt& g2 = t.generator(1);
  const BigInt twice = (g1 - 1) * (g2 - 1) - b * q * (2 * g1 - (b + 1) * (q + 1)) +
                       (b + 1) * pp * (2 * g2 - b * (pp + 1));
  if (twice % 2 != 0) {
    throw Error(ErrorKind::AssertionFailure, "p-Sylvester bracket is odd: " + twice.str());
  }
  return twice / 2;
}

// ---------------------------------------------------------------------------
// Apery grid for c > 0 triples

struct GridPosition {
  std::uint64_t x2 = 0;
  std::uint64_t x3 = 0;

  friend auto operator<=>(const GridPosition&, const GridPosition&) = default;
};

/// Positions (x2, x3) of Ape_p as combinations x2*g2 + x3*g3, and their values.
struct AperyGrid {
  std::uint64_t p = 0;
  BigInt residue_unit;  ///< (b-1)c mod a1, the residue of g2
  std::vector<GridPosition> positions;
  std::vector<BigInt> values;
};

/// Layout for 0 <= p <= q with B = b+1:
///   rows x3 = 0 .. q-p-1:        x2 in [pB, (p+1)B - 1]
///   row  x3 = q-p:               x2 in [pB, pB + r - 1]
///   for l = 1..p, row q-p+2l-1:  x2 in [(p-l)B + r, (p-l+1)B - 1]
///                 row q-p+2l:    x2 in [(p-l)B, (p-l)B + r - 1]
inline AperyGrid apery_grid(const ShiftedGeometricTriple& t, std::uint64_t p,
                            const Limits& limits = {}) {
  if (t.c() < 0) {
    throw Error(ErrorKind::Unsupported, "the Apery grid layout is established for c > 0 only");
  }
  const auto qr = decompose_qr(t);
  if (BigInt(p) > qr.q) {
    throw Error(ErrorKind::OutOfValidityRange,
                "p = " + std::to_string(p) + " exceeds q = " + qr.q.str());
  }
  if (t.a1() >= BigInt(limits.table_cap)) {
    throw Error(ErrorKind::ResourceLimit, "grid of " + t.a1().str() + " positions exceeds cap");
  }
  const auto q = qr.q.convert_to<std::uint64_t>();
  const auto r = qr.r.convert_to<std::uint64_t>();
  const auto width = checked_narrow<std::uint64_t>(t.b() + 1, "b + 1");

  AperyGrid grid;
  grid.p = p;
  grid.residue_unit = ((t.b() - 1) * t.c()) % t.a1();
  grid.positions.reserve(t.a1().convert_to<std::size_t>());
  auto row = [&grid](std::uint64_t x3, std::uint64_t from, std::uint64_t count) {
    for (std::uint64_t i = 0; i < count; ++i) grid.positions.push_back({from + i, x3});
  };

  for (std::uint64_t x3 = 0; x3 + p < q; ++x3) row(x3, p * width, width);
  row(q - p, p * width, r);
  for (std::uint64_t l = 1; l <= p; ++l) {
    row(q - p + 2 * l - 1, (p - l) * width + r, width - r);
    row(q - p + 2 * l, (p - l) * width, r);
  }

  grid.values.reserve(grid.positions.size());
  for (const auto& pos : grid.positions) {
    grid.values.push_back(BigInt(pos.x2) * t.generator(1) + BigInt(pos.x3) * t.generator(2));
  }
  return grid;
}

/// (b+1)(a b^(n+1) - c) = b (a b^n - c) + (a b^(n+2) - c). Holds for any
/// integers; the grid's row-to-row shifts rest on it.
inline bool neighbour_identity_holds(const BigInt& a, const BigInt& b, const BigInt& c,
                                     std::uint32_t n) {
  const BigInt g1 = a * ipow(b, n) - c;
  const BigInt g2 = a * ipow(b, n + 1) - c;
  const BigInt g3 = a * ipow(b, n + 2) - c;
  return (b + 1) * g2 == b * g1 + g3;
}

}  // namespace frobkit
