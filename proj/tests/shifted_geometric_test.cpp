#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "frobkit/semigroup.hpp"
#include "frobkit/shifted_geometric.hpp"

namespace frobkit {
namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::AssertionFailure;
}

std::vector<BigInt> values_of(const GeneratorTuple& gens) {
  return {gens.values().begin(), gens.values().end()};
}

TEST(MakeTriple, Examples) {
  EXPECT_EQ(values_of(make_triple(5, 2, 19, 3).generators()), (std::vector<BigInt>{21, 61, 141}));
  EXPECT_EQ(values_of(make_triple(4, 3, -1, 1).generators()), (std::vector<BigInt>{13, 37, 109}));
  EXPECT_EQ(kind_of([] { make_triple(2, 2, 2, 1); }), ErrorKind::GcdNotOne);
}

TEST(MakeTriple, RejectsBadParameters) {
  EXPECT_EQ(kind_of([] { make_triple(0, 2, 1, 1); }), ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([] { make_triple(1, 1, 1, 1); }), ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([] { make_triple(1, 2, 0, 1); }), ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([] { make_triple(1, 2, 1, 0); }), ErrorKind::InvalidParameters);
  EXPECT_EQ(kind_of([] { make_triple(1, 2, 1, 1); }), ErrorKind::InvalidParameters);  // a1 = 1
}

TEST(MakeTriple, GcdMessageNamesTheDivisor) {
  try {
    make_triple(2, 2, 2, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("gcd is 2"), std::string::npos);
  }
}

TEST(MakeQuad, Examples) {
  EXPECT_EQ(values_of(make_quad(2, 3, 37, 3).generators()), (std::vector<BigInt>{17, 125, 449, 1421}));
  EXPECT_EQ(values_of(make_quad(1, 2, 1, 2).generators()), (std::vector<BigInt>{3, 7, 15, 31}));
  EXPECT_EQ(kind_of([] { make_quad(2, 2, 2, 1); }), ErrorKind::GcdNotOne);
}

TEST(DecomposeQr, Examples) {
  auto qr = decompose_qr(make_triple(5, 2, 19, 3));
  EXPECT_EQ(qr.q, 7);
  EXPECT_EQ(qr.r, 0);
  qr = decompose_qr(make_triple(4, 3, -1, 1));
  EXPECT_EQ(qr.q, 3);
  EXPECT_EQ(qr.r, 1);
  qr = decompose_qr(make_triple(1, 2, -1, 1));
  EXPECT_EQ(qr.q, 1);
  EXPECT_EQ(qr.r, 0);
}

TEST(DecomposeAbg, Examples) {
  auto abg = decompose_abg(make_quad(2, 3, 37, 3));
  EXPECT_EQ(abg.alpha, 1);
  EXPECT_EQ(abg.beta, 1);
  EXPECT_EQ(abg.gamma, 0);

  abg = decompose_abg(make_quad(2, 2, 1, 3));
  EXPECT_EQ(abg.alpha, 2);
  EXPECT_EQ(abg.beta, 0);
  EXPECT_EQ(abg.gamma, 1);

  // a1 = 1*2^3 - 1 = 7 = b^2 + b + 1 for b = 2.
  abg = decompose_abg(make_quad(1, 2, 1, 3));
  EXPECT_EQ(abg.alpha, 1);
  EXPECT_EQ(abg.beta, 0);
  EXPECT_EQ(abg.gamma, 0);
}

TEST(ClassifyNegativeShift, Examples) {
  EXPECT_EQ(classify_negative_shift(make_triple(4, 3, -1, 1)).id, NegativeShiftCase::Two);
  EXPECT_EQ(classify_negative_shift(make_triple(1, 2, -5, 1)).id, NegativeShiftCase::Four);
  EXPECT_EQ(classify_negative_shift(make_triple(1, 3, -100, 1)).id, NegativeShiftCase::None);
  EXPECT_EQ(kind_of([] { classify_negative_shift(make_triple(5, 2, 19, 3)); }), ErrorKind::InvalidParameters);
}

TEST(ClassifyNegativeShift, AtMostOneCaseOverASweep) {
  for (int a = 1; a <= 6; ++a) {
    for (int b = 2; b <= 6; ++b) {
      for (int c = -60; c <= -1; ++c) {
        for (std::uint32_t n = 1; n <= 3; ++n) {
          try {
            const auto cls = classify_negative_shift(make_triple(a, b, c, n));
            ASSERT_LE(std::count(cls.holds.begin(), cls.holds.end(), true), 1);
          } catch (const Error& e) {
            ASSERT_NE(e.kind(), ErrorKind::AssertionFailure);
          }
        }
      }
    }
  }
}

TEST(PFrobeniusClosed, TripleExamples) {
  EXPECT_EQ(p_frobenius_closed(make_triple(5, 2, 19, 3), 3), 1370);
  EXPECT_EQ(p_frobenius_closed(make_triple(4, 3, -1, 1), 0), 316);
  EXPECT_EQ(p_frobenius_closed(make_triple(1, 2, -5, 1), 0), 24);
  EXPECT_EQ(p_frobenius_closed(make_triple(3, 2, 1, 2), 0), 153);
}

TEST(PFrobeniusClosed, TripleErrors) {
  EXPECT_EQ(kind_of([] { p_frobenius_closed(make_triple(5, 2, 19, 3), 8); }), ErrorKind::OutOfValidityRange);
  EXPECT_EQ(kind_of([] { p_frobenius_closed(make_triple(1, 3, -100, 1), 0); }), ErrorKind::NoClosedFormCase);
}

TEST(PFrobeniusClosed, NegativeCoordinateIsOutOfRange) {
  // (7,9,13) is case 4 with q = 2. At p = q the maximal position has
  // x3 = q - p - 1 = -1; the raw formula gives 52 while the true value is 51.
  const auto t = make_triple(1, 2, -5, 1);
  const auto pos = maximal_position(t, 2);
  ASSERT_TRUE(pos.has_value());
  EXPECT_FALSE(pos->inside_grid());
  EXPECT_EQ(*p_frobenius_formula(t, 2), 52);
  EXPECT_EQ(p_frobenius_scan(t.generators(), 2), 51);
  EXPECT_EQ(kind_of([&] { p_frobenius_closed(t, 2); }), ErrorKind::OutOfValidityRange);

  const std::vector<BigInt> expected{24, 38};
  for (std::uint64_t p = 0; p < 2; ++p) EXPECT_EQ(p_frobenius_closed(t, p), expected[p]);
}

TEST(PFrobeniusClosed, QuadExamples) {
  const auto quad = make_quad(2, 3, 37, 3);
  EXPECT_EQ(p_frobenius_closed(quad, 0), 1779);
  EXPECT_EQ(p_frobenius_closed(quad, 1), 2228);
  EXPECT_EQ(p_frobenius_closed(quad, 2), 2677);
  EXPECT_EQ(kind_of([&] { p_frobenius_closed(quad, 3); }), ErrorKind::OutOfValidityRange);
  EXPECT_EQ(p_frobenius_scan(quad.generators(), 3), 3075);
}

TEST(PFrobeniusTwoGenerators, Examples) {
  EXPECT_EQ(p_frobenius_two_generators(2, 3, 0), 1);
  EXPECT_EQ(p_frobenius_two_generators(3, 5, 1), 22);
  EXPECT_EQ(p_frobenius_two_generators(2, 3, 2), 13);
  EXPECT_EQ(p_frobenius_scan(GeneratorTuple({2, 3}), 2), 13);
  EXPECT_EQ(kind_of([] { p_frobenius_two_generators(4, 6, 0); }), ErrorKind::GcdNotOne);
}

TEST(PSylvesterClosed, Examples) {
  const auto t = make_triple(5, 2, 19, 3);
  EXPECT_EQ(p_sylvester_closed(t, 0), 474);
  EXPECT_EQ(p_sylvester_closed(t, 7), 1587);

  const auto small = make_triple(3, 2, 1, 2);
  EXPECT_EQ(p_sylvester_closed(small, 0), p_sylvester_count(small.generators(), 0));
  EXPECT_EQ(p_sylvester_count(small.generators(), 0), 80);

  EXPECT_EQ(kind_of([] { p_sylvester_closed(make_triple(4, 3, -1, 1), 0); }), ErrorKind::Unsupported);
  EXPECT_EQ(kind_of([&] { p_sylvester_closed(t, 8); }), ErrorKind::OutOfValidityRange);
}

TEST(GoldenTriple, ClosedFormsOverTheWholeRange) {
  const auto t = make_triple(5, 2, 19, 3);
  for (std::uint64_t p = 0; p <= 7; ++p) {
    const BigInt pp(p);
    EXPECT_EQ(p_frobenius_closed(t, p), 141 * pp + 947);
    EXPECT_EQ(p_sylvester_closed(t, p), 3 * (158 + 60 * pp - pp * pp));
  }
}

TEST(AperyGrid, Examples) {
  const auto golden = apery_grid(make_triple(5, 2, 19, 3), 0);
  ASSERT_EQ(golden.positions.size(), 21u);
  std::set<GridPosition> expected;
  for (std::uint64_t x2 = 0; x2 <= 2; ++x2) {
    for (std::uint64_t x3 = 0; x3 <= 6; ++x3) expected.insert({x2, x3});
  }
  EXPECT_EQ(std::set<GridPosition>(golden.positions.begin(), golden.positions.end()), expected);
  EXPECT_EQ(*std::max_element(golden.values.begin(), golden.values.end()), 968);

  const auto small = apery_grid(make_triple(3, 2, 1, 2), 0);
  ASSERT_EQ(small.positions.size(), 11u);
  expected.clear();
  for (std::uint64_t x2 = 0; x2 <= 2; ++x2) {
    for (std::uint64_t x3 = 0; x3 <= 2; ++x3) expected.insert({x2, x3});
  }
  expected.insert({0, 3});
  expected.insert({1, 3});
  EXPECT_EQ(std::set<GridPosition>(small.positions.begin(), small.positions.end()), expected);
  const auto top = std::max_element(small.values.begin(), small.values.end()) - small.values.begin();
  EXPECT_EQ(small.positions[static_cast<std::size_t>(top)], (GridPosition{1, 3}));
}

TEST(AperyGrid, Errors) {
  EXPECT_EQ(kind_of([] { apery_grid(make_triple(4, 3, -1, 1), 0); }), ErrorKind::Unsupported);
  EXPECT_EQ(kind_of([] { apery_grid(make_triple(5, 2, 19, 3), 8); }), ErrorKind::OutOfValidityRange);
  EXPECT_EQ(kind_of([] { apery_grid(make_triple(5, 2, 19, 3), 0, Limits{10}); }), ErrorKind::ResourceLimit);
}

TEST(AperyGrid, MatchesGenericAperySet) {
  std::mt19937_64 rng(31);
  int checked = 0;
  while (checked < 60) {
    const BigInt a(1 + rng() % 6);
    const BigInt b(2 + rng() % 5);
    const BigInt c(1 + rng() % 40);
    const auto n = static_cast<std::uint32_t>(1 + rng() % 3);
    std::optional<ShiftedGeometricTriple> t;
    try {
      t = make_triple(a, b, c, n);
    } catch (const Error&) {
      continue;
    }
    if (t->a1() > 2000) continue;
    const auto q = decompose_qr(*t).q.convert_to<std::uint64_t>();
    const std::uint64_t p = rng() % (q + 1);

    const auto grid = apery_grid(*t, p);
    auto from_grid = grid.values;
    const auto apery = apery_set(t->generators(), p);
    std::vector<BigInt> generic(apery.entries().begin(), apery.entries().end());
    std::sort(from_grid.begin(), from_grid.end());
    std::sort(generic.begin(), generic.end());
    ASSERT_EQ(from_grid, generic) << "a=" << a << " b=" << b << " c=" << c << " n=" << n << " p=" << p;

    const auto top = *std::max_element(grid.values.begin(), grid.values.end());
    const auto table = denumerant_table(t->generators(), top.convert_to<std::size_t>());
    for (const auto& v : grid.values) ASSERT_EQ(table[v.convert_to<std::size_t>()], p + 1);
    ++checked;
  }
}

TEST(NeighbourIdentity, HoldsOnFuzzedParameters) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 1000; ++i) {
    const BigInt a(1 + rng() % 1000);
    const BigInt b(2 + rng() % 1000);
    const BigInt c = BigInt(static_cast<std::int64_t>(rng() % 2001)) - 1000;
    const auto n = static_cast<std::uint32_t>(1 + rng() % 40);
    ASSERT_TRUE(neighbour_identity_holds(a, b, c, n));
  }
}

}  // namespace
}  // namespace frobkit
