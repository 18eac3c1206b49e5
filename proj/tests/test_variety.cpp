#include "ffavg/variety.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace ffavg;

namespace {

std::uint64_t
upow(std::uint64_t x, unsigned e, std::uint64_t p)
{
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    r = r * x % p;
  }
  return r;
}

// Independent count of H_k points by a nested scan with plain integer arithmetic.
std::uint64_t
oracle_hk_count(unsigned d, unsigned k, std::uint64_t p)
{
  std::vector<std::uint64_t> x(d, 0);
  std::uint64_t count = 0;
  for (;;) {
    bool ok = true;
    for (unsigned j = 1; j + k <= d && ok; ++j) {
      std::uint64_t s = 0;
      for (unsigned i = 0; i < k; ++i) {
        s += upow(x[i], j + 1, p);
      }
      ok = (s + p - upow(x[k + j - 1], j + 1, p)) % p == 0;
    }
    count += ok ? 1 : 0;
    unsigned i = d;
    while (i-- > 0 && ++x[i] == p) {
      x[i] = 0;
    }
    if (i == static_cast<unsigned>(-1)) {
      return count;
    }
  }
}

} // namespace

TEST(BuildHk, ConeInThreeSpace)
{
  const auto sys = build_hk(3, 2);
  ASSERT_EQ(sys.s(), 1u);
  const auto& eq = sys.equations()[0];
  ASSERT_EQ(eq.terms.size(), 3u);
  EXPECT_EQ(eq.terms[0], (DiagonalTerm{ 1, 0, 2 }));
  EXPECT_EQ(eq.terms[1], (DiagonalTerm{ 1, 1, 2 }));
  EXPECT_EQ(eq.terms[2], (DiagonalTerm{ -1, 2, 2 }));
  ASSERT_TRUE(sys.pivots().has_value());
  EXPECT_EQ(*sys.pivots(), (std::vector<std::uint32_t>{ 2 }));
  EXPECT_TRUE(sys.homogeneous());
}

TEST(BuildHk, DegreesRiseByEquation)
{
  const auto sys = build_hk(5, 2);
  ASSERT_EQ(sys.s(), 3u);
  for (std::size_t j = 0; j < 3; ++j) {
    for (const auto& t : sys.equations()[j].terms) {
      EXPECT_EQ(t.exponent, j + 2);
    }
  }
  EXPECT_EQ(sys.exponents(), (std::vector<unsigned>{ 2, 3, 4 }));
}

TEST(BuildHk, RejectsOutOfRange)
{
  EXPECT_THROW(build_hk(3, 3), std::invalid_argument);
  EXPECT_THROW(build_hk(3, 1), std::invalid_argument);
  EXPECT_THROW(build_vk(3, 0), std::invalid_argument);
  EXPECT_THROW(build_vk(3, 3), std::invalid_argument);
}

TEST(BuildVk, ParaboloidAndParabola)
{
  const auto sys = build_vk(3, 2);
  ASSERT_EQ(sys.s(), 1u);
  EXPECT_EQ(sys.equations()[0].terms.back(), (DiagonalTerm{ -1, 2, 1 }));
  EXPECT_FALSE(sys.homogeneous());
  const auto f = make_field(7);
  EXPECT_EQ(cardinality(build_vk(2, 1), f), 7u);
}

TEST(DiagonalSystem, ValidatesStructure)
{
  DiagonalEquation eq{ { { 1, 0, 2 }, { 1, 1, 2 } } };
  EXPECT_THROW(DiagonalSystem(2, {}), std::invalid_argument);
  EXPECT_THROW(DiagonalSystem(2, { eq, eq }), std::invalid_argument);
  EXPECT_THROW(DiagonalSystem(3, { DiagonalEquation{ { { 0, 0, 2 } } } }), std::invalid_argument);
  EXPECT_THROW(DiagonalSystem(3, { DiagonalEquation{ { { 1, 0, 2 }, { 1, 0, 3 } } } }), std::invalid_argument);
  EXPECT_THROW(DiagonalSystem(3, { eq }, std::vector<std::uint32_t>{ 2 }), std::invalid_argument);
  const DiagonalEquation e1{ { { 1, 0, 2 }, { -1, 1, 2 } } };
  const DiagonalEquation e2{ { { 1, 0, 3 }, { -1, 2, 3 } } };
  EXPECT_THROW(DiagonalSystem(3, { e1, e2 }, std::vector<std::uint32_t>{ 0, 2 }), std::invalid_argument);
  EXPECT_NO_THROW(DiagonalSystem(3, { e1, e2 }, std::vector<std::uint32_t>{ 1, 2 }));
}

TEST(InferPivots, PicksExclusiveHighestVariable)
{
  const auto sys = build_hk(5, 3);
  const auto inferred = infer_pivots(sys.d(), sys.equations());
  ASSERT_TRUE(inferred.has_value());
  EXPECT_EQ(*inferred, *sys.pivots());
  const DiagonalEquation shared{ { { 1, 0, 2 }, { 1, 1, 2 } } };
  EXPECT_FALSE(infer_pivots(2, { shared, shared }).has_value());
}

TEST(Enumerate, ConeModFiveHasTwentyFivePoints)
{
  const auto f = make_field(5);
  const auto pts = enumerate_bruteforce(build_hk(3, 2), f);
  EXPECT_EQ(pts.size(), 25u);
  const std::vector<Residue> origin{ 0, 0, 0 };
  EXPECT_TRUE(pts.contains(origin));
  const std::vector<Residue> on_cone{ 3, 4, 0 };
  EXPECT_TRUE(pts.contains(on_cone));
  const std::vector<Residue> off{ 1, 1, 1 };
  EXPECT_FALSE(pts.contains(off));
}

TEST(Enumerate, BudgetIsEnforced)
{
  const auto f = make_field(101);
  EXPECT_THROW(enumerate_bruteforce(build_hk(5, 2), f, 1'000'000), BudgetExceeded);
  EXPECT_THROW(enumerate_structured(build_hk(5, 3), f, 1'000), BudgetExceeded);
}

TEST(Enumerate, StructuredRequiresPivots)
{
  const DiagonalSystem sys(3, { DiagonalEquation{ { { 1, 0, 2 }, { 1, 1, 2 }, { -1, 2, 2 } } } });
  EXPECT_THROW(enumerate_structured(sys, make_field(5)), std::invalid_argument);
  EXPECT_EQ(enumerate(sys, make_field(5)).size(), 25u);
}

TEST(Enumerate, PointsAreSortedUniqueAndOnTheVariety)
{
  const auto f = make_field(7);
  const auto sys = build_hk(4, 2);
  const auto pts = enumerate_structured(sys, f);
  const SystemEvaluator ev(sys, f);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_TRUE(ev.satisfies(pts.point(i)));
    if (i > 0) {
      EXPECT_LT(pts.index_of(i - 1), pts.index_of(i));
    }
  }
}

TEST(Enumerate, StructuredMatchesBruteForce)
{
  struct Config
  {
    unsigned d;
    unsigned k;
    bool parabolic;
    std::uint32_t p;
  };
  std::vector<Config> configs;
  for (std::uint32_t p : { 5u, 7u, 11u }) {
    configs.push_back({ 3, 2, false, p });
    configs.push_back({ 4, 2, false, p });
    configs.push_back({ 4, 3, false, p });
    configs.push_back({ 3, 2, true, p });
    configs.push_back({ 4, 1, true, p });
  }
  configs.push_back({ 5, 2, false, 7 });
  configs.push_back({ 5, 3, false, 7 });
  for (const auto& c : configs) {
    const auto f = make_field(c.p);
    const auto sys = c.parabolic ? build_vk(c.d, c.k) : build_hk(c.d, c.k);
    EXPECT_EQ(enumerate_structured(sys, f), enumerate_bruteforce(sys, f))
      << "d=" << c.d << " k=" << c.k << " p=" << c.p << (c.parabolic ? " V" : " H");
  }
}

TEST(Enumerate, BruteForceMatchesIndependentCount)
{
  for (std::uint32_t p : { 5u, 7u, 11u }) {
    const auto f = make_field(p);
    EXPECT_EQ(cardinality(build_hk(3, 2), f), oracle_hk_count(3, 2, p));
    EXPECT_EQ(cardinality(build_hk(4, 2), f), oracle_hk_count(4, 2, p));
    EXPECT_EQ(cardinality(build_hk(4, 3), f), oracle_hk_count(4, 3, p));
  }
}

TEST(Cardinality, PinnedSmallCounts)
{
  // Frozen from the independent scan above.
  EXPECT_EQ(cardinality(build_hk(4, 2), make_field(5)), 25u);
  EXPECT_EQ(cardinality(build_hk(4, 2), make_field(7)), 85u);
  EXPECT_EQ(cardinality(build_hk(4, 3), make_field(5)), 145u);
  EXPECT_EQ(cardinality(build_hk(4, 3), make_field(7)), 301u);
  EXPECT_EQ(cardinality(build_hk(4, 3), make_field(11)), 1221u);
}

TEST(Cardinality, ConeRatioIsExactlyOne)
{
  for (std::uint32_t p : { 5u, 7u, 11u, 13u }) {
    const auto f = make_field(p);
    EXPECT_EQ(cardinality(build_hk(3, 2), f), std::uint64_t{ p } * p);
    EXPECT_DOUBLE_EQ(cardinality_ratio(build_hk(3, 2), f, 2), 1.0);
  }
}

TEST(Cardinality, ParabolicVarietyIsExactlyParametrized)
{
  for (std::uint32_t p : { 5u, 7u, 11u }) {
    const auto f = make_field(p);
    for (unsigned d = 2; d <= 5; ++d) {
      for (unsigned k = 1; k < d; ++k) {
        if (ipow(p, d) > 200'000) {
          continue;
        }
        EXPECT_EQ(cardinality(build_vk(d, k), f), ipow(p, k)) << "d=" << d << " k=" << k << " p=" << p;
      }
    }
  }
}

TEST(Cardinality, ParabolicCountAtLargerDimension)
{
  const auto f = make_field(13);
  EXPECT_EQ(cardinality(build_vk(6, 3), f), ipow(13, 3));
}

TEST(Homogeneity, ScalarMultiplesStayOnVariety)
{
  std::mt19937_64 rng(11);
  for (std::uint32_t p : { 7u, 13u }) {
    const auto f = make_field(p);
    for (auto [d, k] : { std::pair{ 3u, 2u }, std::pair{ 4u, 2u }, std::pair{ 5u, 3u } }) {
      const auto sys = build_hk(d, k);
      const auto pts = enumerate_structured(sys, f);
      const SystemEvaluator ev(sys, f);
      for (int trial = 0; trial < 30; ++trial) {
        const auto pt = pts.point(rng() % pts.size());
        const Residue lambda = static_cast<Residue>(rng() % p);
        std::vector<Residue> y(pt.begin(), pt.end());
        for (auto& c : y) {
          c = f.mul(c, lambda);
        }
        EXPECT_TRUE(ev.satisfies(y));
        EXPECT_TRUE(pts.contains(y));
      }
    }
  }
}

TEST(CountNkn, PinnedValueModSeven)
{
  const auto r = count_Nkn(2, 1, make_field(7));
  EXPECT_EQ(r.via_roots, 85u);
  ASSERT_TRUE(r.via_enumeration.has_value());
  EXPECT_EQ(*r.via_enumeration, 85u);
}

TEST(CountNkn, RootTablesAgreeWithEnumeration)
{
  for (std::uint32_t p : { 5u, 7u, 11u, 13u }) {
    const auto f = make_field(p);
    for (auto [k, n] : { std::pair{ 2u, 1u }, std::pair{ 2u, 2u }, std::pair{ 3u, 1u } }) {
      const auto r = count_Nkn(k, n, f);
      ASSERT_TRUE(r.via_enumeration.has_value());
      EXPECT_TRUE(r.agree()) << "k=" << k << " n=" << n << " p=" << p;
    }
  }
}

TEST(CountNkn, RatioApproachesOne)
{
  const auto r = count_Nkn(2, 1, make_field(101));
  EXPECT_LT(std::abs(r.ratio() - 1.0), 5.0 / std::sqrt(101.0));
  EXPECT_THROW(count_Nkn(1, 1, make_field(7)), std::invalid_argument);
  EXPECT_THROW(count_Nkn(2, 0, make_field(7)), std::invalid_argument);
}

TEST(Lines, ConeModFivePinned)
{
  const auto lines = lines_through_origin(build_hk(3, 2), make_field(5));
  const std::vector<Direction> expected{ { 0, 1, 1 }, { 0, 1, 4 }, { 1, 0, 1 },
                                         { 1, 0, 4 }, { 1, 2, 0 }, { 1, 3, 0 } };
  EXPECT_EQ(lines, expected);
}

TEST(Lines, RejectsNonHomogeneous)
{
  EXPECT_THROW(lines_through_origin(build_vk(3, 2), make_field(5)), std::invalid_argument);
}

TEST(Lines, CountMatchesPointCount)
{
  // Nonzero points come in full punctured lines of size p - 1.
  for (std::uint32_t p : { 5u, 7u, 11u }) {
    const auto f = make_field(p);
    for (auto [d, k] : { std::pair{ 3u, 2u }, std::pair{ 4u, 2u }, std::pair{ 4u, 3u } }) {
      const auto sys = build_hk(d, k);
      EXPECT_EQ(lines_through_origin(sys, f).size() * (p - 1) + 1, cardinality(sys, f));
    }
  }
}

TEST(SubspaceSearch, LinesInFourSpaceModFive)
{
  const auto f = make_field(5);
  const auto r = subspace_search(build_hk(4, 2), f, 1);
  EXPECT_EQ(r.bases.size(), 6u);
  EXPECT_FALSE(r.truncated);
  EXPECT_THROW(subspace_search(build_hk(4, 2), f, 3), std::invalid_argument);
}

TEST(SubspaceSearch, PlanesAreGenuinelyContained)
{
  const auto f = make_field(13);
  const auto sys = build_hk(4, 3);
  const auto r = subspace_search(sys, f, 2);
  EXPECT_FALSE(r.truncated);
  const SystemEvaluator ev(sys, f);
  for (const auto& basis : r.bases) {
    ASSERT_EQ(basis.size(), 2u);
    for (Residue a = 0; a < 13; ++a) {
      for (Residue b = 0; b < 13; ++b) {
        std::vector<Residue> w(4);
        for (int c = 0; c < 4; ++c) {
          w[c] = f.add(f.mul(a, basis[0][c]), f.mul(b, basis[1][c]));
        }
        EXPECT_TRUE(ev.satisfies(w));
      }
    }
  }
}

TEST(SubspaceSearch, TruncatesWhenBudgetIsTiny)
{
  const auto r = subspace_search(build_hk(4, 3), make_field(13), 2, 5);
  EXPECT_TRUE(r.truncated);
  EXPECT_EQ(r.examined, 5u);
}

TEST(CharacteristicGate, SystemExponents)
{
  EXPECT_TRUE(char_large_enough(5, build_hk(4, 2)));
  EXPECT_FALSE(char_large_enough(5, build_hk(6, 2)));
  EXPECT_TRUE(char_large_enough(7, build_vk(5, 2)));
}
