#include "ffavg/poly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ffavg;

namespace {

PolyFp
product_of(const std::vector<std::pair<PolyFp, unsigned>>& factors, std::uint32_t p)
{
  PolyFp acc(p, { 1 });
  for (const auto& [g, m] : factors) {
    for (unsigned i = 0; i < m; ++i) {
      acc = acc * g;
    }
  }
  return acc;
}

// Irreducible over F_p iff no monic divisor of degree 1..deg/2, checked by
// enumerating every monic polynomial of that degree.
bool
brute_irreducible(const PolyFp& f)
{
  const auto p = f.p();
  const int n = f.degree();
  for (int d = 1; 2 * d <= n; ++d) {
    std::vector<Residue> c(static_cast<std::size_t>(d) + 1, 0);
    c[static_cast<std::size_t>(d)] = 1;
    const std::uint64_t total = ipow(p, static_cast<unsigned>(d));
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t x = code;
      for (int i = 0; i < d; ++i) {
        c[static_cast<std::size_t>(i)] = static_cast<Residue>(x % p);
        x /= p;
      }
      if ((f % PolyFp::from_residues(p, c)).is_zero()) {
        return false;
      }
    }
  }
  return n >= 1;
}

std::vector<Residue>
roots_of(const PolyFp& f)
{
  std::vector<Residue> r;
  for (Residue x = 0; x < f.p(); ++x) {
    if (f.eval(x) == 0) {
      r.push_back(x);
    }
  }
  return r;
}

} // namespace

TEST(PolyGcd, SharedLinearFactor)
{
  const PolyFp a(7, { -1, 0, 1 });
  const PolyFp b(7, { -1, 1 });
  EXPECT_EQ(poly_gcd(a, b), PolyFp(7, { -1, 1 }));
}

TEST(PolyGcd, CoprimeWhenMinusOneIsNotARoot)
{
  const PolyFp a(7, { 1, 0, 1 });
  const PolyFp b(7, { 1, 1 });
  EXPECT_NE(a.eval(6), 0u);
  EXPECT_TRUE(poly_gcd(a, b).is_one());
}

TEST(PolyGcd, WithZeroIsMonicScaling)
{
  const PolyFp f(7, { 3, 0, 2 });
  const auto g = poly_gcd(f, PolyFp(7));
  EXPECT_TRUE(g.is_monic());
  EXPECT_EQ(g, monic(f));
  EXPECT_THROW(poly_gcd(PolyFp(7), PolyFp(7)), std::invalid_argument);
}

TEST(PolyArithmetic, DivisionIdentity)
{
  std::mt19937_64 rng(7);
  for (std::uint32_t p : { 3u, 5u, 13u, 101u }) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<std::int64_t> ca(rng() % 9 + 1);
      std::vector<std::int64_t> cb(rng() % 5 + 1);
      for (auto& v : ca) v = static_cast<std::int64_t>(rng() % p);
      for (auto& v : cb) v = static_cast<std::int64_t>(rng() % p);
      cb.back() = 1;
      const PolyFp a(p, ca);
      const PolyFp b(p, cb);
      const auto [q, r] = divmod(a, b);
      EXPECT_EQ(q * b + r, a);
      EXPECT_LT(r.degree(), b.degree());
    }
  }
}

TEST(FactorIrreducible, SumOfSquaresSplitsModFive)
{
  const auto fac = factor_irreducible(PolyFp(5, { 1, 0, 1 }));
  ASSERT_EQ(fac.size(), 2u);
  EXPECT_EQ(fac[0].first, PolyFp(5, { 2, 1 }));
  EXPECT_EQ(fac[1].first, PolyFp(5, { 3, 1 }));
  // roots are -2 = 3 and -3 = 2: the square roots of -1 mod 5
  EXPECT_EQ(roots_of(PolyFp(5, { 1, 0, 1 })), (std::vector<Residue>{ 2, 3 }));
}

TEST(FactorIrreducible, SumOfSquaresIrreducibleModSeven)
{
  const PolyFp f(7, { 1, 0, 1 });
  EXPECT_TRUE(roots_of(f).empty());
  const auto fac = factor_irreducible(f);
  ASSERT_EQ(fac.size(), 1u);
  EXPECT_EQ(fac[0].first, f);
  EXPECT_EQ(fac[0].second, 1u);
}

TEST(FactorIrreducible, CubeMinusOneModSeven)
{
  const PolyFp f(7, { -1, 0, 0, 1 });
  EXPECT_EQ(roots_of(f), (std::vector<Residue>{ 1, 2, 4 }));
  const auto fac = factor_irreducible(f);
  ASSERT_EQ(fac.size(), 3u);
  EXPECT_EQ(fac[0].first, PolyFp(7, { -4, 1 }));
  EXPECT_EQ(fac[1].first, PolyFp(7, { -2, 1 }));
  EXPECT_EQ(fac[2].first, PolyFp(7, { -1, 1 }));
}

TEST(FactorIrreducible, HandlesRepeatedAndFrobeniusFactors)
{
  // (t+1)^3 (t^2+1) over F_3: the cube is a p-th power.
  const PolyFp a(3, { 1, 1 });
  const PolyFp b(3, { 1, 0, 1 });
  const auto f = a * a * a * b;
  const auto fac = factor_irreducible(f);
  ASSERT_EQ(fac.size(), 2u);
  EXPECT_EQ(fac[0].first, a);
  EXPECT_EQ(fac[0].second, 3u);
  EXPECT_EQ(fac[1].first, b);
  EXPECT_EQ(fac[1].second, 1u);
}

TEST(FactorIrreducible, RecomposesAndFactorsAreIrreducible)
{
  std::mt19937_64 rng(20240611);
  for (std::uint32_t p : { 3u, 5u, 7u, 11u, 13u }) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t deg = 1 + rng() % 8;
      std::vector<std::int64_t> c(deg + 1);
      for (auto& v : c) v = static_cast<std::int64_t>(rng() % p);
      c.back() = 1 + static_cast<std::int64_t>(rng() % (p - 1));
      // square a random piece in to force multiplicities
      PolyFp f(p, c);
      if (trial % 3 == 0) {
        const PolyFp g(p, { static_cast<std::int64_t>(rng() % p), 1 });
        f = f * g * g;
      }
      const auto fac = factor_irreducible(f);
      EXPECT_EQ(product_of(fac, p), monic(f)) << f.to_string();
      for (const auto& [g, m] : fac) {
        EXPECT_TRUE(g.is_monic());
        EXPECT_TRUE(brute_irreducible(g)) << g.to_string() << " over F_" << p;
      }
    }
  }
}

TEST(FactorIrreducible, RejectsConstants)
{
  EXPECT_THROW(factor_irreducible(PolyFp(7, { 3 })), std::invalid_argument);
}

TEST(PrimitiveFactor, SumOfSquaresModSeven)
{
  const auto q = primitive_factor_check(7, 2);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, PolyFp(7, { 1, 0, 1 }));
}

TEST(PrimitiveFactor, LinearCaseIsVacuous)
{
  const auto q = primitive_factor_check(5, 1);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, PolyFp(5, { 1, 1 }));
}

TEST(PrimitiveFactor, CharacteristicThreeDegreeFour)
{
  // Exhaustive: t^4 + 1 over F_3 splits into two irreducible quadratics, and
  // neither shares a root with t + 1, t^2 + 1 or t^3 + 1.
  const auto fac = factor_irreducible(PolyFp(3, { 1, 0, 0, 0, 1 }));
  ASSERT_EQ(fac.size(), 2u);
  for (const auto& [g, m] : fac) {
    EXPECT_EQ(g.degree(), 2);
  }
  const auto q = primitive_factor_check(3, 4);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, fac[0].first);
}

TEST(PrimitiveFactor, RejectsDegenerateCharacteristic)
{
  EXPECT_THROW(primitive_factor_check(5, 5), std::invalid_argument);
  EXPECT_THROW(primitive_factor_check(2, 3), std::invalid_argument);
  EXPECT_THROW(primitive_factor_check(7, 0), std::invalid_argument);
}

TEST(PrimitiveFactor, WitnessHasNoRootInCommonWithEarlierShifts)
{
  for (std::uint32_t p : primes_in_range(11, 101)) {
    for (unsigned s = 1; s <= 6; ++s) {
      if ((2 * s) % p == 0) {
        continue;
      }
      const auto q = primitive_factor_check(p, s);
      ASSERT_TRUE(q.has_value()) << "p=" << p << " s=" << s;
      EXPECT_TRUE((PolyFp::shifted_monomial(p, s, 1) % *q).is_zero());
      for (unsigned j = 1; j < s; ++j) {
        EXPECT_TRUE(poly_gcd(*q, PolyFp::shifted_monomial(p, j, 1)).is_one());
      }
    }
  }
}
