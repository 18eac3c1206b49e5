#include "ffavg/ffield.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <numeric>
#include <set>

using namespace ffavg;

namespace {

// Residues v with some y, y^e = v, found by exhaustive scan.
std::multiset<Residue>
brute_powers(std::uint32_t p, unsigned e)
{
  std::multiset<Residue> out;
  for (std::uint64_t y = 0; y < p; ++y) {
    std::uint64_t v = 1;
    for (unsigned i = 0; i < e; ++i) {
      v = v * y % p;
    }
    out.insert(static_cast<Residue>(v));
  }
  return out;
}

} // namespace

TEST(PrimeField, SmallestGeneratorAndDlog)
{
  const auto f7 = make_field(7);
  EXPECT_TRUE(f7.generator() == 3 || f7.generator() == 5);
  EXPECT_EQ(f7.dlog(1), 0u);

  const auto f5 = make_field(5);
  EXPECT_EQ(f5.generator(), 2u);
  EXPECT_EQ(f5.dlog(4), 2u);
}

TEST(PrimeField, RejectsCompositeAndSmallPrimes)
{
  EXPECT_THROW(make_field(9), std::invalid_argument);
  EXPECT_THROW(make_field(3), std::invalid_argument);
  EXPECT_THROW(make_field(2), std::invalid_argument);
  EXPECT_THROW(make_field(1), std::invalid_argument);
}

TEST(PrimeField, DlogIsBijectionOntoExponents)
{
  for (std::uint32_t p : primes_in_range(5, 211)) {
    const auto f = make_field(p);
    std::vector<bool> seen(p - 1, false);
    for (Residue x = 1; x < p; ++x) {
      const auto k = f.dlog(x);
      ASSERT_LT(k, p - 1);
      EXPECT_FALSE(seen[k]);
      seen[k] = true;
      EXPECT_EQ(f.pow(f.generator(), k), x);
      EXPECT_EQ(f.exp(k), x);
    }
  }
}

TEST(PrimeField, ArithmeticMatchesIntegerReduction)
{
  const auto f = make_field(101);
  for (Residue a = 0; a < 101; a += 7) {
    for (Residue b = 0; b < 101; b += 3) {
      EXPECT_EQ(f.add(a, b), (a + b) % 101);
      EXPECT_EQ(f.sub(a, b), (a + 101 - b) % 101);
      EXPECT_EQ(f.mul(a, b), a * b % 101);
    }
    if (a != 0) {
      EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
    }
  }
  EXPECT_EQ(f.reduce(-1), 100u);
  EXPECT_THROW(f.inv(0), std::domain_error);
}

TEST(AdditiveCharacter, UnitModulusAndHomomorphism)
{
  const auto f = make_field(31);
  const AdditiveCharacter psi(f);
  for (Residue x = 0; x < 31; ++x) {
    EXPECT_NEAR(std::abs(psi(x)), 1.0, 1e-12);
    for (Residue y = 0; y < 31; ++y) {
      EXPECT_NEAR(std::abs(psi(f.add(x, y)) - psi(x) * psi(y)), 0.0, 1e-12);
    }
  }
}

TEST(MultiplicativeCharacter, QuadraticCharacterModSeven)
{
  const auto f = make_field(7);
  const auto chi = mult_char(f, std::gcd(2u, 6u), 1);
  EXPECT_NEAR(std::abs(chi(1) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(chi(3) + 1.0), 0.0, 1e-12);

  // Oracle: chi(x) = +1 exactly on the nonzero squares.
  std::set<Residue> squares;
  for (Residue y = 1; y < 7; ++y) {
    squares.insert(y * y % 7);
  }
  for (Residue x = 1; x < 7; ++x) {
    const double expected = squares.count(x) ? 1.0 : -1.0;
    EXPECT_NEAR(std::abs(chi(x) - expected), 0.0, 1e-12) << "x=" << x;
  }
  EXPECT_EQ(chi(0), std::complex<double>(0.0));
}

TEST(MultiplicativeCharacter, TrivialCharacterIsOneAtZero)
{
  const auto f = make_field(7);
  const auto chi0 = mult_char(f, 2, 0);
  EXPECT_TRUE(chi0.is_trivial());
  EXPECT_EQ(chi0(0), std::complex<double>(1.0));
  for (Residue x = 1; x < 7; ++x) {
    EXPECT_NEAR(std::abs(chi0(x) - 1.0), 0.0, 1e-12);
  }
}

TEST(MultiplicativeCharacter, CubicCharacterHasOrderThree)
{
  const auto f = make_field(13);
  const auto chi = mult_char(f, 3, 1);
  EXPECT_EQ(chi.exact_order(), 3u);
  for (Residue x = 1; x < 13; ++x) {
    EXPECT_NEAR(std::abs(std::pow(chi(x), 3) - 1.0), 0.0, 1e-12);
  }
  EXPECT_TRUE(chi.pow(3).is_trivial());
}

TEST(MultiplicativeCharacter, RejectsOrderNotDividingGroupOrder)
{
  const auto f = make_field(7);
  EXPECT_THROW(mult_char(f, 4, 1), std::invalid_argument);
  EXPECT_THROW(mult_char(f, 3, 3), std::invalid_argument);
}

TEST(MultiplicativeCharacter, CompletelyMultiplicativeProperty)
{
  for (std::uint32_t p : { 13u, 31u, 61u }) {
    const auto f = make_field(p);
    for (std::uint32_t order = 2; order < p; ++order) {
      if ((p - 1) % order != 0) {
        continue;
      }
      for (std::uint32_t idx = 0; idx < order; ++idx) {
        const auto chi = mult_char(f, order, idx);
        for (Residue x = 1; x < p; x += 3) {
          for (Residue y = 1; y < p; y += 5) {
            EXPECT_NEAR(std::abs(chi(f.mul(x, y)) - chi(x) * chi(y)), 0.0, 1e-12);
          }
        }
        EXPECT_TRUE(chi.pow(order).is_trivial());
      }
    }
  }
}

TEST(MultiplicativeCharacter, OrthogonalityOverField)
{
  for (std::uint32_t p : primes_in_range(5, 101)) {
    const auto f = make_field(p);
    for (std::uint32_t order : { 2u, 3u, 4u, 6u }) {
      if ((p - 1) % order != 0) {
        continue;
      }
      for (std::uint32_t idx = 1; idx < order; ++idx) {
        const auto chi = mult_char(f, order, idx);
        std::complex<double> sum = 0.0;
        for (Residue x = 0; x < p; ++x) {
          sum += chi(x);
        }
        EXPECT_LT(std::abs(sum), 1e-9) << "p=" << p << " order=" << order;
      }
    }
  }
}

TEST(RootTable, SquaresModFive)
{
  const auto f = make_field(5);
  const auto rt = root_table(f, 2);
  const auto r4 = rt.roots(4);
  ASSERT_EQ(r4.size(), 2u);
  EXPECT_EQ(r4[0], 2u);
  EXPECT_EQ(r4[1], 3u);
  EXPECT_TRUE(rt.roots(2).empty());
}

TEST(RootTable, IdentityExponent)
{
  const auto f = make_field(11);
  const auto rt = root_table(f, 1);
  for (Residue v = 0; v < 11; ++v) {
    ASSERT_EQ(rt.count(v), 1u);
    EXPECT_EQ(rt.roots(v)[0], v);
  }
}

TEST(RootTable, CubeRootsOfUnityModSeven)
{
  const auto f = make_field(7);
  const auto rt = root_table(f, 3);
  const auto r1 = rt.roots(1);
  EXPECT_EQ(std::vector<Residue>(r1.begin(), r1.end()), (std::vector<Residue>{ 1, 2, 4 }));
}

TEST(RootTable, CountsMatchBruteForceForAllSmallPrimes)
{
  for (std::uint32_t p : primes_in_range(5, 101)) {
    const auto f = make_field(p);
    for (unsigned e = 1; e <= 6; ++e) {
      const auto rt = root_table(f, e);
      const auto oracle = brute_powers(p, e);
      const auto g = std::gcd(e, p - 1);
      std::uint64_t total = 0;
      for (Residue v = 0; v < p; ++v) {
        EXPECT_EQ(rt.count(v), oracle.count(v));
        total += rt.count(v);
        if (v == 0) {
          EXPECT_EQ(rt.count(v), 1u);
        } else {
          EXPECT_TRUE(rt.count(v) == 0 || rt.count(v) == g) << "p=" << p << " e=" << e << " v=" << v;
        }
      }
      EXPECT_EQ(total, p);
    }
  }
}

TEST(RootTable, RootCountEqualsCharacterSum)
{
  for (std::uint32_t p : primes_in_range(5, 101)) {
    const auto f = make_field(p);
    for (unsigned e = 1; e <= 6; ++e) {
      const auto rt = root_table(f, e);
      const auto d = std::gcd(e, p - 1);
      const auto chi = mult_char(f, d, d == 1 ? 0 : 1);
      for (Residue v = 0; v < p; ++v) {
        std::complex<double> s = 0.0;
        for (std::uint32_t i = 0; i < d; ++i) {
          s += chi.pow(i)(v);
        }
        EXPECT_NEAR(s.real(), rt.count(v), 1e-9);
        EXPECT_NEAR(s.imag(), 0.0, 1e-9);
      }
    }
  }
}

TEST(CharacteristicGate, OperationalDefinition)
{
  const std::vector<unsigned> exps{ 2, 3, 4 };
  EXPECT_FALSE(char_large_enough(3, exps));
  EXPECT_FALSE(char_large_enough(5, std::vector<unsigned>{ 2, 3, 4, 5 }));
  EXPECT_TRUE(char_large_enough(5, exps));
  EXPECT_TRUE(char_large_enough(7, std::vector<unsigned>{ 2, 3, 4, 5, 6 }));
  EXPECT_FALSE(char_large_enough(9, exps));
  EXPECT_TRUE(char_large_enough(5, std::vector<unsigned>{ 1 }));
}
