#pragma once

#include "ffavg/common.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffavg {

// A residue tagged as belonging to some prime field; 0 <= value < p.
struct Element
{
  Residue value = 0;

  friend constexpr auto operator<=>(const Element&, const Element&) = default;
};

// Largest modulus accepted by make_field; tables are O(p).
inline constexpr std::uint32_t max_field_prime = 1u << 24;

// Prime field F_p with a fixed generator, discrete-log table and precomputed
// unit-circle tables. Immutable after construction; copies share tables.
class PrimeField
{
public:
  std::uint32_t p() const noexcept { return t_->p; }
  Residue generator() const noexcept { return t_->g; }

  Residue reduce(std::int64_t v) const noexcept
  {
    const auto m = static_cast<std::int64_t>(t_->p);
    v %= m;
    return static_cast<Residue>(v < 0 ? v + m : v);
  }

  Residue add(Residue a, Residue b) const noexcept
  {
    const std::uint32_t s = a + b;
    return s >= t_->p ? s - t_->p : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + t_->p - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : t_->p - a; }
  Residue mul(Residue a, Residue b) const noexcept
  {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % t_->p);
  }

  Residue pow(Residue a, std::uint64_t e) const noexcept
  {
    std::uint64_t r = 1;
    std::uint64_t x = a % t_->p;
    while (e != 0) {
      if (e & 1u) {
        r = r * x % t_->p;
      }
      x = x * x % t_->p;
      e >>= 1;
    }
    return static_cast<Residue>(r);
  }

  Residue inv(Residue a) const
  {
    if (a % t_->p == 0) {
      throw std::domain_error("PrimeField::inv: zero has no inverse");
    }
    return pow(a, t_->p - 2);
  }

  // Index of x (nonzero) with respect to the generator.
  std::uint32_t dlog(Residue x) const
  {
    if (x == 0 || x >= t_->p) {
      throw std::domain_error("PrimeField::dlog: argument must be a nonzero residue");
    }
    return t_->dlog[x];
  }

  // g^k.
  Residue exp(std::uint64_t k) const noexcept { return t_->expg[k % (t_->p - 1)]; }

  // exp(2 pi i k / (p - 1)).
  std::complex<double> unit(std::uint64_t k) const noexcept { return t_->unit[k % (t_->p - 1)]; }

  // exp(2 pi i x / p).
  std::complex<double> psi(std::uint64_t x) const noexcept { return t_->psi[x % t_->p]; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.p() == b.p(); }

  friend PrimeField make_field(std::uint32_t p);

private:
  struct Tables
  {
    std::uint32_t p = 0;
    Residue g = 0;
    std::vector<std::uint32_t> dlog;
    std::vector<Residue> expg;
    std::vector<std::complex<double>> unit;
    std::vector<std::complex<double>> psi;
  };

  explicit PrimeField(std::shared_ptr<const Tables> t)
    : t_(std::move(t))
  {
  }

  std::shared_ptr<const Tables> t_;
};

inline std::complex<double>
root_of_unity(std::uint64_t k, std::uint64_t n)
{
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
  return { std::cos(angle), std::sin(angle) };
}

// Builds F_p. The generator is the least g in 2..p-1 of order p-1.
inline PrimeField
make_field(std::uint32_t p)
{
  if (!is_prime(p)) {
    throw std::invalid_argument("make_field: " + std::to_string(p) + " is not prime");
  }
  if (p < 5) {
    throw std::invalid_argument("make_field: p = " + std::to_string(p) +
                                " is below the characteristic gate (p >= 5 required)");
  }
  if (p > max_field_prime) {
    throw std::invalid_argument("make_field: p = " + std::to_string(p) + " exceeds the table-driven range");
  }

  auto t = std::make_shared<PrimeField::Tables>();
  t->p = p;

  const auto order_factors = prime_factors(p - 1);
  auto powmod = [p](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e != 0) {
      if (e & 1u) {
        r = r * a % p;
      }
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  for (std::uint32_t g = 2; g < p; ++g) {
    bool primitive = true;
    for (auto q : order_factors) {
      if (powmod(g, (p - 1) / q) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      t->g = g;
      break;
    }
  }

  t->dlog.assign(p, 0);
  t->expg.resize(p - 1);
  std::uint64_t x = 1;
  for (std::uint32_t k = 0; k + 1 < p; ++k) {
    t->expg[k] = static_cast<Residue>(x);
    t->dlog[x] = k;
    x = x * t->g % p;
  }

  t->unit.resize(p - 1);
  for (std::uint32_t k = 0; k + 1 < p; ++k) {
    t->unit[k] = root_of_unity(k, p - 1);
  }
  t->psi.resize(p);
  for (std::uint32_t k = 0; k < p; ++k) {
    t->psi[k] = root_of_unity(k, p);
  }

  return PrimeField(std::move(t));
}

// The canonical nontrivial additive character psi(x) = exp(2 pi i x / p).
class AdditiveCharacter
{
public:
  explicit AdditiveCharacter(PrimeField field)
    : field_(std::move(field))
  {
  }

  std::complex<double> operator()(Residue x) const noexcept { return field_.psi(x); }
  std::uint32_t p() const noexcept { return field_.p(); }

private:
  PrimeField field_;
};

// The character of F_p^* sending the generator g to exp(2 pi i index / order),
// extended by chi(0) = 0 for nontrivial chi and chi_0(0) = 1.
class MultiplicativeCharacter
{
public:
  MultiplicativeCharacter(PrimeField field, std::uint32_t order, std::uint32_t index)
    : field_(std::move(field))
    , order_(order)
    , index_(index)
  {
    if (order_ == 0 || (field_.p() - 1) % order_ != 0) {
      throw std::invalid_argument("mult_char: order " + std::to_string(order) + " does not divide p - 1 = " +
                                  std::to_string(field_.p() - 1));
    }
    if (index_ >= order_) {
      throw std::invalid_argument("mult_char: index must lie in 0..order-1");
    }
  }

  const PrimeField& field() const noexcept { return field_; }
  std::uint32_t order() const noexcept { return order_; }
  std::uint32_t index() const noexcept { return index_; }
  bool is_trivial() const noexcept { return index_ == 0; }

  // Exact order of the character as a group element.
  std::uint32_t exact_order() const noexcept { return order_ / std::gcd(index_, order_); }

  // chi(x) = unit(exponent(x)) for x != 0; exponent lives in Z/(p-1).
  std::uint64_t exponent(Residue x) const
  {
    const std::uint64_t step = (field_.p() - 1) / order_;
    return static_cast<std::uint64_t>(index_) * step * field_.dlog(x) % (field_.p() - 1);
  }

  std::complex<double> operator()(Residue x) const
  {
    if (x == 0) {
      return is_trivial() ? 1.0 : 0.0;
    }
    return field_.unit(exponent(x));
  }

  MultiplicativeCharacter pow(std::uint64_t n) const
  {
    return { field_, order_, static_cast<std::uint32_t>(static_cast<std::uint64_t>(index_) * n % order_) };
  }

private:
  PrimeField field_;
  std::uint32_t order_;
  std::uint32_t index_;
};

inline MultiplicativeCharacter
mult_char(const PrimeField& field, std::uint32_t order, std::uint32_t index)
{
  return { field, order, index };
}

// For each v in F_p, the sorted list of y with y^e = v. Constant-time lookup.
class RootTable
{
public:
  RootTable(const PrimeField& field, unsigned e)
    : p_(field.p())
    , e_(e)
  {
    if (e == 0) {
      throw std::invalid_argument("root_table: exponent must be >= 1");
    }
    std::vector<Residue> image(p_);
    offsets_.assign(p_ + 1, 0);
    for (Residue y = 0; y < p_; ++y) {
      image[y] = field.pow(y, e);
      ++offsets_[image[y] + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    roots_.resize(p_);
    std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (Residue y = 0; y < p_; ++y) {
      roots_[cursor[image[y]]++] = y;
    }
  }

  unsigned exponent() const noexcept { return e_; }
  std::uint32_t p() const noexcept { return p_; }

  std::span<const Residue> roots(Residue v) const noexcept
  {
    return { roots_.data() + offsets_[v], offsets_[v + 1] - offsets_[v] };
  }

  std::uint32_t count(Residue v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

private:
  std::uint32_t p_;
  unsigned e_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Residue> roots_;
};

inline RootTable
root_table(const PrimeField& field, unsigned e)
{
  return { field, e };
}

// Operational reading of "characteristic sufficiently large": p >= 5, p exceeds
// every exponent in play, and p divides no e nor e(e-1) for e >= 2.
inline bool
char_large_enough(std::uint32_t p, std::span<const unsigned> exponents)
{
  if (!is_prime(p) || p < 5) {
    return false;
  }
  for (const unsigned e : exponents) {
    if (e >= p || e % p == 0) {
      return false;
    }
    if (e >= 2 && (static_cast<std::uint64_t>(e) * (e - 1)) % p == 0) {
      return false;
    }
  }
  return true;
}

} // namespace ffavg
