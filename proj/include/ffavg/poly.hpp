#pragma once

#include "ffavg/common.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ffavg {

// Univariate polynomial over F_p, coefficients from low to high degree.
// The zero polynomial has an empty coefficient list.
class PolyFp
{
public:
  PolyFp() = default;

  explicit PolyFp(std::uint32_t p, std::vector<std::int64_t> coeffs = {})
    : p_(p)
  {
    if (p < 2) {
      throw std::invalid_argument("PolyFp: modulus must be prime");
    }
    c_.reserve(coeffs.size());
    for (auto v : coeffs) {
      auto r = v % static_cast<std::int64_t>(p);
      c_.push_back(static_cast<Residue>(r < 0 ? r + p : r));
    }
    trim();
  }

  static PolyFp from_residues(std::uint32_t p, std::vector<Residue> coeffs)
  {
    PolyFp f(p);
    f.c_ = std::move(coeffs);
    f.trim();
    return f;
  }

  static PolyFp monomial(std::uint32_t p, Residue coeff, unsigned degree)
  {
    std::vector<Residue> c(degree + 1, 0);
    c[degree] = coeff % p;
    return from_residues(p, std::move(c));
  }

  // t^e + a.
  static PolyFp shifted_monomial(std::uint32_t p, unsigned e, std::int64_t a)
  {
    std::vector<std::int64_t> c(e + 1, 0);
    c[0] += a;
    c[e] += 1;
    return PolyFp(p, std::move(c));
  }

  std::uint32_t p() const noexcept { return p_; }
  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Residue>& coeffs() const noexcept { return c_; }
  Residue coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  Residue lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }

  Residue eval(Residue x) const noexcept
  {
    std::uint64_t acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = (acc * x + *it) % p_;
    }
    return static_cast<Residue>(acc);
  }

  friend bool operator==(const PolyFp& a, const PolyFp& b) noexcept { return a.p_ == b.p_ && a.c_ == b.c_; }

  // Order by degree, then coefficients from the top down.
  friend bool operator<(const PolyFp& a, const PolyFp& b) noexcept
  {
    if (a.c_.size() != b.c_.size()) {
      return a.c_.size() < b.c_.size();
    }
    return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
  }

  std::string to_string(char var = 't') const
  {
    if (c_.empty()) {
      return "0";
    }
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const auto c = c_[static_cast<std::size_t>(i)];
      if (c == 0) {
        continue;
      }
      if (!out.empty()) {
        out += " + ";
      }
      if (i == 0 || c != 1) {
        out += std::to_string(c);
      }
      if (i >= 1) {
        out += var;
      }
      if (i >= 2) {
        out += "^" + std::to_string(i);
      }
    }
    return out;
  }

private:
  void trim()
  {
    while (!c_.empty() && c_.back() == 0) {
      c_.pop_back();
    }
  }

  std::uint32_t p_ = 2;
  std::vector<Residue> c_;
};

namespace detail {

inline std::uint64_t
powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1u) {
      r = r * a % m;
    }
    a = a * a % m;
    e >>= 1;
  }
  return r;
}

inline Residue
inv_mod(Residue a, std::uint32_t p)
{
  if (a % p == 0) {
    throw std::domain_error("PolyFp: division by a zero leading coefficient");
  }
  return static_cast<Residue>(powmod_u64(a, p - 2, p));
}

inline void
check_same_field(const PolyFp& a, const PolyFp& b)
{
  if (a.p() != b.p()) {
    throw std::invalid_argument("PolyFp: operands live over different primes");
  }
}

} // namespace detail

inline PolyFp
operator+(const PolyFp& a, const PolyFp& b)
{
  detail::check_same_field(a, b);
  const auto p = a.p();
  std::vector<Residue> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = static_cast<Residue>((static_cast<std::uint64_t>(a.coeff(i)) + b.coeff(i)) % p);
  }
  return PolyFp::from_residues(p, std::move(c));
}

inline PolyFp
operator-(const PolyFp& a, const PolyFp& b)
{
  detail::check_same_field(a, b);
  const auto p = a.p();
  std::vector<Residue> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = static_cast<Residue>((static_cast<std::uint64_t>(a.coeff(i)) + p - b.coeff(i)) % p);
  }
  return PolyFp::from_residues(p, std::move(c));
}

inline PolyFp
operator*(const PolyFp& a, const PolyFp& b)
{
  detail::check_same_field(a, b);
  const auto p = a.p();
  if (a.is_zero() || b.is_zero()) {
    return PolyFp(p);
  }
  std::vector<Residue> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      c[i + j] = static_cast<Residue>((c[i + j] + static_cast<std::uint64_t>(a.coeffs()[i]) * b.coeffs()[j]) % p);
    }
  }
  return PolyFp::from_residues(p, std::move(c));
}

inline PolyFp
scale(const PolyFp& a, Residue s)
{
  std::vector<Residue> c(a.coeffs());
  for (auto& v : c) {
    v = static_cast<Residue>(static_cast<std::uint64_t>(v) * s % a.p());
  }
  return PolyFp::from_residues(a.p(), std::move(c));
}

inline PolyFp
monic(const PolyFp& a)
{
  if (a.is_zero()) {
    return a;
  }
  return scale(a, detail::inv_mod(a.lead(), a.p()));
}

// Quotient and remainder of a by b (b nonzero).
inline std::pair<PolyFp, PolyFp>
divmod(const PolyFp& a, const PolyFp& b)
{
  detail::check_same_field(a, b);
  if (b.is_zero()) {
    throw std::domain_error("PolyFp: division by the zero polynomial");
  }
  const auto p = a.p();
  if (a.degree() < b.degree()) {
    return { PolyFp(p), a };
  }
  std::vector<Residue> r(a.coeffs());
  std::vector<Residue> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
  const Residue inv_lead = detail::inv_mod(b.lead(), p);
  const auto db = static_cast<std::size_t>(b.degree());
  for (std::size_t i = r.size(); i-- > db;) {
    const Residue coef = static_cast<Residue>(static_cast<std::uint64_t>(r[i]) * inv_lead % p);
    q[i - db] = coef;
    if (coef == 0) {
      continue;
    }
    for (std::size_t j = 0; j <= db; ++j) {
      const auto sub = static_cast<std::uint64_t>(coef) * b.coeffs()[j] % p;
      r[i - db + j] = static_cast<Residue>((r[i - db + j] + p - sub) % p);
    }
  }
  r.resize(db);
  return { PolyFp::from_residues(p, std::move(q)), PolyFp::from_residues(p, std::move(r)) };
}

inline PolyFp
operator%(const PolyFp& a, const PolyFp& b)
{
  return divmod(a, b).second;
}

inline PolyFp
operator/(const PolyFp& a, const PolyFp& b)
{
  return divmod(a, b).first;
}

inline PolyFp
derivative(const PolyFp& a)
{
  const auto p = a.p();
  if (a.degree() < 1) {
    return PolyFp(p);
  }
  std::vector<Residue> c(a.coeffs().size() - 1);
  for (std::size_t i = 1; i < a.coeffs().size(); ++i) {
    c[i - 1] = static_cast<Residue>(static_cast<std::uint64_t>(a.coeffs()[i]) * (i % p) % p);
  }
  return PolyFp::from_residues(p, std::move(c));
}

// Monic gcd; gcd(0, 0) is rejected.
inline PolyFp
poly_gcd(PolyFp a, PolyFp b)
{
  detail::check_same_field(a, b);
  if (a.is_zero() && b.is_zero()) {
    throw std::invalid_argument("poly_gcd: both arguments are zero");
  }
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

// base^e mod m.
inline PolyFp
powmod(PolyFp base, std::uint64_t e, const PolyFp& m)
{
  PolyFp result = PolyFp(m.p(), { 1 }) % m;
  base = base % m;
  while (e != 0) {
    if (e & 1u) {
      result = (result * base) % m;
    }
    base = (base * base) % m;
    e >>= 1;
  }
  return result;
}

namespace detail {

// Square-free decomposition: pairs (g_i, i) with monic(f) = prod g_i^i.
inline std::vector<std::pair<PolyFp, unsigned>>
squarefree_decomposition(const PolyFp& f_in)
{
  const auto p = f_in.p();
  std::vector<std::pair<PolyFp, unsigned>> out;
  PolyFp f = monic(f_in);
  if (f.degree() < 1) {
    return out;
  }

  const PolyFp one(p, { 1 });
  PolyFp c = poly_gcd(f, derivative(f));
  PolyFp w = f / c;
  unsigned i = 1;
  while (!w.is_one()) {
    PolyFp y = poly_gcd(w, c);
    PolyFp fac = w / y;
    if (fac.degree() > 0) {
      out.emplace_back(monic(fac), i);
    }
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one() && c.degree() > 0) {
    // c is a polynomial in t^p; take the p-th root coefficient-wise (Frobenius is the identity on F_p).
    std::vector<Residue> root;
    for (std::size_t j = 0; j < c.coeffs().size(); j += p) {
      root.push_back(c.coeffs()[j]);
    }
    for (auto& [g, m] : squarefree_decomposition(PolyFp::from_residues(p, std::move(root)))) {
      out.emplace_back(g, m * p);
    }
  }
  return out;
}

// Distinct-degree factorization of a monic square-free f: pairs (product of all
// irreducible factors of degree d, d).
inline std::vector<std::pair<PolyFp, unsigned>>
distinct_degree(const PolyFp& f_in)
{
  const auto p = f_in.p();
  std::vector<std::pair<PolyFp, unsigned>> out;
  PolyFp f = f_in;
  const PolyFp x = PolyFp::monomial(p, 1, 1);
  PolyFp h = x % f;
  unsigned d = 1;
  while (f.degree() >= 2 * static_cast<int>(d)) {
    h = powmod(h, p, f);
    PolyFp g = poly_gcd(f, h - x);
    if (!g.is_one()) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
    ++d;
  }
  if (f.degree() > 0) {
    out.emplace_back(monic(f), static_cast<unsigned>(f.degree()));
  }
  return out;
}

// Cantor-Zassenhaus equal-degree splitting (odd p) with a fixed-seed generator.
inline std::vector<PolyFp>
equal_degree(const PolyFp& g, unsigned d)
{
  const auto p = g.p();
  if (g.degree() == static_cast<int>(d)) {
    return { monic(g) };
  }
  if (p == 2) {
    throw std::invalid_argument("factor_irreducible: characteristic 2 is not supported");
  }
  const std::size_t target = static_cast<std::size_t>(g.degree()) / d;
  std::vector<PolyFp> factors{ monic(g) };
  std::mt19937_64 rng(0x5eedf00dULL + p * 131u + d);
  const PolyFp one(p, { 1 });

  while (factors.size() < target) {
    std::vector<Residue> rc(static_cast<std::size_t>(g.degree()));
    for (auto& v : rc) {
      v = static_cast<Residue>(rng() % p);
    }
    const PolyFp h = PolyFp::from_residues(p, std::move(rc));
    if (h.degree() < 1) {
      continue;
    }
    // h^((p^d - 1)/2) = (h^(1 + p + ... + p^(d-1)))^((p-1)/2) mod g.
    PolyFp acc = h % g;
    PolyFp frob = acc;
    for (unsigned i = 1; i < d; ++i) {
      frob = powmod(frob, p, g);
      acc = (acc * frob) % g;
    }
    const PolyFp b = powmod(acc, (p - 1) / 2, g) - one;

    std::vector<PolyFp> next;
    for (auto& u : factors) {
      if (u.degree() == static_cast<int>(d)) {
        next.push_back(u);
        continue;
      }
      PolyFp s = b.is_zero() ? u : poly_gcd(u, b % u);
      if (s.degree() > 0 && s.degree() < u.degree()) {
        next.push_back(monic(s));
        next.push_back(monic(u / s));
      } else {
        next.push_back(u);
      }
    }
    factors = std::move(next);
  }
  return factors;
}

} // namespace detail

// Irreducible factorization of monic(f) over F_p (p odd prime), sorted by
// (degree, coefficients). Each entry is (monic irreducible factor, multiplicity).
inline std::vector<std::pair<PolyFp, unsigned>>
factor_irreducible(const PolyFp& f)
{
  if (f.degree() < 1) {
    throw std::invalid_argument("factor_irreducible: degree must be >= 1");
  }
  if (!is_prime(f.p()) || f.p() == 2) {
    throw std::invalid_argument("factor_irreducible: modulus must be an odd prime");
  }
  std::vector<std::pair<PolyFp, unsigned>> out;
  for (const auto& [sq, mult] : detail::squarefree_decomposition(f)) {
    for (const auto& [block, deg] : detail::distinct_degree(sq)) {
      for (auto& irr : detail::equal_degree(block, deg)) {
        out.emplace_back(std::move(irr), mult);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first == b.first) {
      return a.second < b.second;
    }
    return a.first < b.first;
  });
  return out;
}

// Number of distinct roots over the algebraic closure.
inline unsigned
distinct_root_count(const PolyFp& f)
{
  unsigned n = 0;
  for (const auto& [g, m] : factor_irreducible(f)) {
    n += static_cast<unsigned>(g.degree());
  }
  return n;
}

// An irreducible factor of t^s + 1 over F_p coprime to every t^j + 1, j < s;
// std::nullopt when none exists at this prime.
inline std::optional<PolyFp>
primitive_factor_check(std::uint32_t p, unsigned s)
{
  if (s == 0) {
    throw std::invalid_argument("primitive_factor_check: s must be >= 1");
  }
  if (!is_prime(p)) {
    throw std::invalid_argument("primitive_factor_check: modulus must be prime");
  }
  if ((2ULL * s) % p == 0) {
    throw std::invalid_argument("primitive_factor_check: p divides 2s (degenerate characteristic)");
  }
  const PolyFp target = PolyFp::shifted_monomial(p, s, 1);
  for (const auto& [q, mult] : factor_irreducible(target)) {
    bool coprime = true;
    for (unsigned j = 1; j < s && coprime; ++j) {
      coprime = poly_gcd(q, PolyFp::shifted_monomial(p, j, 1)).is_one();
    }
    if (coprime) {
      return q;
    }
  }
  return std::nullopt;
}

} // namespace ffavg
