#pragma once

#include "ffavg/common.hpp"
#include "ffavg/ffield.hpp"
#include "ffavg/poly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffavg {

// chi(t^e + a).
struct ShiftedMonomialFactor
{
  unsigned exponent = 1;
  std::int64_t shift = 0;
  MultiplicativeCharacter chi;

  PolyFp polynomial() const { return PolyFp::shifted_monomial(chi.field().p(), exponent, shift); }
};

struct CharSumResult
{
  std::complex<double> value;
  double modulus = 0.0;
  double normalized = 0.0;
  std::size_t factors = 0;
  std::uint32_t p = 0;
};

namespace detail {

// Accumulates exponent classes mod p - 1 exactly, then sums the unit roots once.
class ExponentHistogram
{
public:
  explicit ExponentHistogram(const PrimeField& field)
    : field_(field)
    , counts_(field.p() - 1, 0)
  {
  }

  void add(std::uint64_t exponent) { ++counts_[exponent % counts_.size()]; }

  std::complex<double> total() const
  {
    CompensatedSum<std::complex<double>> s;
    for (std::size_t e = 0; e < counts_.size(); ++e) {
      if (counts_[e] != 0) {
        s.add(static_cast<double>(counts_[e]) * field_.unit(e));
      }
    }
    return s.value();
  }

private:
  PrimeField field_;
  std::vector<std::uint64_t> counts_;
};

inline CharSumResult
make_result(std::complex<double> value, std::size_t factors, std::uint32_t p)
{
  const double m = std::abs(value);
  return { value, m, m / std::sqrt(static_cast<double>(p)), factors, p };
}

} // namespace detail

// S = sum over t in F_p of prod_i chi_i(t^{e_i} + a_i), with chi(0) = 0 unless chi is trivial.
inline CharSumResult
char_sum(const PrimeField& field, std::span<const ShiftedMonomialFactor> factors)
{
  if (factors.empty()) {
    throw std::invalid_argument("char_sum: at least one factor is required");
  }
  for (const auto& f : factors) {
    if (f.chi.field().p() != field.p()) {
      throw std::invalid_argument("char_sum: character belongs to a different field");
    }
    if (f.exponent < 1) {
      throw std::invalid_argument("char_sum: exponents must be >= 1");
    }
  }
  const auto p = field.p();
  detail::ExponentHistogram hist(field);
  for (Residue t = 0; t < p; ++t) {
    std::uint64_t e = 0;
    bool vanishes = false;
    for (const auto& f : factors) {
      const Residue v = field.add(field.pow(t, f.exponent), field.reduce(f.shift));
      if (v == 0) {
        if (!f.chi.is_trivial()) {
          vanishes = true;
          break;
        }
        continue;
      }
      e += f.chi.exponent(v);
    }
    if (!vanishes) {
      hist.add(e);
    }
  }
  return detail::make_result(hist.total(), factors.size(), p);
}

// Weil-type bound (m - 1) sqrt(p) for the factors carrying nontrivial
// characters, where m counts their distinct roots over the closure. Applies
// only when those polynomials are squarefree and pairwise coprime; otherwise
// the trivial bound p is reported.
struct WeilBound
{
  bool applicable = false;
  bool all_trivial = false;
  unsigned roots = 0;
  // Bound on |S| / sqrt(p).
  double constant = 0.0;
  std::string reason;
};

inline WeilBound
weil_bound(const PrimeField& field, std::span<const ShiftedMonomialFactor> factors)
{
  const double trivial = std::sqrt(static_cast<double>(field.p()));
  std::vector<PolyFp> polys;
  for (const auto& f : factors) {
    if (!f.chi.is_trivial()) {
      polys.push_back(f.polynomial());
    }
  }
  if (polys.empty()) {
    return { false, true, 0, trivial, "all characters trivial" };
  }
  for (const auto& g : polys) {
    if (g.degree() < 1) {
      return { false, false, 0, trivial, "constant polynomial" };
    }
    const auto dg = derivative(g);
    if (dg.is_zero() || !poly_gcd(g, dg).is_one()) {
      return { false, false, 0, trivial, "repeated root: " + g.to_string() };
    }
  }
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      if (!poly_gcd(polys[i], polys[j]).is_one()) {
        return { false, false, 0, trivial, "common root: " + polys[i].to_string() + ", " + polys[j].to_string() };
      }
    }
  }
  unsigned m = 0;
  for (const auto& g : polys) {
    m += distinct_root_count(g);
  }
  return { true, false, m, static_cast<double>(m) - 1.0, {} };
}

struct WeilRow
{
  std::uint32_t p = 0;
  std::vector<std::uint32_t> orders;
  std::vector<std::uint32_t> indices;
  double modulus = 0.0;
  double normalized = 0.0;
  double bound = 0.0;
  bool trivial = false;
  bool pass = true;
};

struct WeilReport
{
  std::vector<unsigned> degrees;
  std::vector<WeilRow> rows;
  double max_normalized = 0.0;
  bool all_pass = true;
};

// Sums prod_j chi_j^{i_j}(t^{e_j} + 1) where chi_j has order gcd(e_j, p - 1),
// over every index tuple at every prime. The all-zero tuple is the excluded
// trivial case: it is listed with sum p and never flagged.
inline WeilReport
weil_verify(std::span<const unsigned> degrees, std::span<const std::uint32_t> primes, unsigned jobs = 1)
{
  if (degrees.empty()) {
    throw std::invalid_argument("weil_verify: at least one degree is required");
  }
  for (auto p : primes) {
    if (!char_large_enough(p, degrees)) {
      throw std::invalid_argument("weil_verify: p = " + std::to_string(p) + " fails the characteristic gate");
    }
  }
  std::vector<std::vector<WeilRow>> per_prime(primes.size());
  parallel_for(primes.size(), jobs, [&](std::size_t pi) {
    const auto p = primes[pi];
    const auto field = make_field(p);
    std::vector<std::uint32_t> orders;
    for (auto e : degrees) {
      orders.push_back(std::gcd(e, p - 1));
    }
    std::vector<std::uint32_t> idx(degrees.size(), 0);
    for (;;) {
      std::vector<ShiftedMonomialFactor> factors;
      for (std::size_t j = 0; j < degrees.size(); ++j) {
        factors.push_back({ degrees[j], 1, mult_char(field, orders[j], idx[j]) });
      }
      const auto s = char_sum(field, factors);
      const auto wb = weil_bound(field, factors);
      WeilRow row{ p, orders, idx, s.modulus, s.normalized, wb.constant, wb.all_trivial, true };
      row.pass = row.trivial || row.normalized <= row.bound + 1e-9;
      per_prime[pi].push_back(std::move(row));

      std::size_t j = idx.size();
      while (j-- > 0) {
        if (++idx[j] < orders[j]) {
          break;
        }
        idx[j] = 0;
      }
      if (j == static_cast<std::size_t>(-1)) {
        break;
      }
    }
  });

  WeilReport out;
  out.degrees.assign(degrees.begin(), degrees.end());
  for (auto& rows : per_prime) {
    for (auto& r : rows) {
      if (!r.trivial) {
        out.max_normalized = std::max(out.max_normalized, r.normalized);
      }
      out.all_pass = out.all_pass && r.pass;
      out.rows.push_back(std::move(r));
    }
  }
  return out;
}

struct NjReport
{
  std::uint32_t p = 0;
  unsigned j = 0;
  std::uint32_t order = 0;
  double max_error = 0.0;
  bool ok = true;
};

// |{y : y^{j+1} = s}| = sum_{i < d_j} chi_j^i(s) for all s, chi_j of order d_j = gcd(j+1, p-1).
inline NjReport
nj_orthogonality_check(const PrimeField& field, unsigned j)
{
  if (j < 1) {
    throw std::invalid_argument("nj_orthogonality_check: j must be >= 1");
  }
  const auto p = field.p();
  const std::uint32_t dj = std::gcd(j + 1, p - 1);
  const RootTable roots(field, j + 1);
  NjReport out{ p, j, dj, 0.0, true };
  for (Residue s = 0; s < p; ++s) {
    std::complex<double> sum = 0.0;
    for (std::uint32_t i = 0; i < dj; ++i) {
      sum += mult_char(field, dj, i)(s);
    }
    const double err = std::abs(sum - static_cast<double>(roots.count(s)));
    out.max_error = std::max(out.max_error, err);
  }
  out.ok = out.max_error <= 1e-6;
  return out;
}

// Partition of F_p^{k-1} (coordinates x_2..x_k) into vectors with some
// vanishing power sum x_2^{j+1} + ... + x_k^{j+1}, j = 1..n+1, and the rest.
struct BadSet
{
  std::uint32_t k = 0;
  std::uint32_t n = 0;
  std::uint32_t p = 0;
  // Row-major (k-1)-tuples, lexicographic.
  std::vector<Residue> bad;
  std::vector<Residue> good;

  std::size_t bad_size() const noexcept { return k > 1 ? bad.size() / (k - 1) : 0; }
  std::size_t good_size() const noexcept { return k > 1 ? good.size() / (k - 1) : 0; }
  double bound() const noexcept
  {
    return static_cast<double>((n + 1) * (n + 2)) * std::pow(static_cast<double>(p), static_cast<double>(k) - 2.0);
  }
  bool within_bound() const noexcept { return static_cast<double>(bad_size()) <= bound(); }
};

inline BadSet
bad_set(std::uint32_t k, std::uint32_t n, const PrimeField& field, std::uint64_t budget = 100'000'000ULL)
{
  if (k < 2) {
    throw std::invalid_argument("bad_set: k must be >= 2");
  }
  const auto p = field.p();
  const double size = std::pow(static_cast<double>(p), static_cast<double>(k - 1));
  if (size > static_cast<double>(budget)) {
    throw BudgetExceeded("bad_set: p^(k-1) exceeds the budget", size);
  }
  BadSet out{ k, n, p, {}, {} };
  std::vector<Residue> x(k - 1, 0);
  do {
    bool is_bad = false;
    for (std::uint32_t j = 1; j <= n + 1 && !is_bad; ++j) {
      std::uint64_t s = 0;
      for (auto xi : x) {
        s += field.pow(xi, j + 1);
      }
      is_bad = s % p == 0;
    }
    auto& dst = is_bad ? out.bad : out.good;
    dst.insert(dst.end(), x.begin(), x.end());
  } while ([&] {
    for (std::size_t i = x.size(); i-- > 0;) {
      if (++x[i] < p) {
        return true;
      }
      x[i] = 0;
    }
    return false;
  }());
  return out;
}

struct DecompositionReport
{
  std::uint32_t k = 0;
  std::uint32_t n = 0;
  std::uint32_t p = 0;
  std::uint64_t direct = 0;
  std::complex<double> expansion;
  double main_term = 0.0;
  double remainder = 0.0;
  bool agree = false;
  bool main_term_exact = false;
  double ratio_deviation = 0.0;
  std::size_t bad_size = 0;
  double bad_bound = 0.0;
  bool bad_within_bound = false;
  // Inner sums over x_1 for good (x_2..x_k) and nontrivial index tuples.
  std::uint64_t inner_checked = 0;
  std::uint64_t inner_weil = 0;
  std::uint64_t inner_violations = 0;
  double inner_max_normalized = 0.0;

  bool ok() const noexcept { return agree && main_term_exact && bad_within_bound && inner_violations == 0; }
};

// Evaluates sum over x in F_p^k of prod_{j=1}^{n+1} N_j(x) directly with root
// tables and through the full character expansion, tuple by tuple.
inline DecompositionReport
decomposition_check(std::uint32_t k, std::uint32_t n, const PrimeField& field, std::uint64_t budget = 100'000'000ULL)
{
  if (k < 2 || n < 1) {
    throw std::invalid_argument("decomposition_check: need k >= 2 and n >= 1");
  }
  const auto p = field.p();
  std::vector<std::uint32_t> orders;
  std::uint64_t tuples = 1;
  for (std::uint32_t j = 1; j <= n + 1; ++j) {
    orders.push_back(std::gcd(j + 1, p - 1));
    tuples *= orders.back();
  }
  const double pk = std::pow(static_cast<double>(p), static_cast<double>(k));
  if (pk * static_cast<double>(tuples) > static_cast<double>(budget)) {
    throw BudgetExceeded("decomposition_check: p^k times index tuples exceeds the budget",
                         pk * static_cast<double>(tuples));
  }

  // Power sums sigma_j(x) for all x in F_p^k, row j.
  const std::size_t cells = static_cast<std::size_t>(pk);
  std::vector<std::vector<Residue>> sigma(n + 1, std::vector<Residue>(cells));
  {
    std::vector<Residue> x(k, 0);
    for (std::size_t c = 0; c < cells; ++c) {
      for (std::uint32_t j = 0; j <= n; ++j) {
        std::uint64_t s = 0;
        for (auto xi : x) {
          s += field.pow(xi, j + 2);
        }
        sigma[j][c] = static_cast<Residue>(s % p);
      }
      for (std::size_t i = k; i-- > 0;) {
        if (++x[i] < p) {
          break;
        }
        x[i] = 0;
      }
    }
  }

  DecompositionReport out;
  out.k = k;
  out.n = n;
  out.p = p;

  std::vector<RootTable> roots;
  for (std::uint32_t j = 1; j <= n + 1; ++j) {
    roots.emplace_back(field, j + 1);
  }
  for (std::size_t c = 0; c < cells; ++c) {
    std::uint64_t prod = 1;
    for (std::uint32_t j = 0; j <= n; ++j) {
      prod *= roots[j].count(sigma[j][c]);
    }
    out.direct += prod;
  }

  CompensatedSum<std::complex<double>> expansion;
  std::vector<std::uint32_t> idx(n + 1, 0);
  for (;;) {
    std::vector<MultiplicativeCharacter> chars;
    for (std::uint32_t j = 0; j <= n; ++j) {
      chars.push_back(mult_char(field, orders[j], idx[j]));
    }
    detail::ExponentHistogram hist(field);
    for (std::size_t c = 0; c < cells; ++c) {
      std::uint64_t e = 0;
      bool vanishes = false;
      for (std::uint32_t j = 0; j <= n && !vanishes; ++j) {
        if (chars[j].is_trivial()) {
          continue;
        }
        if (sigma[j][c] == 0) {
          vanishes = true;
        } else {
          e += chars[j].exponent(sigma[j][c]);
        }
      }
      if (!vanishes) {
        hist.add(e);
      }
    }
    const auto term = hist.total();
    expansion.add(term);
    if (std::all_of(idx.begin(), idx.end(), [](auto i) { return i == 0; })) {
      out.main_term = term.real();
      out.main_term_exact = std::abs(term - pk) <= 1e-9 * pk;
    }
    std::size_t j = idx.size();
    while (j-- > 0) {
      if (++idx[j] < orders[j]) {
        break;
      }
      idx[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) {
      break;
    }
  }
  out.expansion = expansion.value();
  out.agree = std::abs(out.expansion - static_cast<double>(out.direct)) <= 1e-6 * pk;
  out.remainder = static_cast<double>(out.direct) - pk;
  out.ratio_deviation = std::abs(static_cast<double>(out.direct) / pk - 1.0);

  const auto bs = bad_set(k, n, field, budget);
  out.bad_size = bs.bad_size();
  out.bad_bound = bs.bound();
  out.bad_within_bound = bs.within_bound();

  // For good (x_2..x_k) every shift c_j = sigma_j(x_2..x_k) is nonzero, so the
  // x_1-sum is a shifted-monomial sum over t^{j+1} + c_j. Normalizing the shift
  // is unnecessary: the bound depends only on root structure.
  const std::size_t g = bs.good_size();
  if (static_cast<double>(g) * static_cast<double>(tuples) * p <= static_cast<double>(budget)) {
    for (std::size_t gi = 0; gi < g; ++gi) {
      std::vector<std::int64_t> shift(n + 1);
      for (std::uint32_t j = 0; j <= n; ++j) {
        std::uint64_t s = 0;
        for (std::uint32_t i = 0; i + 1 < k; ++i) {
          s += field.pow(bs.good[gi * (k - 1) + i], j + 2);
        }
        shift[j] = static_cast<std::int64_t>(s % p);
      }
      std::map<std::vector<bool>, WeilBound> bound_cache;
      std::fill(idx.begin(), idx.end(), 0);
      for (;;) {
        if (!std::all_of(idx.begin(), idx.end(), [](auto i) { return i == 0; })) {
          std::vector<ShiftedMonomialFactor> factors;
          std::vector<bool> mask;
          for (std::uint32_t j = 0; j <= n; ++j) {
            factors.push_back({ j + 2, shift[j], mult_char(field, orders[j], idx[j]) });
            mask.push_back(idx[j] != 0);
          }
          auto it = bound_cache.find(mask);
          if (it == bound_cache.end()) {
            it = bound_cache.emplace(mask, weil_bound(field, factors)).first;
          }
          const auto s = char_sum(field, factors);
          ++out.inner_checked;
          if (it->second.applicable) {
            ++out.inner_weil;
            out.inner_max_normalized = std::max(out.inner_max_normalized, s.normalized);
            if (s.normalized > it->second.constant + 1e-9) {
              ++out.inner_violations;
            }
          } else if (s.modulus > p + 1e-9) {
            ++out.inner_violations;
          }
        }
        std::size_t j = idx.size();
        while (j-- > 0) {
          if (++idx[j] < orders[j]) {
            break;
          }
          idx[j] = 0;
        }
        if (j == static_cast<std::size_t>(-1)) {
          break;
        }
      }
    }
  }
  return out;
}

} // namespace ffavg
