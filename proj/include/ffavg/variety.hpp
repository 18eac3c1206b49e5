#pragma once

#include "ffavg/common.hpp"
#include "ffavg/ffield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffavg {

inline constexpr std::uint64_t default_enumeration_budget = 100'000'000ULL;

// c * x_var^exponent. The coefficient is an integer reduced mod p on use, so a
// system can be built once and evaluated over many primes.
struct DiagonalTerm
{
  std::int64_t coefficient = 1;
  std::uint32_t var = 0;
  std::uint32_t exponent = 1;

  friend bool operator==(const DiagonalTerm&, const DiagonalTerm&) = default;
};

struct DiagonalEquation
{
  std::vector<DiagonalTerm> terms;

  bool homogeneous() const noexcept
  {
    return std::all_of(terms.begin(), terms.end(), [&](const DiagonalTerm& t) {
      return t.exponent == terms.front().exponent;
    });
  }

  bool mentions(std::uint32_t var) const noexcept
  {
    return std::any_of(terms.begin(), terms.end(), [var](const DiagonalTerm& t) { return t.var == var; });
  }

  friend bool operator==(const DiagonalEquation&, const DiagonalEquation&) = default;
};

// A system of s sparse diagonal equations in d variables, with an optional
// pivot assignment (equation j -> a variable occurring only in equation j).
class DiagonalSystem
{
public:
  DiagonalSystem(std::uint32_t d,
                 std::vector<DiagonalEquation> equations,
                 std::optional<std::vector<std::uint32_t>> pivots = std::nullopt,
                 std::string label = {})
    : d_(d)
    , equations_(std::move(equations))
    , pivots_(std::move(pivots))
    , label_(std::move(label))
  {
    validate();
  }

  std::uint32_t d() const noexcept { return d_; }
  std::size_t s() const noexcept { return equations_.size(); }
  const std::vector<DiagonalEquation>& equations() const noexcept { return equations_; }
  const std::optional<std::vector<std::uint32_t>>& pivots() const noexcept { return pivots_; }
  const std::string& label() const noexcept { return label_; }

  bool homogeneous() const noexcept
  {
    return std::all_of(equations_.begin(), equations_.end(), [](const auto& e) { return e.homogeneous(); });
  }

  // Distinct exponents, ascending.
  std::vector<unsigned> exponents() const
  {
    std::set<unsigned> e;
    for (const auto& eq : equations_) {
      for (const auto& t : eq.terms) {
        e.insert(t.exponent);
      }
    }
    return { e.begin(), e.end() };
  }

  // Expected dimension d - s of the zero set.
  std::uint32_t expected_dimension() const noexcept { return d_ - static_cast<std::uint32_t>(s()); }

  friend bool operator==(const DiagonalSystem& a, const DiagonalSystem& b)
  {
    return a.d_ == b.d_ && a.equations_ == b.equations_ && a.pivots_ == b.pivots_;
  }

private:
  void validate() const
  {
    if (equations_.empty()) {
      throw std::invalid_argument("DiagonalSystem: at least one equation is required");
    }
    if (equations_.size() >= d_) {
      throw std::invalid_argument("DiagonalSystem: need 1 <= s <= d - 1");
    }
    for (const auto& eq : equations_) {
      if (eq.terms.empty()) {
        throw std::invalid_argument("DiagonalSystem: empty equation");
      }
      std::set<std::uint32_t> vars;
      for (const auto& t : eq.terms) {
        if (t.var >= d_) {
          throw std::invalid_argument("DiagonalSystem: variable index out of range");
        }
        if (t.exponent < 1) {
          throw std::invalid_argument("DiagonalSystem: exponents must be >= 1");
        }
        if (t.coefficient == 0) {
          throw std::invalid_argument("DiagonalSystem: zero coefficient");
        }
        if (!vars.insert(t.var).second) {
          throw std::invalid_argument("DiagonalSystem: variable repeated within an equation");
        }
      }
    }
    if (pivots_) {
      if (pivots_->size() != equations_.size()) {
        throw std::invalid_argument("DiagonalSystem: one pivot per equation is required");
      }
      for (std::size_t j = 0; j < equations_.size(); ++j) {
        const auto v = (*pivots_)[j];
        if (v >= d_ || !equations_[j].mentions(v)) {
          throw std::invalid_argument("DiagonalSystem: pivot must occur in its own equation");
        }
        for (std::size_t i = 0; i < equations_.size(); ++i) {
          if (i != j && equations_[i].mentions(v)) {
            throw std::invalid_argument("DiagonalSystem: pivot variable occurs in another equation");
          }
        }
      }
    }
  }

  std::uint32_t d_;
  std::vector<DiagonalEquation> equations_;
  std::optional<std::vector<std::uint32_t>> pivots_;
  std::string label_;
};

// Pivots chosen as, for each equation, its highest-index variable occurring in
// no other equation; std::nullopt if some equation has none.
inline std::optional<std::vector<std::uint32_t>>
infer_pivots(std::uint32_t d, const std::vector<DiagonalEquation>& equations)
{
  std::vector<std::uint32_t> uses(d, 0);
  for (const auto& eq : equations) {
    for (const auto& t : eq.terms) {
      if (t.var < d) {
        ++uses[t.var];
      }
    }
  }
  std::vector<std::uint32_t> pivots;
  for (const auto& eq : equations) {
    std::optional<std::uint32_t> best;
    for (const auto& t : eq.terms) {
      if (t.var < d && uses[t.var] == 1 && (!best || t.var > *best)) {
        best = t.var;
      }
    }
    if (!best) {
      return std::nullopt;
    }
    pivots.push_back(*best);
  }
  return pivots;
}

// h_j = x_1^{j+1} + ... + x_k^{j+1} - x_{k+j}^{j+1}, j = 1..d-k.
inline DiagonalSystem
build_hk(std::uint32_t d, std::uint32_t k)
{
  if (k < 2 || k + 1 > d) {
    throw std::invalid_argument("build_hk: need 2 <= k <= d - 1");
  }
  std::vector<DiagonalEquation> eqs;
  std::vector<std::uint32_t> pivots;
  for (std::uint32_t j = 1; j <= d - k; ++j) {
    DiagonalEquation eq;
    for (std::uint32_t i = 0; i < k; ++i) {
      eq.terms.push_back({ 1, i, j + 1 });
    }
    eq.terms.push_back({ -1, k + j - 1, j + 1 });
    eqs.push_back(std::move(eq));
    pivots.push_back(k + j - 1);
  }
  return { d, std::move(eqs), std::move(pivots), "H_" + std::to_string(k) + "(d=" + std::to_string(d) + ")" };
}

// g_j = x_1^{j+1} + ... + x_k^{j+1} - x_{k+j}, j = 1..d-k.
inline DiagonalSystem
build_vk(std::uint32_t d, std::uint32_t k)
{
  if (k < 1 || k + 1 > d) {
    throw std::invalid_argument("build_vk: need 1 <= k <= d - 1");
  }
  std::vector<DiagonalEquation> eqs;
  std::vector<std::uint32_t> pivots;
  for (std::uint32_t j = 1; j <= d - k; ++j) {
    DiagonalEquation eq;
    for (std::uint32_t i = 0; i < k; ++i) {
      eq.terms.push_back({ 1, i, j + 1 });
    }
    eq.terms.push_back({ -1, k + j - 1, 1 });
    eqs.push_back(std::move(eq));
    pivots.push_back(k + j - 1);
  }
  return { d, std::move(eqs), std::move(pivots), "V_" + std::to_string(k) + "(d=" + std::to_string(d) + ")" };
}

inline bool
char_large_enough(std::uint32_t p, const DiagonalSystem& sys)
{
  const auto e = sys.exponents();
  return char_large_enough(p, std::span<const unsigned>(e));
}

// Sorted, duplicate-free F_p-points of a variety, stored row-major.
class VarietyPoints
{
public:
  VarietyPoints(std::uint32_t p, std::uint32_t d, std::vector<Residue> coords)
    : p_(p)
    , d_(d)
    , coords_(std::move(coords))
  {
    if (d_ == 0 || coords_.size() % d_ != 0) {
      throw std::invalid_argument("VarietyPoints: coordinate buffer does not match the dimension");
    }
    canonicalize();
  }

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t d() const noexcept { return d_; }
  std::size_t size() const noexcept { return coords_.size() / d_; }
  bool empty() const noexcept { return coords_.empty(); }
  const std::vector<Residue>& coords() const noexcept { return coords_; }

  std::span<const Residue> point(std::size_t i) const noexcept { return { coords_.data() + i * d_, d_ }; }

  bool contains(std::span<const Residue> x) const
  {
    std::size_t lo = 0;
    std::size_t hi = size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      const auto pt = point(mid);
      if (std::lexicographical_compare(pt.begin(), pt.end(), x.begin(), x.end())) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo < size() && std::equal(x.begin(), x.end(), point(lo).begin());
  }

  // Mixed-radix index sum_i x_i p^{d-1-i}; lexicographic order equals index order.
  std::uint64_t index_of(std::size_t i) const noexcept
  {
    std::uint64_t idx = 0;
    for (auto v : point(i)) {
      idx = idx * p_ + v;
    }
    return idx;
  }

  friend bool operator==(const VarietyPoints& a, const VarietyPoints& b) noexcept
  {
    return a.p_ == b.p_ && a.d_ == b.d_ && a.coords_ == b.coords_;
  }

private:
  void canonicalize()
  {
    const std::size_t n = size();
    auto less = [this](std::size_t a, std::size_t b) {
      const auto pa = point(a);
      const auto pb = point(b);
      return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    };
    bool sorted_unique = true;
    for (std::size_t i = 1; i < n && sorted_unique; ++i) {
      sorted_unique = less(i - 1, i);
    }
    if (sorted_unique) {
      return;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), less);
    std::vector<Residue> out;
    out.reserve(coords_.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0) {
        const auto prev = point(order[k - 1]);
        const auto cur = point(order[k]);
        if (std::equal(prev.begin(), prev.end(), cur.begin())) {
          continue;
        }
      }
      const auto pt = point(order[k]);
      out.insert(out.end(), pt.begin(), pt.end());
    }
    coords_ = std::move(out);
  }

  std::uint32_t p_;
  std::uint32_t d_;
  std::vector<Residue> coords_;
};

// Evaluates a system at points of F_p^d through per-exponent power tables.
class SystemEvaluator
{
public:
  SystemEvaluator(const DiagonalSystem& sys, const PrimeField& field)
    : field_(field)
    , sys_(sys)
  {
    for (const auto e : sys.exponents()) {
      auto& table = powers_[e];
      table.resize(field.p());
      for (Residue x = 0; x < field.p(); ++x) {
        table[x] = field.pow(x, e);
      }
    }
    for (const auto& eq : sys.equations()) {
      std::vector<Compiled> row;
      for (const auto& t : eq.terms) {
        row.push_back({ field.reduce(t.coefficient), t.var, &powers_.at(t.exponent) });
      }
      compiled_.push_back(std::move(row));
    }
  }

  Residue eval(std::size_t eq, std::span<const Residue> x) const noexcept
  {
    std::uint64_t acc = 0;
    for (const auto& t : compiled_[eq]) {
      acc += static_cast<std::uint64_t>(t.coeff) * (*t.powers)[x[t.var]] % field_.p();
    }
    return static_cast<Residue>(acc % field_.p());
  }

  bool satisfies(std::span<const Residue> x) const noexcept
  {
    for (std::size_t j = 0; j < compiled_.size(); ++j) {
      if (eval(j, x) != 0) {
        return false;
      }
    }
    return true;
  }

  const PrimeField& field() const noexcept { return field_; }
  const DiagonalSystem& system() const noexcept { return sys_; }

private:
  struct Compiled
  {
    Residue coeff;
    std::uint32_t var;
    const std::vector<Residue>* powers;
  };

  PrimeField field_;
  DiagonalSystem sys_;
  std::map<unsigned, std::vector<Residue>> powers_;
  std::vector<std::vector<Compiled>> compiled_;
};

namespace detail {

// Advances x (digits in 0..p-1) as an odometer, last digit fastest; false on wrap.
inline bool
odometer_next(std::span<Residue> x, std::uint32_t p) noexcept
{
  for (std::size_t i = x.size(); i-- > 0;) {
    if (++x[i] < p) {
      return true;
    }
    x[i] = 0;
  }
  return false;
}

inline double
cells(std::uint32_t p, std::uint32_t d)
{
  return std::pow(static_cast<double>(p), static_cast<double>(d));
}

} // namespace detail

// Oracle: tests every x in F_p^d.
inline VarietyPoints
enumerate_bruteforce(const DiagonalSystem& sys,
                     const PrimeField& field,
                     std::uint64_t budget = default_enumeration_budget)
{
  const auto p = field.p();
  const double size = detail::cells(p, sys.d());
  if (size > static_cast<double>(budget)) {
    throw BudgetExceeded("enumerate_bruteforce: p^d exceeds the evaluation budget", size);
  }
  const SystemEvaluator ev(sys, field);
  std::vector<Residue> x(sys.d(), 0);
  std::vector<Residue> out;
  do {
    if (ev.satisfies(x)) {
      out.insert(out.end(), x.begin(), x.end());
    }
  } while (detail::odometer_next(x, p));
  return { p, sys.d(), std::move(out) };
}

// Iterates the free block and solves each pivot x_v^e = rhs with a root table.
inline VarietyPoints
enumerate_structured(const DiagonalSystem& sys,
                     const PrimeField& field,
                     std::uint64_t budget = default_enumeration_budget)
{
  if (!sys.pivots()) {
    throw std::invalid_argument("enumerate_structured: system has no pivot assignment");
  }
  const auto p = field.p();
  const auto& pivots = *sys.pivots();
  const auto d = sys.d();

  std::vector<bool> is_pivot(d, false);
  for (auto v : pivots) {
    is_pivot[v] = true;
  }
  std::vector<std::uint32_t> free_vars;
  for (std::uint32_t v = 0; v < d; ++v) {
    if (!is_pivot[v]) {
      free_vars.push_back(v);
    }
  }

  const double free_size = detail::cells(p, static_cast<std::uint32_t>(free_vars.size()));
  if (free_size > static_cast<double>(budget)) {
    throw BudgetExceeded("enumerate_structured: free block exceeds the evaluation budget", free_size);
  }

  // Per equation: the pivot term (coefficient inverse, root table) and the rest.
  struct PivotSolve
  {
    std::uint32_t var;
    Residue neg_inv_coeff;
    const RootTable* roots;
    std::vector<DiagonalTerm> rest;
  };
  std::map<unsigned, RootTable> tables;
  std::vector<PivotSolve> solves;
  for (std::size_t j = 0; j < sys.s(); ++j) {
    PivotSolve ps{ pivots[j], 0, nullptr, {} };
    for (const auto& t : sys.equations()[j].terms) {
      if (t.var == pivots[j]) {
        const Residue c = field.reduce(t.coefficient);
        if (c == 0) {
          throw std::invalid_argument("enumerate_structured: pivot coefficient vanishes mod p");
        }
        ps.neg_inv_coeff = field.neg(field.inv(c));
        auto it = tables.find(t.exponent);
        if (it == tables.end()) {
          it = tables.emplace(t.exponent, RootTable(field, t.exponent)).first;
        }
        ps.roots = &it->second;
      } else {
        ps.rest.push_back(t);
      }
    }
    solves.push_back(std::move(ps));
  }

  std::vector<Residue> x(d, 0);
  std::vector<Residue> free_digits(free_vars.size(), 0);
  std::vector<std::span<const Residue>> choices(solves.size());
  std::vector<std::size_t> pick(solves.size(), 0);
  std::vector<Residue> out;

  do {
    for (std::size_t i = 0; i < free_vars.size(); ++i) {
      x[free_vars[i]] = free_digits[i];
    }
    bool any_empty = false;
    for (std::size_t j = 0; j < solves.size(); ++j) {
      std::uint64_t acc = 0;
      for (const auto& t : solves[j].rest) {
        acc += static_cast<std::uint64_t>(field.reduce(t.coefficient)) * field.pow(x[t.var], t.exponent) % p;
      }
      const Residue rhs = field.mul(static_cast<Residue>(acc % p), solves[j].neg_inv_coeff);
      choices[j] = solves[j].roots->roots(rhs);
      if (choices[j].empty()) {
        any_empty = true;
        break;
      }
    }
    if (any_empty) {
      continue;
    }
    std::fill(pick.begin(), pick.end(), 0);
    for (;;) {
      for (std::size_t j = 0; j < solves.size(); ++j) {
        x[solves[j].var] = choices[j][pick[j]];
      }
      out.insert(out.end(), x.begin(), x.end());
      std::size_t j = solves.size();
      while (j-- > 0) {
        if (++pick[j] < choices[j].size()) {
          break;
        }
        pick[j] = 0;
      }
      if (j == static_cast<std::size_t>(-1)) {
        break;
      }
    }
  } while (detail::odometer_next(free_digits, p));

  return { p, d, std::move(out) };
}

// Structured when a pivot assignment exists, otherwise brute force.
inline VarietyPoints
enumerate(const DiagonalSystem& sys, const PrimeField& field, std::uint64_t budget = default_enumeration_budget)
{
  return sys.pivots() ? enumerate_structured(sys, field, budget) : enumerate_bruteforce(sys, field, budget);
}

inline std::uint64_t
cardinality(const DiagonalSystem& sys, const PrimeField& field, std::uint64_t budget = default_enumeration_budget)
{
  return enumerate(sys, field, budget).size();
}

// |V| / p^e.
inline double
cardinality_ratio(const DiagonalSystem& sys,
                  const PrimeField& field,
                  std::uint32_t expected_dim,
                  std::uint64_t budget = default_enumeration_budget)
{
  return static_cast<double>(cardinality(sys, field, budget)) / detail::cells(field.p(), expected_dim);
}

// Raw N(k, n) = sum over x in F_p^k of prod_{j=1}^{n+1} N_j(x), where
// N_j(x) = #{y : y^{j+1} = x_1^{j+1} + ... + x_k^{j+1}}.
struct NknCount
{
  std::uint32_t k = 0;
  std::uint32_t n = 0;
  std::uint32_t p = 0;
  std::uint64_t via_roots = 0;
  std::optional<std::uint64_t> via_enumeration;

  bool agree() const noexcept { return !via_enumeration || *via_enumeration == via_roots; }
  double ratio() const noexcept { return static_cast<double>(via_roots) / detail::cells(p, k); }
};

inline NknCount
count_Nkn(std::uint32_t k, std::uint32_t n, const PrimeField& field, std::uint64_t budget = default_enumeration_budget)
{
  if (k < 2 || n < 1) {
    throw std::invalid_argument("count_Nkn: need k >= 2 and n >= 1");
  }
  const auto p = field.p();
  if (detail::cells(p, k) > static_cast<double>(budget)) {
    throw BudgetExceeded("count_Nkn: p^k exceeds the evaluation budget", detail::cells(p, k));
  }

  std::vector<RootTable> tables;
  std::vector<std::vector<Residue>> powers;
  for (std::uint32_t j = 1; j <= n + 1; ++j) {
    tables.emplace_back(field, j + 1);
    auto& pw = powers.emplace_back(p);
    for (Residue x = 0; x < p; ++x) {
      pw[x] = field.pow(x, j + 1);
    }
  }

  NknCount out{ k, n, p, 0, std::nullopt };
  std::vector<Residue> x(k, 0);
  do {
    std::uint64_t prod = 1;
    for (std::uint32_t j = 0; j <= n && prod != 0; ++j) {
      std::uint64_t s = 0;
      for (auto xi : x) {
        s += powers[j][xi];
      }
      prod *= tables[j].count(static_cast<Residue>(s % p));
    }
    out.via_roots += prod;
  } while (detail::odometer_next(x, p));

  if (detail::cells(p, k + n + 1) <= static_cast<double>(budget)) {
    out.via_enumeration = enumerate_bruteforce(build_hk(k + n + 1, k), field, budget).size();
  }
  return out;
}

using Direction = std::vector<Residue>;

// Projective points [v] of P^{d-1}(F_p) whose line lies in the (homogeneous)
// variety, as representatives with leading nonzero coordinate 1, sorted.
inline std::vector<Direction>
lines_through_origin(const DiagonalSystem& sys,
                     const PrimeField& field,
                     std::uint64_t budget = default_enumeration_budget)
{
  if (!sys.homogeneous()) {
    throw std::invalid_argument("lines_through_origin: system is not homogeneous");
  }
  const auto p = field.p();
  const auto d = sys.d();
  const double size = detail::cells(p, d) / (p - 1);
  if (size > static_cast<double>(budget)) {
    throw BudgetExceeded("lines_through_origin: direction count exceeds the budget", size);
  }
  const SystemEvaluator ev(sys, field);
  std::vector<Direction> out;
  for (std::uint32_t lead = d; lead-- > 0;) {
    Direction v(d, 0);
    v[lead] = 1;
    std::span<Residue> tail(v.data() + lead + 1, d - lead - 1);
    do {
      if (ev.satisfies(v)) {
        out.push_back(v);
      }
    } while (detail::odometer_next(tail, p));
  }
  return out;
}

// Scales v so its first nonzero coordinate is 1.
inline Direction
normalize_direction(Direction v, const PrimeField& field)
{
  for (auto c : v) {
    if (c != 0) {
      const Residue s = field.inv(c);
      for (auto& x : v) {
        x = field.mul(x, s);
      }
      return v;
    }
  }
  return v;
}

struct SubspaceSearchResult
{
  std::uint32_t alpha = 0;
  // Each basis is in reduced row-echelon form.
  std::vector<std::vector<Direction>> bases;
  bool truncated = false;
  std::uint64_t examined = 0;
};

namespace detail {

inline std::vector<Direction>
rref_pair(Direction a, Direction b, const PrimeField& field)
{
  const auto d = a.size();
  std::size_t pa = 0;
  while (pa < d && a[pa] == 0) {
    ++pa;
  }
  // eliminate a's pivot from b
  if (b[pa] != 0) {
    const Residue f = b[pa];
    for (std::size_t i = 0; i < d; ++i) {
      b[i] = field.sub(b[i], field.mul(f, a[i]));
    }
  }
  b = normalize_direction(std::move(b), field);
  std::size_t pb = 0;
  while (pb < d && b[pb] == 0) {
    ++pb;
  }
  if (a[pb] != 0) {
    const Residue f = a[pb];
    for (std::size_t i = 0; i < d; ++i) {
      a[i] = field.sub(a[i], field.mul(f, b[i]));
    }
  }
  if (pb < pa) {
    std::swap(a, b);
  }
  return { a, b };
}

} // namespace detail

// alpha-dimensional subspaces contained in a homogeneous variety (alpha in {1,2}).
// The search is exhaustive over pairs of contained lines; `budget` caps the
// number of pair examinations, after which the result is flagged truncated.
inline SubspaceSearchResult
subspace_search(const DiagonalSystem& sys,
                const PrimeField& field,
                std::uint32_t alpha,
                std::uint64_t budget = default_enumeration_budget)
{
  if (alpha < 1 || alpha > 2) {
    throw std::invalid_argument("subspace_search: alpha must be 1 or 2");
  }
  const auto lines = lines_through_origin(sys, field);
  SubspaceSearchResult out;
  out.alpha = alpha;
  if (alpha == 1) {
    for (const auto& v : lines) {
      out.bases.push_back({ v });
    }
    out.examined = lines.size();
    return out;
  }

  std::set<std::vector<Direction>> found;
  const auto p = field.p();
  const auto d = sys.d();
  for (std::size_t i = 0; i < lines.size() && !out.truncated; ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (out.examined >= budget) {
        out.truncated = true;
        break;
      }
      ++out.examined;
      auto basis = detail::rref_pair(lines[i], lines[j], field);
      if (found.count(basis)) {
        continue;
      }
      bool inside = true;
      Direction w(d);
      for (Residue lambda = 1; lambda < p && inside; ++lambda) {
        for (std::uint32_t c = 0; c < d; ++c) {
          w[c] = field.add(lines[i][c], field.mul(lambda, lines[j][c]));
        }
        inside = std::binary_search(lines.begin(), lines.end(), normalize_direction(w, field));
      }
      if (inside) {
        found.insert(std::move(basis));
      }
    }
  }
  out.bases.assign(found.begin(), found.end());
  return out;
}

} // namespace ffavg
