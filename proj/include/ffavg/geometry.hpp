#pragma once

#include "ffavg/common.hpp"
#include "ffavg/ffield.hpp"
#include "ffavg/variety.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffavg {

using MatrixFp = std::vector<std::vector<Residue>>;

// Rank over F_p by Gaussian elimination on a copy.
inline std::size_t
rank_mod_p(MatrixFp m, const PrimeField& field)
{
  if (m.empty()) {
    return 0;
  }
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) {
      ++pivot;
    }
    if (pivot == rows) {
      continue;
    }
    std::swap(m[rank], m[pivot]);
    const Residue inv = field.inv(m[rank][c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) {
        continue;
      }
      const Residue f = field.mul(m[r][c], inv);
      for (std::size_t j = c; j < cols; ++j) {
        m[r][j] = field.sub(m[r][j], field.mul(f, m[rank][j]));
      }
    }
    ++rank;
  }
  return rank;
}

// Returns k when sys is exactly the homogeneous system H_k in its dimension.
inline std::optional<std::uint32_t>
hk_shape(const DiagonalSystem& sys)
{
  const auto d = sys.d();
  const auto s = static_cast<std::uint32_t>(sys.s());
  if (s >= d || d - s < 2) {
    return std::nullopt;
  }
  const auto k = d - s;
  const auto ref = build_hk(d, k);
  if (ref.equations() != sys.equations()) {
    return std::nullopt;
  }
  return k;
}

struct JacobianAt
{
  std::vector<Residue> point;
  // [d h_j / d x_i], s x d.
  MatrixFp jacobian;
  // Row j of the jacobian divided by j + 1: [x_i^j || diag(-x_{k+j}^j)].
  MatrixFp reduced;
  std::size_t jacobian_rank = 0;
  std::size_t reduced_rank = 0;
};

inline JacobianAt
jacobian_at(const DiagonalSystem& sys, std::span<const Residue> x, const PrimeField& field)
{
  const auto k = hk_shape(sys);
  if (!k) {
    throw std::invalid_argument("jacobian_at: system is not of H_k shape");
  }
  if (x.size() != sys.d()) {
    throw std::invalid_argument("jacobian_at: point has the wrong dimension");
  }
  const auto d = sys.d();
  const auto s = sys.s();
  JacobianAt out;
  out.point.assign(x.begin(), x.end());
  out.jacobian.assign(s, std::vector<Residue>(d, 0));
  for (std::size_t j = 0; j < s; ++j) {
    for (const auto& t : sys.equations()[j].terms) {
      const Residue c = field.mul(field.reduce(t.coefficient), field.reduce(t.exponent));
      out.jacobian[j][t.var] = field.mul(c, field.pow(x[t.var], t.exponent - 1));
    }
  }
  out.reduced.assign(s, std::vector<Residue>(d, 0));
  for (std::uint32_t j = 1; j <= s; ++j) {
    for (std::uint32_t i = 0; i < *k; ++i) {
      out.reduced[j - 1][i] = field.pow(x[i], j);
    }
    out.reduced[j - 1][*k + j - 1] = field.neg(field.pow(x[*k + j - 1], j));
  }
  out.jacobian_rank = rank_mod_p(out.jacobian, field);
  out.reduced_rank = rank_mod_p(out.reduced, field);
  return out;
}

inline constexpr const char* smoothness_caveat =
  "only F_p-rational points were tested; singular points defined over extensions are not detected";

struct SmoothnessReport
{
  std::uint32_t d = 0;
  std::uint32_t k = 0;
  std::uint32_t p = 0;
  std::uint64_t scanned = 0;
  std::vector<std::vector<Residue>> singular;
  // Points where the full and reduced ranks differ (expected empty when p > d - k + 1).
  std::uint64_t rank_mismatches = 0;

  bool smooth() const noexcept { return singular.empty(); }
  std::string verdict() const { return smooth() ? "smooth over F_p" : "singular over F_p"; }
};

// Tests every nonzero F_p-point; singular means Jacobian rank < d - k.
inline SmoothnessReport
smoothness_scan(const DiagonalSystem& sys,
                const PrimeField& field,
                std::uint64_t budget = default_enumeration_budget,
                unsigned jobs = 1)
{
  const auto k = hk_shape(sys);
  if (!k) {
    throw std::invalid_argument("smoothness_scan: system is not of H_k shape");
  }
  const auto pts = enumerate(sys, field, budget);
  const auto need = sys.s();

  const std::size_t n = pts.size();
  const std::size_t chunk = std::max<std::size_t>(1, n / (8 * std::max(1u, jobs)));
  const std::size_t chunks = (n + chunk - 1) / chunk;
  std::vector<std::vector<std::size_t>> singular(chunks);
  std::vector<std::uint64_t> scanned(chunks, 0);
  std::vector<std::uint64_t> mismatches(chunks, 0);
  parallel_for(chunks, jobs, [&](std::size_t c) {
    for (std::size_t i = c * chunk; i < std::min(n, (c + 1) * chunk); ++i) {
      const auto x = pts.point(i);
      if (std::all_of(x.begin(), x.end(), [](Residue v) { return v == 0; })) {
        continue;
      }
      ++scanned[c];
      const auto jac = jacobian_at(sys, x, field);
      if (jac.jacobian_rank != jac.reduced_rank) {
        ++mismatches[c];
      }
      if (jac.jacobian_rank < need) {
        singular[c].push_back(i);
      }
    }
  });

  SmoothnessReport out{ sys.d(), *k, field.p(), 0, {}, 0 };
  for (std::size_t c = 0; c < chunks; ++c) {
    out.scanned += scanned[c];
    out.rank_mismatches += mismatches[c];
    for (auto i : singular[c]) {
      const auto x = pts.point(i);
      out.singular.emplace_back(x.begin(), x.end());
    }
  }
  return out;
}

struct WitnessReport
{
  std::uint32_t d = 0;
  std::uint32_t k = 0;
  std::uint32_t p = 0;
  bool found = false;
  std::vector<Residue> point;
  bool on_variety = false;
  std::size_t jacobian_rank = 0;
  std::size_t reduced_rank = 0;
  std::size_t required_rank = 0;
  // Equations y^{l+1} = c with no root in F_p, as "l:c".
  std::vector<std::string> missing_roots;

  bool verified() const noexcept { return found && on_variety && jacobian_rank < required_rank; }
};

// Builds the alternating-sign point whose reduced Jacobian has two equal rows
// (rows 2 and 4). Needs, for each odd l <= d - k, a root of y^{l+1} = c where
// c = k (k even) or k - 1 (k odd, with x_k = 0).
inline WitnessReport
singular_witness(std::uint32_t d, std::uint32_t k, const PrimeField& field)
{
  if (k < 2 || k + 4 > d) {
    throw std::invalid_argument("singular_witness: need k >= 2 and d - k >= 4");
  }
  const auto sys = build_hk(d, k);
  WitnessReport out;
  out.d = d;
  out.k = k;
  out.p = field.p();
  out.required_rank = d - k;

  std::vector<Residue> x(d, 0);
  const std::uint32_t signed_block = (k % 2 == 0) ? k : k - 1;
  for (std::uint32_t i = 0; i < signed_block; ++i) {
    x[i] = (i % 2 == 0) ? 1 : field.neg(1);
  }
  const Residue c = field.reduce(signed_block);
  for (std::uint32_t l = 1; l <= d - k; ++l) {
    if (l % 2 == 0) {
      continue;
    }
    const RootTable roots(field, l + 1);
    const auto r = roots.roots(c);
    if (r.empty()) {
      out.missing_roots.push_back(std::to_string(l) + ":" + std::to_string(c));
    } else {
      x[k + l - 1] = r.front();
    }
  }
  if (!out.missing_roots.empty()) {
    return out;
  }
  out.found = true;
  out.point = x;
  out.on_variety = SystemEvaluator(sys, field).satisfies(x);
  const auto jac = jacobian_at(sys, x, field);
  out.jacobian_rank = jac.jacobian_rank;
  out.reduced_rank = jac.reduced_rank;
  return out;
}

// First gate-passing prime in [lo, hi] at which the witness exists and verifies.
inline std::optional<WitnessReport>
witness_search(std::uint32_t d, std::uint32_t k, std::uint32_t lo = 5, std::uint32_t hi = 500)
{
  const auto sys = build_hk(d, k);
  for (auto p : primes_in_range(lo, hi)) {
    if (!char_large_enough(p, sys)) {
      continue;
    }
    auto r = singular_witness(d, k, make_field(p));
    if (r.verified()) {
      return r;
    }
  }
  return std::nullopt;
}

struct HyperplaneReport
{
  std::uint32_t d = 0;
  std::uint32_t p = 0;
  // Path (a): rank of the span of enumerated points, and its growth.
  std::size_t span_rank = 0;
  std::size_t points_used = 0;
  std::vector<std::size_t> rank_trace;
  // Path (b): the explicit d x d construction.
  bool matrix_built = false;
  std::string matrix_notice;
  MatrixFp matrix;
  bool matrix_rows_on_variety = false;
  std::size_t matrix_rank = 0;

  bool ok() const noexcept { return span_rank == d && (!matrix_built || (matrix_rank == d && matrix_rows_on_variety)); }
};

// (a) Adds points in order to an echelon basis until the span is all of F_p^d.
// (b) For H_k, rows e_i + (0,1,...,1) for i <= k and e_k + (1,..,beta_{k+j},..,1)
// with beta^{j+1} = 1, beta != 1; skipped when such beta is missing in F_p.
inline HyperplaneReport
hyperplane_test(const DiagonalSystem& sys, const PrimeField& field, std::uint64_t budget = default_enumeration_budget)
{
  const auto d = sys.d();
  HyperplaneReport out;
  out.d = d;
  out.p = field.p();

  const auto pts = enumerate(sys, field, budget);
  MatrixFp basis;
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < pts.size() && basis.size() < d; ++i) {
    const auto pt = pts.point(i);
    std::vector<Residue> v(pt.begin(), pt.end());
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Residue f = v[pivots[b]];
      if (f != 0) {
        for (std::uint32_t c = 0; c < d; ++c) {
          v[c] = field.sub(v[c], field.mul(f, basis[b][c]));
        }
      }
    }
    const auto nz = std::find_if(v.begin(), v.end(), [](Residue r) { return r != 0; });
    if (nz != v.end()) {
      const Residue inv = field.inv(*nz);
      for (auto& r : v) {
        r = field.mul(r, inv);
      }
      pivots.push_back(static_cast<std::size_t>(nz - v.begin()));
      basis.push_back(std::move(v));
      out.rank_trace.push_back(i + 1);
    }
    out.points_used = i + 1;
  }
  out.span_rank = basis.size();

  const auto k = hk_shape(sys);
  if (!k) {
    out.matrix_notice = "explicit construction applies to H_k systems only";
    return out;
  }
  std::vector<Residue> beta;
  for (std::uint32_t j = 1; j <= d - *k; ++j) {
    const RootTable roots(field, j + 1);
    const auto r = roots.roots(1);
    const auto it = std::find_if(r.begin(), r.end(), [](Residue y) { return y != 1; });
    if (it == r.end()) {
      out.matrix_notice = "no beta with beta^" + std::to_string(j + 1) + " = 1, beta != 1 in F_" +
                          std::to_string(field.p()) + "; needs p = 1 mod lcm(2..d-k+1)";
      return out;
    }
    beta.push_back(*it);
  }
  out.matrix.assign(d, std::vector<Residue>(d, 0));
  for (std::uint32_t i = 0; i < *k; ++i) {
    out.matrix[i][i] = 1;
    for (std::uint32_t c = *k; c < d; ++c) {
      out.matrix[i][c] = 1;
    }
  }
  for (std::uint32_t j = 0; j < d - *k; ++j) {
    auto& row = out.matrix[*k + j];
    row[*k - 1] = 1;
    for (std::uint32_t c = *k; c < d; ++c) {
      row[c] = (c - *k == j) ? beta[j] : 1;
    }
  }
  out.matrix_built = true;
  const SystemEvaluator ev(sys, field);
  out.matrix_rows_on_variety =
    std::all_of(out.matrix.begin(), out.matrix.end(), [&](const auto& row) { return ev.satisfies(row); });
  out.matrix_rank = rank_mod_p(out.matrix, field);
  return out;
}

struct LangWeilSample
{
  std::uint32_t p = 0;
  std::uint64_t count = 0;
  double ratio = 0.0;
  double deviation = 0.0;
  // deviation * sqrt(p)
  double scaled = 0.0;
};

struct LangWeilFit
{
  unsigned nu_hat = 0;
  std::uint32_t dimension = 0;
  std::vector<LangWeilSample> samples;
  double max_scaled = 0.0;
};

// nu_hat = median of round(|V| / p^{d-s}); deviations scaled by sqrt(p).
inline LangWeilFit
langweil_fit(const DiagonalSystem& sys,
             std::span<const std::uint32_t> primes,
             std::uint64_t budget = default_enumeration_budget)
{
  if (primes.size() < 3) {
    throw std::invalid_argument("langweil_fit: at least three primes are required");
  }
  LangWeilFit out;
  out.dimension = sys.expected_dimension();
  std::vector<long> rounded;
  for (auto p : primes) {
    const auto f = make_field(p);
    const auto n = cardinality(sys, f, budget);
    const double ratio = static_cast<double>(n) / std::pow(static_cast<double>(p), out.dimension);
    out.samples.push_back({ p, n, ratio, 0.0, 0.0 });
    rounded.push_back(std::lround(ratio));
  }
  std::sort(rounded.begin(), rounded.end());
  out.nu_hat = static_cast<unsigned>(rounded[(rounded.size() - 1) / 2]);
  for (auto& s : out.samples) {
    s.deviation = std::abs(s.ratio - out.nu_hat);
    s.scaled = s.deviation * std::sqrt(static_cast<double>(s.p));
    out.max_scaled = std::max(out.max_scaled, s.scaled);
  }
  return out;
}

} // namespace ffavg
