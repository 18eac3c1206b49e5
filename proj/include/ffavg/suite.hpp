#pragma once

#include "ffavg/averaging.hpp"
#include "ffavg/charsum.hpp"
#include "ffavg/exponents.hpp"
#include "ffavg/fourier.hpp"
#include "ffavg/geometry.hpp"
#include "ffavg/poly.hpp"
#include "ffavg/serialize.hpp"
#include "ffavg/variety.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

// Named verification suites: each check recomputes its quantities from scratch
// and judges them against fixed tolerances. Output is a pure function of the
// suite name and seed (no timings, no thread-count dependence).
namespace ffavg {

struct SuiteConfig
{
  std::string name = "full"; // "full" or "quick"
  std::uint64_t seed = 1;
  unsigned jobs = 1;

  bool quick() const noexcept { return name == "quick"; }
};

struct CheckResult
{
  int id = 0;
  std::string title;
  bool pass = false;
  std::string summary;
  Json details;
};

namespace suite_detail {

inline std::string
fmt(double v, int precision = 4)
{
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

inline std::vector<std::uint32_t>
gated(std::vector<std::uint32_t> primes, const DiagonalSystem& sys)
{
  std::erase_if(primes, [&](std::uint32_t p) { return !char_large_enough(p, sys); });
  return primes;
}

struct DecayConfig
{
  DiagonalSystem sys;
  std::uint32_t d;
  std::uint32_t k;
  std::vector<std::uint32_t> primes;
};

// Per-config decay: p * max |coef| against `bound` and theta_hat against [lo, hi].
inline Json
decay_block(const DecayConfig& c, double bound, double lo, double hi, unsigned jobs, bool& pass)
{
  const auto fit = fit_decay(c.sys, c.primes, 5 * default_dft_budget, jobs);
  double worst = 0.0;
  std::vector<std::uint32_t> over;
  for (const auto& s : fit.samples) {
    worst = std::max(worst, s.p * s.max);
    if (s.p * s.max > bound + 1e-9) {
      over.push_back(s.p);
    }
  }
  const bool theta_ok = fit.theta_hat >= lo && fit.theta_hat <= hi;
  pass = pass && over.empty() && theta_ok;
  Json j = to_json(fit);
  return { { "variety", c.sys.label() },
           { "d", c.d },
           { "k", c.k },
           { "codimension", c.sys.s() },
           { "dimension", c.d - c.sys.s() },
           { "max_p_times_max", worst },
           { "primes_over_bound", over },
           { "theta_hat", fit.theta_hat },
           { "theta_ok", theta_ok },
           { "points", j["points"] } };
}

} // namespace suite_detail

// |H_2 in F_p^3| = p^2 exactly, brute force first; Lang-Weil deviation for the d = 4 cones.
inline CheckResult
check_cardinality(const SuiteConfig& cfg)
{
  using namespace suite_detail;
  CheckResult r{ 1, "cardinality", false, {}, {} };
  const auto primes = cfg.quick() ? primes_in_range(5, 23) : primes_in_range(5, 101);
  bool pass = true;

  const auto cone3 = build_hk(3, 2);
  std::vector<std::uint32_t> exact_fail;
  for (auto p : gated(primes, cone3)) {
    const auto f = make_field(p);
    const auto brute = enumerate_bruteforce(cone3, f);
    const auto fast = enumerate_structured(cone3, f);
    if (brute.size() != std::uint64_t{ p } * p || !(brute == fast)) {
      exact_fail.push_back(p);
    }
  }
  pass = pass && exact_fail.empty();
  r.details["exact_p_squared"] = { { "variety", cone3.label() }, { "primes", primes.size() }, { "failures", exact_fail } };

  Json deviations = Json::array();
  std::string worst_text;
  for (auto k : { 2u, 3u }) {
    const auto sys = build_hk(4, k);
    double worst = 0.0;
    std::vector<std::uint32_t> over;
    Json samples = Json::array();
    for (auto p : gated(primes, sys)) {
      const auto n = cardinality(sys, make_field(p));
      const double scaled = std::abs(static_cast<double>(n) / std::pow(p, k) - 1.0) * std::sqrt(p);
      worst = std::max(worst, scaled);
      if (scaled > 3.0) {
        over.push_back(p);
      }
      samples.push_back({ { "p", p }, { "count", n }, { "scaled_deviation", scaled } });
    }
    pass = pass && over.empty();
    deviations.push_back({ { "variety", sys.label() },
                           { "bound", 3.0 },
                           { "max_scaled_deviation", worst },
                           { "primes_over_bound", over },
                           { "samples", samples } });
    worst_text += " H_" + std::to_string(k) + "(d=4) max dev*sqrt(p)=" + fmt(worst);
    if (!over.empty()) {
      worst_text += " over 3 at p=" + join(over, ',');
    }
  }
  r.details["lang_weil"] = deviations;
  r.pass = pass;
  r.summary = "|H_2(F_p^3)|=p^2 failures=" + std::to_string(exact_fail.size()) + ";" + worst_text;
  return r;
}

// Structured enumeration equals brute force as point sets.
inline CheckResult
check_oracle_equivalence(const SuiteConfig& cfg)
{
  CheckResult r{ 2, "oracle equivalence", false, {}, {} };
  struct Config
  {
    DiagonalSystem sys;
    std::uint32_t p;
  };
  std::vector<Config> configs;
  auto add = [&](const DiagonalSystem& sys, std::initializer_list<std::uint32_t> ps) {
    for (auto p : ps) {
      if (ipow(p, sys.d()) <= 1'000'000ULL && char_large_enough(p, sys)) {
        configs.push_back({ sys, p });
      }
    }
  };
  if (cfg.quick()) {
    add(build_hk(3, 2), { 5, 7, 11 });
    add(build_vk(3, 2), { 5, 7 });
    add(build_hk(4, 2), { 5, 7 });
    add(build_hk(4, 3), { 5, 7 });
    add(build_vk(4, 2), { 5 });
    add(build_hk(5, 3), { 5 });
    add(build_hk(5, 4), { 5 });
  } else {
    add(build_hk(3, 2), { 5, 7, 11, 13, 31, 101 });
    add(build_vk(3, 1), { 7, 13 });
    add(build_vk(3, 2), { 5, 11, 53 });
    add(build_hk(4, 2), { 5, 11, 31 });
    add(build_hk(4, 3), { 7, 13, 31 });
    add(build_vk(4, 2), { 7, 17 });
    add(build_vk(4, 3), { 5, 13 });
    add(build_hk(5, 2), { 5, 7, 13 });
    add(build_hk(5, 3), { 11, 13 });
    add(build_hk(5, 4), { 7, 13 });
    add(build_vk(5, 2), { 7, 11 });
    add(build_hk(6, 2), { 7 });
    add(build_hk(6, 3), { 7 });
    add(build_hk(6, 5), { 7 });
  }
  Json rows = Json::array();
  std::size_t mismatches = 0;
  std::vector<char> same(configs.size(), 0);
  std::vector<std::size_t> sizes(configs.size(), 0);
  parallel_for(configs.size(), cfg.jobs, [&](std::size_t i) {
    const auto f = make_field(configs[i].p);
    const auto brute = enumerate_bruteforce(configs[i].sys, f);
    same[i] = brute == enumerate_structured(configs[i].sys, f);
    sizes[i] = brute.size();
  });
  for (std::size_t i = 0; i < configs.size(); ++i) {
    mismatches += same[i] ? 0 : 1;
    rows.push_back({ { "variety", configs[i].sys.label() },
                     { "p", configs[i].p },
                     { "points", sizes[i] },
                     { "equal", static_cast<bool>(same[i]) } });
  }
  r.pass = mismatches == 0 && configs.size() >= 12;
  r.summary = std::to_string(configs.size()) + " configurations, " + std::to_string(mismatches) + " mismatches";
  r.details = { { "configurations", rows } };
  return r;
}

// Decay p^{-1} for surfaces: p * max <= 4 and theta_hat in [1.7, 2.3].
inline CheckResult
check_decay_surfaces(const SuiteConfig& cfg)
{
  using namespace suite_detail;
  CheckResult r{ 3, "fourier decay, surfaces", false, {}, {} };
  const bool q = cfg.quick();
  const std::vector<DecayConfig> configs{
    { build_hk(3, 2), 3, 2, primes_in_range(5, q ? 31 : 101) },
    { build_hk(4, 2), 4, 2, primes_in_range(5, q ? 23 : 47) },
    { build_hk(5, 3), 5, 3, primes_in_range(5, q ? 11 : 23) },
  };
  bool pass = true;
  Json blocks = Json::array();
  for (const auto& c : configs) {
    blocks.push_back(decay_block(c, 4.0, 1.7, 2.3, cfg.jobs, pass));
    const auto& b = blocks.back();
    r.summary += (r.summary.empty() ? "" : "; ") + c.sys.label() + " p*max<=" +
                 fmt(b["max_p_times_max"].get<double>()) + " theta=" + fmt(b["theta_hat"].get<double>());
  }
  r.pass = pass;
  r.details = { { "bound", 4.0 }, { "theta_range", { 1.7, 2.3 } }, { "configurations", blocks } };
  return r;
}

// Smooth threefold cone in F_p^4: p * max <= 1 (pinned) and theta_hat in [1.7, 2.3].
inline CheckResult
check_decay_smooth(const SuiteConfig& cfg)
{
  using namespace suite_detail;
  CheckResult r{ 4, "fourier decay, smooth case", false, {}, {} };
  constexpr double pinned = 1.0;
  const DecayConfig c{ build_hk(4, 3), 4, 3, primes_in_range(5, cfg.quick() ? 23 : 47) };
  bool pass = true;
  const auto b = decay_block(c, pinned, 1.7, 2.3, cfg.jobs, pass);
  r.pass = pass;
  r.summary = c.sys.label() + " p*max<=" + fmt(b["max_p_times_max"].get<double>()) + " (C=1) theta=" +
              fmt(b["theta_hat"].get<double>());
  r.details = { { "pinned_constant", pinned }, { "theta_range", { 1.7, 2.3 } }, { "configuration", b } };
  return r;
}

// No singular nonzero F_p-points for d - k <= 3; an explicit singular point for (6, 2).
inline CheckResult
check_smoothness(const SuiteConfig& cfg)
{
  CheckResult r{ 5, "smoothness dichotomy", false, {}, {} };
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> dk{ { 3, 2 }, { 4, 2 }, { 5, 2 },
                                                                 { 4, 3 }, { 5, 3 }, { 5, 4 } };
  const std::vector<std::uint32_t> primes = cfg.quick() ? std::vector<std::uint32_t>{ 11 }
                                                        : std::vector<std::uint32_t>{ 11, 31 };
  Json scans = Json::array();
  bool pass = true;
  std::uint64_t scanned = 0;
  for (auto [d, k] : dk) {
    for (auto p : primes) {
      const auto rep = smoothness_scan(build_hk(d, k), make_field(p), default_enumeration_budget, cfg.jobs);
      pass = pass && rep.smooth() && rep.rank_mismatches == 0;
      scanned += rep.scanned;
      scans.push_back({ { "d", d },
                        { "k", k },
                        { "p", p },
                        { "scanned", rep.scanned },
                        { "singular", rep.singular.size() },
                        { "verdict", rep.verdict() } });
    }
  }
  const auto w = witness_search(6, 2, 5, 500);
  const bool witness_ok = w.has_value() && w->verified();
  pass = pass && witness_ok;
  r.pass = pass;
  r.summary = std::to_string(scans.size()) + " scans over " + std::to_string(scanned) +
              " points; (6,2) witness " + (witness_ok ? "at p=" + std::to_string(w->p) : std::string("not found"));
  r.details = { { "scans", scans }, { "caveat", smoothness_caveat } };
  r.details["witness"] = w ? to_json(*w) : Json(nullptr);
  return r;
}

// Both hyperplane tests give rank d for 3 <= d <= 6.
inline CheckResult
check_hyperplane(const SuiteConfig& cfg)
{
  CheckResult r{ 6, "hyperplane non-containment", false, {}, {} };
  const std::uint32_t max_d = cfg.quick() ? 5 : 6;
  Json rows = Json::array();
  bool pass = true;
  for (std::uint32_t d = 3; d <= max_d; ++d) {
    for (std::uint32_t k = 2; k <= d - 1; ++k) {
      std::uint32_t modulus = 1;
      for (std::uint32_t m = 2; m <= d - k + 1; ++m) {
        modulus = std::lcm(modulus, m);
      }
      const auto sys = build_hk(d, k);
      std::uint32_t p = 0;
      for (auto cand : primes_in_range(7, 10'000, modulus, 1 % modulus)) {
        if (char_large_enough(cand, sys)) {
          p = cand;
          break;
        }
      }
      const auto rep = hyperplane_test(sys, make_field(p));
      const bool ok = rep.span_rank == d && rep.matrix_built && rep.matrix_rank == d && rep.matrix_rows_on_variety;
      pass = pass && ok;
      rows.push_back({ { "d", d },
                       { "k", k },
                       { "modulus", modulus },
                       { "p", p },
                       { "span_rank", rep.span_rank },
                       { "matrix_built", rep.matrix_built },
                       { "matrix_rank", rep.matrix_rank },
                       { "ok", ok } });
    }
  }
  r.pass = pass;
  r.summary = std::to_string(rows.size()) + " (d,k) pairs, span and matrix ranks " + (pass ? "all d" : "deficient");
  r.details = { { "pairs", rows } };
  return r;
}

// Weil bound for chi_2(t^2+1) chi_3(t^3+1), orthogonality counts, primitive factors.
inline CheckResult
check_character_sums(const SuiteConfig& cfg)
{
  CheckResult r{ 7, "character sums", false, {}, {} };
  const bool q = cfg.quick();
  const std::vector<unsigned> degrees{ 2, 3 };
  const auto weil_primes = primes_in_range(7, q ? 43 : 97, 6, 1);
  const auto rep = weil_verify(degrees, weil_primes, cfg.jobs);
  double worst = 0.0;
  std::size_t checked = 0;
  std::vector<std::uint32_t> over;
  for (const auto& row : rep.rows) {
    if (std::all_of(row.indices.begin(), row.indices.end(), [](auto i) { return i == 0; })) {
      continue;
    }
    ++checked;
    worst = std::max(worst, row.normalized);
    if (row.modulus > 4.0 * std::sqrt(row.p) + 1e-9 || !row.pass) {
      over.push_back(row.p);
    }
  }

  std::size_t nj_runs = 0;
  std::vector<std::string> nj_fail;
  double nj_err = 0.0;
  for (auto p : primes_in_range(5, 101)) {
    for (unsigned j = 1; j <= 4; ++j) {
      const auto nj = nj_orthogonality_check(make_field(p), j);
      ++nj_runs;
      nj_err = std::max(nj_err, nj.max_error);
      if (!nj.ok) {
        nj_fail.push_back(std::to_string(p) + "/" + std::to_string(j));
      }
    }
  }

  std::size_t pf_runs = 0;
  std::vector<std::string> pf_fail;
  for (auto p : primes_in_range(11, q ? 101 : 499)) {
    for (unsigned s = 1; s <= 6; ++s) {
      if ((2ULL * s) % p == 0) {
        continue;
      }
      ++pf_runs;
      if (!primitive_factor_check(p, s)) {
        pf_fail.push_back(std::to_string(p) + "/" + std::to_string(s));
      }
    }
  }

  r.pass = over.empty() && checked > 0 && nj_fail.empty() && pf_fail.empty();
  r.summary = "max |S|/sqrt(p)=" + suite_detail::fmt(worst) + " over " + std::to_string(checked) +
              " nontrivial pairs (bound 4); nj " + std::to_string(nj_runs - nj_fail.size()) + "/" +
              std::to_string(nj_runs) + "; primitive factors " + std::to_string(pf_runs - pf_fail.size()) + "/" +
              std::to_string(pf_runs);
  r.details = { { "weil",
                  { { "primes", weil_primes },
                    { "pairs_checked", checked },
                    { "max_normalized", worst },
                    { "primes_over_bound", over } } },
                { "nj_orthogonality", { { "runs", nj_runs }, { "max_error", nj_err }, { "failures", nj_fail } } },
                { "primitive_factor", { { "runs", pf_runs }, { "failures", pf_fail } } } };
  return r;
}

// Direct count equals the character expansion; deviation and bad-set bounds.
inline CheckResult
check_counting_identity(const SuiteConfig& cfg)
{
  (void)cfg;
  CheckResult r{ 8, "counting identity", false, {}, {} };
  Json rows = Json::array();
  bool pass = true;
  double worst = 0.0;
  for (auto [k, n] : { std::pair{ 2u, 1u }, std::pair{ 2u, 2u }, std::pair{ 3u, 1u } }) {
    for (std::uint32_t p : { 7u, 11u, 13u }) {
      const auto rep = decomposition_check(k, n, make_field(p));
      const double scaled = rep.ratio_deviation * std::sqrt(p);
      worst = std::max(worst, scaled);
      const bool ok = rep.agree && scaled <= 5.0 && rep.bad_within_bound;
      pass = pass && ok;
      auto j = to_json(rep);
      j["scaled_deviation"] = scaled;
      j["criterion_ok"] = ok;
      rows.push_back(std::move(j));
    }
  }
  r.pass = pass;
  r.summary = "9 cases, max |N/p^k-1|*sqrt(p)=" + suite_detail::fmt(worst) + " (bound 5)";
  r.details = { { "cases", rows } };
  return r;
}

// Exact vertex identities, duality and membership.
inline CheckResult
check_exponent_geometry(const SuiteConfig& cfg)
{
  (void)cfg;
  CheckResult r{ 9, "exponent geometry", false, {}, {} };
  auto q = [](std::int64_t a, std::int64_t b) { return make_rational(a, b); };
  bool delta_ok = delta_vertex(3, 2) == ExponentPoint{ q(3, 4), q(1, 4) };
  std::size_t collapse = 0;
  std::size_t collapse_fail = 0;
  std::size_t dual = 0;
  std::size_t dual_fail = 0;
  for (std::int64_t d = 3; d <= 8; ++d) {
    for (std::int64_t k = 1; k <= d - 1; ++k) {
      ++collapse;
      if (k % 2 == 0) {
        const auto [qv, rv] = subspace_vertices(d, k, q(k, 2));
        collapse_fail += (qv == delta_vertex(d, k) && rv == delta_vertex(d, k)) ? 0 : 1;
      } else {
        const auto [qv, rv] = subspace_vertices(d, k, q(k + 1, 2));
        const auto [sv, tv] = conjectured_vertices(d, k);
        collapse_fail += (qv == sv && rv == tv) ? 0 : 1;
      }
      std::vector<ExponentRegion> regions{ delta_region(d, k), conjecture_region(d, k) };
      if (k >= std::max<std::int64_t>(d - 3, 3)) {
        regions.push_back(smooth_region(d, k));
      }
      for (const auto& reg : regions) {
        ++dual;
        dual_fail += dual_region(reg) == reg ? 0 : 1;
      }
    }
  }
  const auto region = delta_region(3, 2);
  struct Case
  {
    ExponentPoint pt;
    bool inside;
  };
  const std::vector<Case> cases{
    { { q(1, 2), q(1, 2) }, true },   { { q(1, 4), q(3, 4) }, true },  { { q(1, 10), q(1, 20) }, true },
    { { q(3, 8), q(1, 8) }, true },   { { q(3, 4), q(1, 4) }, true },  { { q(1, 2), q(1, 1) }, true },
    { { q(4, 5), q(1, 4) }, false },  { { q(1, 1), q(0, 1) }, false }, { { q(9, 10), q(1, 2) }, false },
    { { q(1, 2), q(1, 10) }, false },
  };
  std::size_t member_fail = 0;
  Json members = Json::array();
  for (const auto& c : cases) {
    // Half-plane test against each CCW edge, written out independently of contains().
    const auto& v = region.vertices();
    bool inside = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& a = v[i];
      const auto& b = v[(i + 1) % v.size()];
      inside = inside && (b.x - a.x) * (c.pt.y - a.y) - (b.y - a.y) * (c.pt.x - a.x) >= 0;
    }
    const bool got = contains(region, c.pt);
    member_fail += (got == c.inside && inside == c.inside) ? 0 : 1;
    members.push_back({ { "point", c.pt.str() }, { "expected", c.inside }, { "contains", got } });
  }
  r.pass = delta_ok && collapse_fail == 0 && dual_fail == 0 && member_fail == 0;
  r.summary = std::string("delta(3,2)=(3/4,1/4) ") + (delta_ok ? "ok" : "WRONG") + "; collapse " +
              std::to_string(collapse - collapse_fail) + "/" + std::to_string(collapse) + "; self-dual " +
              std::to_string(dual - dual_fail) + "/" + std::to_string(dual) + "; membership " +
              std::to_string(cases.size() - member_fail) + "/" + std::to_string(cases.size());
  r.details = { { "collapse_failures", collapse_fail }, { "duality_failures", dual_fail }, { "membership", members } };
  return r;
}

// Delta probe slopes, the delta norm law, and the K-decomposition inequalities.
inline CheckResult
check_averaging(const SuiteConfig& cfg)
{
  using namespace suite_detail;
  CheckResult r{ 10, "averaging probes", false, {}, {} };
  const auto primes = primes_in_range(5, cfg.quick() ? 31 : 101);
  auto family = [](std::uint32_t p) { return enumerate(build_hk(3, 2), make_field(p)); };
  const std::vector<TestFunction> tests{ TestFunction::delta };
  ProbeOptions opt;
  opt.seed = cfg.seed;
  opt.jobs = cfg.jobs;
  const auto at_vertex = endpoint_sweep(family, delta_vertex(3, 2), primes, tests, opt);
  const auto outside = endpoint_sweep(family, { make_rational(4, 5), make_rational(1, 4) }, primes, tests, opt);
  const bool vertex_ok = std::abs(at_vertex.slope) <= 0.05;
  const bool outside_ok = outside.slope >= 0.10 && outside.slope <= 0.20;

  double law_err = 0.0;
  for (std::uint32_t p : { 5u, 7u, 11u, 13u }) {
    const auto v = family(p);
    const auto g = convolve(delta_function(p, 3), v);
    for (int e : { 2, 3, 4 }) {
      const auto re = LpExponent::of(e);
      law_err = std::max(law_err, std::abs(lp_norm(g, re) / delta_norm_closed_form(p, 3, v.size(), re) - 1.0));
    }
  }
  const bool law_ok = law_err <= 1e-10;

  Json kdec = Json::array();
  bool k_ok = true;
  for (std::uint32_t p : { 7u, 11u, 13u }) {
    const auto v = family(p);
    const auto samples = k_decomposition_samples(v, 20, cfg.seed);
    const auto rep = k_decomposition_check(v, spectrum_dft(v), samples, 1, 2.0, cfg.jobs);
    k_ok = k_ok && rep.ok();
    double plancherel = 0.0;
    for (const auto& row : rep.rows) {
      plancherel = std::max({ plancherel, row.plancherel_error, row.convolution_error });
    }
    kdec.push_back({ { "p", p },
                     { "functions", rep.rows.size() },
                     { "c_hat", rep.c_hat },
                     { "k_hat_sup", rep.k_hat_sup },
                     { "max_identity_error", plancherel },
                     { "ok", rep.ok() } });
  }
  r.pass = vertex_ok && outside_ok && law_ok && k_ok;
  r.summary = "slope at (3/4,1/4)=" + fmt(at_vertex.slope) + ", at (4/5,1/4)=" + fmt(outside.slope) +
              "; delta law err=" + fmt(law_err, 2) + "; K-decomposition " + (k_ok ? "ok" : "FAILED");
  r.details = { { "vertex_sweep", to_json(at_vertex) },
                { "exterior_sweep", to_json(outside) },
                { "delta_norm_law_max_rel_error", law_err },
                { "k_decomposition", kdec } };
  return r;
}

using SuiteCheck = CheckResult (*)(const SuiteConfig&);

// Index i holds the check with id i + 1.
inline std::vector<SuiteCheck>
suite_checks()
{
  return { check_cardinality,   check_oracle_equivalence, check_decay_surfaces,    check_decay_smooth,
           check_smoothness,    check_hyperplane,         check_character_sums,    check_counting_identity,
           check_exponent_geometry, check_averaging };
}

inline Json
to_json(const CheckResult& c)
{
  return { { "id", c.id }, { "title", c.title }, { "pass", c.pass }, { "summary", c.summary }, { "details", c.details } };
}

// Runs every check in order; `only` restricts to the listed ids when non-empty.
inline Json
run_suite(const SuiteConfig& cfg, const std::vector<int>& only = {})
{
  if (cfg.name != "full" && cfg.name != "quick") {
    throw std::invalid_argument("unknown suite '" + cfg.name + "' (expected full or quick)");
  }
  const auto checks_by_id = suite_checks();
  for (int id : only) {
    if (id < 1 || static_cast<std::size_t>(id) > checks_by_id.size()) {
      throw std::invalid_argument("unknown check id " + std::to_string(id));
    }
  }
  Json checks = Json::array();
  bool all = true;
  for (std::size_t i = 0; i < checks_by_id.size(); ++i) {
    if (!only.empty() && std::find(only.begin(), only.end(), static_cast<int>(i + 1)) == only.end()) {
      continue;
    }
    const auto res = checks_by_id[i](cfg);
    all = all && res.pass;
    checks.push_back(to_json(res));
  }
  return { { "schema_version", schema_version },
           { "suite", cfg.name },
           { "seed", cfg.seed },
           { "verdict", all ? "pass" : "fail" },
           { "checks", checks } };
}

} // namespace ffavg
