#pragma once

#include "ffavg/common.hpp"
#include "ffavg/exponents.hpp"
#include "ffavg/fourier.hpp"
#include "ffavg/variety.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffavg {

// Dense function on F_p^d, first coordinate most significant (matches Spectrum).
class GridFunction
{
public:
  GridFunction(std::uint32_t p, std::uint32_t d)
    : p_(p)
    , d_(d)
    , values_(ipow(p, d), 0.0)
  {
    if (p < 2 || d == 0) {
      throw std::invalid_argument("GridFunction: need p >= 2 and d >= 1");
    }
  }

  GridFunction(std::uint32_t p, std::uint32_t d, std::vector<std::complex<double>> values)
    : p_(p)
    , d_(d)
    , values_(std::move(values))
  {
    if (p < 2 || d == 0 || values_.size() != ipow(p, d)) {
      throw std::invalid_argument("GridFunction: value array must have length p^d");
    }
    for (const auto& v : values_) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw std::invalid_argument("GridFunction: values must be finite");
      }
    }
  }

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t d() const noexcept { return d_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<std::complex<double>>& values() const noexcept { return values_; }
  std::vector<std::complex<double>>& values() noexcept { return values_; }
  std::complex<double>& operator[](std::size_t i) noexcept { return values_[i]; }
  const std::complex<double>& operator[](std::size_t i) const noexcept { return values_[i]; }

  std::size_t index_of(std::span<const Residue> x) const noexcept
  {
    std::size_t idx = 0;
    for (auto c : x) {
      idx = idx * p_ + c;
    }
    return idx;
  }

  std::vector<Residue> coords(std::size_t index) const
  {
    std::vector<Residue> x(d_);
    for (std::uint32_t i = d_; i-- > 0;) {
      x[i] = static_cast<Residue>(index % p_);
      index /= p_;
    }
    return x;
  }

  std::complex<double> sum() const
  {
    CompensatedSum<std::complex<double>> s;
    for (const auto& v : values_) {
      s.add(v);
    }
    return s.value();
  }

  std::complex<double> mean() const { return sum() / static_cast<double>(values_.size()); }

  std::size_t support_size() const
  {
    return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](const auto& v) { return v != std::complex<double>(0.0); }));
  }

private:
  std::uint32_t p_;
  std::uint32_t d_;
  std::vector<std::complex<double>> values_;
};

namespace detail {

inline void
require_match(const GridFunction& f, const VarietyPoints& v)
{
  if (f.p() != v.p() || f.d() != v.d()) {
    throw std::invalid_argument("averaging: function and variety live on different grids");
  }
  if (v.empty()) {
    throw std::invalid_argument("averaging: variety has no points");
  }
}

} // namespace detail

// (f * dsigma)(y) = (1/|V|) sum_{x in V} f(y - x), scattered from the support of f.
// Cost is |supp f| * |V| point additions.
inline GridFunction
convolve(const GridFunction& f, const VarietyPoints& v)
{
  detail::require_match(f, v);
  const std::uint32_t p = f.p();
  const std::uint32_t d = f.d();
  GridFunction out(p, d);
  const double inv = 1.0 / static_cast<double>(v.size());
  std::vector<Residue> y(d);
  for (std::size_t z = 0; z < f.size(); ++z) {
    if (f[z] == std::complex<double>(0.0)) {
      continue;
    }
    const auto zc = f.coords(z);
    const auto w = f[z] * inv;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto x = v.point(i);
      std::size_t idx = 0;
      for (std::uint32_t c = 0; c < d; ++c) {
        idx = idx * p + (zc[c] + x[c]) % p;
      }
      out[idx] += w;
    }
  }
  return out;
}

// f^vee(m) = p^{-d} sum_x f(x) psi(m.x).
inline std::vector<std::complex<double>>
forward_transform(const GridFunction& f, unsigned jobs = 1)
{
  auto a = f.values();
  detail::separable_transform(a, make_field(f.p()), f.d(), +1, jobs);
  const double scale = 1.0 / static_cast<double>(f.size());
  for (auto& c : a) {
    c *= scale;
  }
  return a;
}

// F^(x) = sum_m F(m) psi(-m.x); inverts forward_transform.
inline GridFunction
inverse_transform(std::uint32_t p, std::uint32_t d, std::vector<std::complex<double>> freq, unsigned jobs = 1)
{
  detail::separable_transform(freq, make_field(p), d, -1, jobs);
  return { p, d, std::move(freq) };
}

// Convolution theorem: (f * dsigma)^vee = f^vee . spectrum.
inline GridFunction
convolve_spectral(const GridFunction& f, const Spectrum& spectrum, unsigned jobs = 1)
{
  if (f.p() != spectrum.p() || f.d() != spectrum.d()) {
    throw std::invalid_argument("convolve_spectral: function and spectrum live on different grids");
  }
  auto freq = forward_transform(f, jobs);
  for (std::size_t m = 0; m < freq.size(); ++m) {
    freq[m] *= spectrum[m];
  }
  return inverse_transform(f.p(), f.d(), std::move(freq), jobs);
}

// Exponent stored through its reciprocal; reciprocal 0 is infinity.
class LpExponent
{
public:
  static LpExponent from_inverse(Rational inverse)
  {
    if (inverse < 0 || inverse > 1) {
      throw std::invalid_argument("LpExponent: exponent must be >= 1 (reciprocal in [0, 1]), got reciprocal " +
                                  to_string(inverse));
    }
    return LpExponent(std::move(inverse));
  }
  static LpExponent of(const Rational& exponent)
  {
    if (exponent < 1) {
      throw std::invalid_argument("LpExponent: exponent must be >= 1, got " + to_string(exponent));
    }
    return LpExponent(1 / exponent);
  }
  static LpExponent infinity() { return LpExponent(Rational(0)); }

  const Rational& inverse() const noexcept { return inverse_; }
  bool is_infinite() const noexcept { return inverse_ == 0; }
  double value() const { return 1.0 / to_double(inverse_); }

private:
  explicit LpExponent(Rational inverse)
    : inverse_(std::move(inverse))
  {
  }
  Rational inverse_;
};

// Normalized counting measure: (p^{-d} sum |f|^q)^{1/q}; sup norm at infinity.
inline double
lp_norm(const GridFunction& f, const LpExponent& q)
{
  double peak = 0.0;
  for (const auto& v : f.values()) {
    peak = std::max(peak, std::abs(v));
  }
  if (q.is_infinite() || peak == 0.0) {
    return peak;
  }
  // Scale by the peak so high powers of tiny values do not underflow.
  const double e = q.value();
  CompensatedSum<double> s;
  for (const auto& v : f.values()) {
    const double a = std::abs(v);
    if (a > 0.0) {
      s.add(std::pow(a / peak, e));
    }
  }
  return peak * std::pow(s.value() / static_cast<double>(f.size()), 1.0 / e);
}

inline double
lp_norm(const GridFunction& f, const Rational& exponent)
{
  return lp_norm(f, LpExponent::of(exponent));
}

// Closed form ||delta_0 * dsigma||_r = (p^{-d} |V|^{1-r})^{1/r}.
inline double
delta_norm_closed_form(std::uint32_t p, std::uint32_t d, std::size_t cardinality, const LpExponent& r)
{
  const double logv = std::log(static_cast<double>(cardinality));
  if (r.is_infinite()) {
    return std::exp(-logv);
  }
  const double e = r.value();
  return std::exp((-static_cast<double>(d) * std::log(static_cast<double>(p)) + (1.0 - e) * logv) / e);
}

enum class TestFunction
{
  delta,
  uniform,
  variety_indicator,
  subspace_indicator,
  random_sign,
};

inline std::string
to_string(TestFunction t)
{
  switch (t) {
    case TestFunction::delta: return "delta";
    case TestFunction::uniform: return "uniform";
    case TestFunction::variety_indicator: return "variety";
    case TestFunction::subspace_indicator: return "subspace";
    case TestFunction::random_sign: return "random_sign";
  }
  return "unknown";
}

inline TestFunction
parse_test_function(const std::string& id)
{
  for (auto t : { TestFunction::delta, TestFunction::uniform, TestFunction::variety_indicator,
                  TestFunction::subspace_indicator, TestFunction::random_sign }) {
    if (to_string(t) == id) {
      return t;
    }
  }
  if (id == "variety_indicator") {
    return TestFunction::variety_indicator;
  }
  if (id == "subspace_indicator") {
    return TestFunction::subspace_indicator;
  }
  throw std::invalid_argument("unknown test function '" + id +
                              "' (expected delta, uniform, variety, subspace or random_sign)");
}

inline GridFunction
delta_function(std::uint32_t p, std::uint32_t d)
{
  GridFunction f(p, d);
  f[0] = 1.0;
  return f;
}

inline GridFunction
uniform_function(std::uint32_t p, std::uint32_t d)
{
  return { p, d, std::vector<std::complex<double>>(ipow(p, d), 1.0) };
}

inline GridFunction
indicator(const VarietyPoints& v)
{
  GridFunction f(v.p(), v.d());
  for (std::size_t i = 0; i < v.size(); ++i) {
    f[f.index_of(v.point(i))] = 1.0;
  }
  return f;
}

// Indicator of span(basis) over F_p.
inline GridFunction
subspace_indicator(std::uint32_t p, std::uint32_t d, std::span<const Direction> basis)
{
  if (basis.empty()) {
    throw std::invalid_argument("subspace_indicator: basis is empty");
  }
  for (const auto& b : basis) {
    if (b.size() != d) {
      throw std::invalid_argument("subspace_indicator: basis vector has the wrong length");
    }
  }
  GridFunction f(p, d);
  std::vector<Residue> coeff(basis.size(), 0);
  std::vector<Residue> x(d);
  do {
    std::fill(x.begin(), x.end(), 0);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      for (std::uint32_t c = 0; c < d; ++c) {
        x[c] = static_cast<Residue>((x[c] + static_cast<std::uint64_t>(coeff[j]) * basis[j][c]) % p);
      }
    }
    f[f.index_of(x)] = 1.0;
  } while (detail::odometer_next(coeff, p));
  return f;
}

// +-1 at every point; the stream depends only on (seed, p, d).
inline GridFunction
random_sign_function(std::uint32_t p, std::uint32_t d, std::uint64_t seed)
{
  std::seed_seq seq{ static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), p, d };
  std::mt19937_64 rng(seq);
  GridFunction f(p, d);
  for (auto& v : f.values()) {
    v = (rng() & 1U) ? 1.0 : -1.0;
  }
  return f;
}

struct ProbeResult
{
  Rational inv_p;
  Rational inv_r;
  std::string test;
  std::uint32_t p = 0;
  double ratio = 0.0;
  double input_norm = 0.0;
  double output_norm = 0.0;
};

struct ProbeOptions
{
  std::uint64_t seed = 1;
  std::vector<Direction> subspace_basis;
  // Scatter convolution is used while |supp f| * |V| stays below this; otherwise the spectral path.
  std::uint64_t scatter_budget = 50'000'000ULL;
  unsigned jobs = 1;
};

inline GridFunction
make_test_function(TestFunction t, const VarietyPoints& v, const ProbeOptions& opt)
{
  switch (t) {
    case TestFunction::delta: return delta_function(v.p(), v.d());
    case TestFunction::uniform: return uniform_function(v.p(), v.d());
    case TestFunction::variety_indicator: return indicator(v);
    case TestFunction::subspace_indicator: return subspace_indicator(v.p(), v.d(), opt.subspace_basis);
    case TestFunction::random_sign: return random_sign_function(v.p(), v.d(), opt.seed);
  }
  throw std::invalid_argument("make_test_function: unknown test function");
}

inline GridFunction
average(const GridFunction& f, const VarietyPoints& v, const ProbeOptions& opt = {})
{
  const auto support = static_cast<std::uint64_t>(f.support_size());
  if (support * v.size() <= opt.scatter_budget) {
    return convolve(f, v);
  }
  return convolve_spectral(f, spectrum_dft(v, default_dft_budget, opt.jobs), opt.jobs);
}

// ||f * dsigma||_r / ||f||_p for one test function.
inline ProbeResult
probe(TestFunction t,
      const VarietyPoints& v,
      const Rational& inv_p,
      const Rational& inv_r,
      const ProbeOptions& opt = {})
{
  const auto pe = LpExponent::from_inverse(inv_p);
  const auto re = LpExponent::from_inverse(inv_r);
  const auto f = make_test_function(t, v, opt);
  const auto g = average(f, v, opt);
  ProbeResult r{ inv_p, inv_r, to_string(t), v.p() };
  r.input_norm = lp_norm(f, pe);
  r.output_norm = lp_norm(g, re);
  if (r.input_norm == 0.0) {
    throw std::domain_error("probe: test function vanishes identically");
  }
  r.ratio = r.output_norm / r.input_norm;
  return r;
}

inline ProbeResult
probe(const std::string& test_id,
      const VarietyPoints& v,
      const Rational& inv_p,
      const Rational& inv_r,
      const ProbeOptions& opt = {})
{
  return probe(parse_test_function(test_id), v, inv_p, inv_r, opt);
}

// Per-function outcome of the K-decomposition: K = spectrum - delta_0 on the
// frequency side, so f * K^ = f * dsigma - mean(f).
struct KDecompositionRow
{
  std::string label;
  double plancherel_error = 0.0;   // | ||f||_2 - ||f^vee||_2 | / ||f||_2
  double convolution_error = 0.0;  // spectral vs definitional f * dsigma, sup norm
  double l2_observed = 0.0;        // ||f * K^||_2
  double l2_bound = 0.0;           // C_hat p^{-theta/2} ||f||_2
  double sup_observed = 0.0;       // ||f * K^||_inf
  double sup_bound = 0.0;          // ||K^||_inf ||f||_1
  bool plancherel_ok = false;
  bool l2_ok = false;
  bool sup_ok = false;

  bool ok() const noexcept { return plancherel_ok && l2_ok && sup_ok; }
};

struct KDecompositionReport
{
  std::uint32_t p = 0;
  std::uint32_t d = 0;
  std::uint32_t s = 0;
  double theta = 0.0;
  double c_hat = 0.0;           // p^{theta/2} max_{m != 0} |spectrum(m)|
  double k_hat_sup = 0.0;       // ||K^||_inf
  double k_hat_scaled = 0.0;    // ||K^||_inf / p^s
  double k_hat_formula_error = 0.0; // inverse transform of K vs (p^d/|V|) 1_V - 1
  std::vector<KDecompositionRow> rows;

  bool ok() const noexcept
  {
    return k_hat_formula_error <= 1e-8 &&
           std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.ok(); });
  }
};

struct LabelledFunction
{
  std::string label;
  GridFunction f;
};

// s is the codimension (equation count); theta is the decay exponent supplied by the caller.
inline KDecompositionReport
k_decomposition_check(const VarietyPoints& v,
                      const Spectrum& spectrum,
                      std::span<const LabelledFunction> samples,
                      std::uint32_t s,
                      double theta,
                      unsigned jobs = 1)
{
  if (spectrum.p() != v.p() || spectrum.d() != v.d()) {
    throw std::invalid_argument("k_decomposition_check: spectrum does not match the variety");
  }
  if (!(theta > 0.0)) {
    throw std::invalid_argument("k_decomposition_check: theta must be positive");
  }
  constexpr double tol = 1e-8;
  const std::uint32_t p = v.p();
  const std::uint32_t d = v.d();
  const double pd = static_cast<double>(spectrum.size());

  KDecompositionReport rep;
  rep.p = p;
  rep.d = d;
  rep.s = s;
  rep.theta = theta;
  const double max_coef = max_decay(spectrum).value;
  rep.c_hat = std::pow(static_cast<double>(p), theta / 2.0) * max_coef;

  std::vector<std::complex<double>> kernel(spectrum.values());
  kernel[0] -= 1.0;
  const auto k_hat = inverse_transform(p, d, kernel, jobs);
  const auto on_v = indicator(v);
  const double height = pd / static_cast<double>(v.size());
  for (std::size_t x = 0; x < k_hat.size(); ++x) {
    const double expected = height * on_v[x].real() - 1.0;
    rep.k_hat_formula_error = std::max(rep.k_hat_formula_error, std::abs(k_hat[x] - expected));
    rep.k_hat_sup = std::max(rep.k_hat_sup, std::abs(k_hat[x]));
  }
  rep.k_hat_formula_error /= std::max(1.0, rep.k_hat_sup);
  rep.k_hat_scaled = rep.k_hat_sup / std::pow(static_cast<double>(p), s);

  const auto two = LpExponent::of(2);
  const auto one = LpExponent::of(1);
  for (const auto& sample : samples) {
    const auto& f = sample.f;
    if (f.p() != p || f.d() != d) {
      throw std::invalid_argument("k_decomposition_check: sample '" + sample.label + "' is on a different grid");
    }
    KDecompositionRow row;
    row.label = sample.label;
    const double f2 = lp_norm(f, two);

    auto freq = forward_transform(f, jobs);
    CompensatedSum<double> energy;
    for (const auto& c : freq) {
      energy.add(std::norm(c));
    }
    row.plancherel_error = std::abs(std::sqrt(energy.value()) - f2) / std::max(f2, 1e-300);
    row.plancherel_ok = row.plancherel_error <= tol;

    for (std::size_t m = 0; m < freq.size(); ++m) {
      freq[m] *= kernel[m];
    }
    const auto fk = inverse_transform(p, d, std::move(freq), jobs);

    // Convention lock: f * K^ must equal the definitional f * dsigma minus the mean of f.
    if (static_cast<std::uint64_t>(f.support_size()) * v.size() <= 50'000'000ULL) {
      const auto direct = convolve(f, v);
      const auto mu = f.mean();
      double scale = 1e-300;
      for (std::size_t x = 0; x < fk.size(); ++x) {
        row.convolution_error = std::max(row.convolution_error, std::abs(fk[x] - (direct[x] - mu)));
        scale = std::max(scale, std::abs(direct[x]));
      }
      row.convolution_error /= std::max(scale, 1.0);
      row.plancherel_ok = row.plancherel_ok && row.convolution_error <= tol;
    }

    row.l2_observed = lp_norm(fk, two);
    row.l2_bound = rep.c_hat * std::pow(static_cast<double>(p), -theta / 2.0) * f2;
    row.l2_ok = row.l2_observed <= row.l2_bound * (1.0 + tol) + tol * f2;

    row.sup_observed = lp_norm(fk, LpExponent::infinity());
    row.sup_bound = rep.k_hat_sup * lp_norm(f, one);
    row.sup_ok = row.sup_observed <= row.sup_bound * (1.0 + tol) + tol;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// Standard sample family: delta, constant one, indicator of V, then `random`
// complex Gaussian functions seeded from `seed`.
inline std::vector<LabelledFunction>
k_decomposition_samples(const VarietyPoints& v, std::size_t random, std::uint64_t seed)
{
  std::vector<LabelledFunction> out;
  out.push_back({ "delta", delta_function(v.p(), v.d()) });
  out.push_back({ "uniform", uniform_function(v.p(), v.d()) });
  out.push_back({ "variety", indicator(v) });
  for (std::size_t i = 0; i < random; ++i) {
    std::seed_seq seq{ static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(i), v.p() };
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss;
    GridFunction f(v.p(), v.d());
    for (auto& c : f.values()) {
      c = { gauss(rng), gauss(rng) };
    }
    out.push_back({ "random#" + std::to_string(i), std::move(f) });
  }
  return out;
}

struct SweepRow
{
  std::uint32_t p = 0;
  double max_ratio = 0.0;
  std::string argmax_test;
  std::vector<ProbeResult> probes;
};

struct SweepResult
{
  ExponentPoint vertex;
  std::vector<SweepRow> rows;
  double slope = 0.0;
  double intercept = 0.0;
  bool flagged = false;
};

// Flags growth when the log-log slope of the per-prime max ratio exceeds this.
inline constexpr double growth_slope_threshold = 0.05;

using VarietyFamily = std::function<VarietyPoints(std::uint32_t p)>;

// Per prime, the max probe ratio over `tests` at `vertex`. Cells (prime, test)
// run in parallel; rows are ordered by the input prime order.
inline SweepResult
endpoint_sweep(const VarietyFamily& family,
               const ExponentPoint& vertex,
               std::span<const std::uint32_t> primes,
               std::span<const TestFunction> tests,
               const ProbeOptions& opt = {})
{
  if (primes.size() < 3) {
    throw std::invalid_argument("endpoint_sweep: need at least three primes");
  }
  if (tests.empty()) {
    throw std::invalid_argument("endpoint_sweep: need at least one test function");
  }
  std::vector<std::optional<VarietyPoints>> varieties(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    varieties[i] = family(primes[i]);
  }
  const std::size_t cells = primes.size() * tests.size();
  std::vector<ProbeResult> results(cells);
  ProbeOptions inner = opt;
  inner.jobs = 1;
  parallel_for(cells, opt.jobs, [&](std::size_t c) {
    const std::size_t i = c / tests.size();
    results[c] = probe(tests[c % tests.size()], *varieties[i], vertex.x, vertex.y, inner);
  });

  SweepResult out;
  out.vertex = vertex;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    SweepRow row;
    row.p = primes[i];
    for (std::size_t t = 0; t < tests.size(); ++t) {
      const auto& r = results[i * tests.size() + t];
      if (row.probes.empty() || r.ratio > row.max_ratio) {
        row.max_ratio = r.ratio;
        row.argmax_test = r.test;
      }
      row.probes.push_back(r);
    }
    xs.push_back(row.p);
    ys.push_back(row.max_ratio);
    out.rows.push_back(std::move(row));
  }
  const auto fit = loglog_fit(xs, ys);
  out.slope = fit.slope;
  out.intercept = fit.intercept;
  out.flagged = fit.slope > growth_slope_threshold;
  return out;
}

// Exponent of p in the delta ratio when |V| ~ p^dim: d x - d y + dim (y - 1).
inline Rational
delta_ratio_exponent(std::int64_t d, std::int64_t dim, const ExponentPoint& pt)
{
  return Rational(d) * pt.x - Rational(d) * pt.y + Rational(dim) * (pt.y - 1);
}

} // namespace ffavg
