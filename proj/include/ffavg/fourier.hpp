#pragma once

#include "ffavg/common.hpp"
#include "ffavg/ffield.hpp"
#include "ffavg/variety.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace ffavg {

inline constexpr std::uint64_t default_dft_budget = 200'000'000ULL;

// Axis transforms switch to compensated accumulation above this many cells.
inline constexpr std::uint64_t compensated_threshold = 1'000'000ULL;

// Dense table over m in F_p^d; index(m) = sum_i m_i p^{d-1-i}.
class Spectrum
{
public:
  Spectrum(std::uint32_t p, std::uint32_t d, std::uint64_t cardinality, std::vector<std::complex<double>> values)
    : p_(p)
    , d_(d)
    , cardinality_(cardinality)
    , values_(std::move(values))
  {
    if (values_.size() != ipow(p, d)) {
      throw std::invalid_argument("Spectrum: value table must have p^d entries");
    }
  }

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t d() const noexcept { return d_; }
  std::uint64_t cardinality() const noexcept { return cardinality_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<std::complex<double>>& values() const noexcept { return values_; }

  std::complex<double> operator[](std::size_t index) const noexcept { return values_[index]; }

  std::size_t index_of(std::span<const Residue> m) const noexcept
  {
    std::size_t idx = 0;
    for (auto c : m) {
      idx = idx * p_ + c;
    }
    return idx;
  }

  std::vector<Residue> coords(std::size_t index) const
  {
    std::vector<Residue> m(d_);
    for (std::size_t i = d_; i-- > 0;) {
      m[i] = static_cast<Residue>(index % p_);
      index /= p_;
    }
    return m;
  }

  std::complex<double> at(std::span<const Residue> m) const noexcept { return values_[index_of(m)]; }

  std::size_t negated_index(std::size_t index) const noexcept
  {
    std::size_t out = 0;
    for (auto c : coords(index)) {
      out = out * p_ + (c == 0 ? 0 : p_ - c);
    }
    return out;
  }

  // sum_m |coef(m)|^2, which equals p^d / |V| for an indicator measure.
  double parseval_sum() const
  {
    CompensatedSum<double> s;
    for (const auto& v : values_) {
      s.add(std::norm(v));
    }
    return s.value();
  }

  double max_conjugate_asymmetry() const
  {
    double worst = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      worst = std::max(worst, std::abs(values_[negated_index(i)] - std::conj(values_[i])));
    }
    return worst;
  }

private:
  std::uint32_t p_;
  std::uint32_t d_;
  std::uint64_t cardinality_;
  std::vector<std::complex<double>> values_;
};

namespace detail {

// In place: a[..m_axis..] <- sum_x a[..x..] psi(sign * m x) along every axis.
// Lines that are identically zero are skipped.
inline void
separable_transform(std::vector<std::complex<double>>& a,
                    const PrimeField& field,
                    std::uint32_t d,
                    int sign,
                    unsigned jobs)
{
  const std::uint32_t p = field.p();
  const bool compensated = a.size() > compensated_threshold;
  std::vector<std::complex<double>> twiddle(p);
  for (Residue k = 0; k < p; ++k) {
    twiddle[k] = sign > 0 ? field.psi(k) : std::conj(field.psi(k));
  }

  for (std::uint32_t axis = 0; axis < d; ++axis) {
    const std::size_t stride = ipow(p, d - 1 - axis);
    const std::size_t lines = a.size() / p;
    const std::size_t chunk = std::max<std::size_t>(1, lines / (16 * std::max(1u, jobs)));
    const std::size_t chunks = (lines + chunk - 1) / chunk;
    parallel_for(chunks, jobs, [&](std::size_t c) {
      std::vector<std::complex<double>> in(p);
      std::vector<std::complex<double>> out(p);
      for (std::size_t line = c * chunk; line < std::min(lines, (c + 1) * chunk); ++line) {
        // line enumerates (outer, inner) with the axis digit removed
        const std::size_t outer = line / stride;
        const std::size_t inner = line % stride;
        const std::size_t base = outer * stride * p + inner;
        bool zero = true;
        for (Residue x = 0; x < p; ++x) {
          in[x] = a[base + x * stride];
          zero = zero && in[x] == std::complex<double>(0.0);
        }
        if (zero) {
          continue;
        }
        for (Residue m = 0; m < p; ++m) {
          if (compensated) {
            CompensatedSum<std::complex<double>> s;
            for (Residue x = 0; x < p; ++x) {
              if (in[x] != std::complex<double>(0.0)) {
                s.add(in[x] * twiddle[static_cast<std::uint64_t>(m) * x % p]);
              }
            }
            out[m] = s.value();
          } else {
            std::complex<double> s = 0.0;
            for (Residue x = 0; x < p; ++x) {
              s += in[x] * twiddle[static_cast<std::uint64_t>(m) * x % p];
            }
            out[m] = s;
          }
        }
        for (Residue m = 0; m < p; ++m) {
          a[base + m * stride] = out[m];
        }
      }
    });
  }
}

} // namespace detail

// coef(m) = |V|^{-1} sum_{x in V} psi(m . x) for every m, by d axis passes of
// direct size-p DFTs. Cost d p^{d+1}; memory 16 p^d bytes.
inline Spectrum
spectrum_dft(const VarietyPoints& points, std::uint64_t budget = default_dft_budget, unsigned jobs = 1)
{
  const auto p = points.p();
  const auto d = points.d();
  const double cells = std::pow(static_cast<double>(p), static_cast<double>(d));
  if (cells > static_cast<double>(budget)) {
    throw BudgetExceeded("spectrum_dft: p^d cells exceed the DFT budget; use spectrum_direct on sampled m", cells);
  }
  if (points.empty()) {
    throw std::invalid_argument("spectrum_dft: empty variety has no surface measure");
  }
  const auto field = make_field(p);
  std::vector<std::complex<double>> a(static_cast<std::size_t>(cells), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    a[points.index_of(i)] = 1.0;
  }
  detail::separable_transform(a, field, d, +1, jobs);
  const double inv = 1.0 / static_cast<double>(points.size());
  for (auto& v : a) {
    v *= inv;
  }
  return { p, d, points.size(), std::move(a) };
}

// Exact coefficient at each requested m, term by term over the points.
inline std::vector<std::complex<double>>
spectrum_direct(const VarietyPoints& points, std::span<const std::vector<Residue>> ms)
{
  if (points.empty()) {
    throw std::invalid_argument("spectrum_direct: empty variety has no surface measure");
  }
  const auto field = make_field(points.p());
  const auto p = points.p();
  std::vector<std::complex<double>> out;
  out.reserve(ms.size());
  for (const auto& m : ms) {
    if (m.size() != points.d()) {
      throw std::invalid_argument("spectrum_direct: frequency has the wrong dimension");
    }
    CompensatedSum<std::complex<double>> s;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto x = points.point(i);
      std::uint64_t dot = 0;
      for (std::size_t c = 0; c < m.size(); ++c) {
        dot += static_cast<std::uint64_t>(m[c] % p) * x[c];
      }
      s.add(field.psi(dot % p));
    }
    out.push_back(s.value() / static_cast<double>(points.size()));
  }
  return out;
}

struct DecayMax
{
  std::vector<Residue> m;
  double value = 0.0;
};

// max over m != 0 of |coef(m)|; ties within 1e-12 resolve to the
// lexicographically smallest m.
inline DecayMax
max_decay(const Spectrum& s)
{
  if (s.size() < 2) {
    throw std::invalid_argument("max_decay: spectrum has no nonzero frequency");
  }
  std::size_t best = 1;
  double best_value = std::abs(s[1]);
  for (std::size_t i = 2; i < s.size(); ++i) {
    const double v = std::abs(s[i]);
    if (v > best_value + 1e-12) {
      best = i;
      best_value = v;
    }
  }
  return { s.coords(best), best_value };
}

struct DecaySample
{
  std::uint32_t p = 0;
  double max = 0.0;
  std::vector<Residue> argmax;
};

// max ~ C p^{-theta/2}: theta_hat = -2 slope, c_hat = exp(intercept).
struct DecayFit
{
  std::vector<DecaySample> samples;
  double theta_hat = 0.0;
  double c_hat = 0.0;
  std::vector<double> residuals;
};

inline DecayFit
decay_fit(std::vector<DecaySample> samples)
{
  if (samples.size() < 3) {
    throw std::invalid_argument("decay_fit: at least three primes are required");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& s : samples) {
    if (!(s.max > 1e-12)) {
      throw std::domain_error("decay_fit: degenerate spectrum (max over m != 0 vanishes) at p = " +
                              std::to_string(s.p));
    }
    xs.push_back(static_cast<double>(s.p));
    ys.push_back(s.max);
  }
  const auto line = loglog_fit(xs, ys);
  DecayFit out;
  out.samples = std::move(samples);
  out.theta_hat = -2.0 * line.slope;
  out.c_hat = std::exp(line.intercept);
  out.residuals = line.residuals;
  return out;
}

// Enumerates the system and computes its full spectrum at each prime, then fits.
inline DecayFit
fit_decay(const DiagonalSystem& sys,
          std::span<const std::uint32_t> primes,
          std::uint64_t budget = default_dft_budget,
          unsigned jobs = 1)
{
  if (primes.size() < 3) {
    throw std::invalid_argument("decay_fit: at least three primes are required");
  }
  std::vector<DecaySample> samples;
  for (auto p : primes) {
    const auto field = make_field(p);
    const auto s = spectrum_dft(enumerate(sys, field), budget, jobs);
    const auto mx = max_decay(s);
    samples.push_back({ p, mx.value, mx.m });
  }
  return decay_fit(std::move(samples));
}

} // namespace ffavg
