#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ffavg {

using Residue = std::uint32_t;

// Raised when a computation would exceed its configured work or memory budget.
class BudgetExceeded : public std::runtime_error
{
public:
  BudgetExceeded(const std::string& what, double estimate)
    : std::runtime_error(what + " (estimated size " + std::to_string(estimate) + ")")
    , estimate_(estimate)
  {
  }

  double estimate() const noexcept { return estimate_; }

private:
  double estimate_;
};

inline bool
is_prime(std::uint64_t n)
{
  if (n < 2) {
    return false;
  }
  if (n % 2 == 0) {
    return n == 2;
  }
  for (std::uint64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) {
      return false;
    }
  }
  return true;
}

// Distinct prime divisors in increasing order.
inline std::vector<std::uint64_t>
prime_factors(std::uint64_t n)
{
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) {
        n /= f;
      }
    }
  }
  if (n > 1) {
    out.push_back(n);
  }
  return out;
}

// Primes in [lo, hi] with p % modulus == residue (modulus 0 or 1 disables the filter).
inline std::vector<std::uint32_t>
primes_in_range(std::uint32_t lo, std::uint32_t hi, std::uint32_t modulus = 0, std::uint32_t residue = 0)
{
  std::vector<std::uint32_t> out;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    if (!is_prime(n)) {
      continue;
    }
    if (modulus > 1 && n % modulus != residue % modulus) {
      continue;
    }
    out.push_back(static_cast<std::uint32_t>(n));
  }
  return out;
}

inline std::uint64_t
ipow(std::uint64_t base, unsigned exp)
{
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    r *= base;
  }
  return r;
}

// Neumaier-compensated accumulator.
template<typename T>
class CompensatedSum
{
public:
  void add(T x)
  {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  T value() const { return sum_ + comp_; }

private:
  T sum_{};
  T comp_{};
};

template<>
class CompensatedSum<std::complex<double>>
{
public:
  void add(std::complex<double> x)
  {
    re_.add(x.real());
    im_.add(x.imag());
  }

  std::complex<double> value() const { return { re_.value(), im_.value() }; }

private:
  CompensatedSum<double> re_;
  CompensatedSum<double> im_;
};

// Runs fn(i) for i in [0, count). Each index is visited exactly once; callers
// write results into index-addressed slots so output is independent of `jobs`.
template<typename Fn>
void
parallel_for(std::size_t count, unsigned jobs, Fn&& fn)
{
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }

  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  std::atomic<std::size_t> next{ 0 };
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) {
        return;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next.store(count);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back(worker);
  }
  for (auto& t : pool) {
    t.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

// Least-squares line y = intercept + slope * x.
struct LineFit
{
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
};

inline LineFit
least_squares(std::span<const double> xs, std::span<const double> ys)
{
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("least_squares: need at least two paired samples");
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;

  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("least_squares: abscissae are all equal");
  }

  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.residuals.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    fit.residuals.push_back(ys[i] - (fit.intercept + fit.slope * xs[i]));
  }
  return fit;
}

// Slope of log(y) against log(x).
inline LineFit
loglog_fit(std::span<const double> xs, std::span<const double> ys)
{
  std::vector<double> lx;
  std::vector<double> ly;
  lx.reserve(xs.size());
  ly.reserve(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw std::invalid_argument("loglog_fit: samples must be positive");
    }
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  return least_squares(lx, ly);
}

} // namespace ffavg
