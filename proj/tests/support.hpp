#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

// Slow, independent re-implementations used as oracles for the fast paths.
namespace testsupport {

// Unnormalized Hadamard transform straight from the definition:
// H[i][j] = (-1)^popcount(i & j).
inline std::vector<double> dense_hadamard(std::span<const double> v) {
  const std::size_t len = v.size();
  std::vector<double> out(len, 0.0);
  for (std::size_t i = 0; i < len; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < len; ++j) {
      const bool flip = std::popcount(static_cast<std::uint64_t>(i & j)) & 1;
      acc += flip ? -v[j] : v[j];
    }
    out[i] = acc;
  }
  return out;
}

inline double mean(std::span<const double> xs) {
  double acc = 0.0;
  for (double x : xs) acc += x;
  return acc / static_cast<double>(xs.size());
}

inline double variance(std::span<const double> xs) {
  const double mu = mean(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - mu) * (x - mu);
  return acc / static_cast<double>(xs.size() - 1);
}

// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(double(i) / na - double(j) / nb));
  }
  return d;
}

// One-sample version against a cdf given as a callable.
template <typename Cdf>
double ks_statistic_one_sample(std::vector<double> xs, Cdf cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::abs(double(i + 1) / n - f));
    d = std::max(d, std::abs(double(i) / n - f));
  }
  return d;
}

// Asymptotic Kolmogorov tail Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 l^2).
inline double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

inline double ks_p_two_sample(double d, std::size_t n1, std::size_t n2) {
  const double ne = double(n1) * double(n2) / double(n1 + n2);
  const double s = std::sqrt(ne);
  return kolmogorov_q((s + 0.12 + 0.11 / s) * d);
}

inline double ks_p_one_sample(double d, std::size_t n) {
  const double s = std::sqrt(static_cast<double>(n));
  return kolmogorov_q((s + 0.12 + 0.11 / s) * d);
}

inline double binomial_se(double p_hat, std::size_t trials) {
  return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials));
}

}  // namespace testsupport
