#include "densemimo/stats.hpp"

#include <algorithm>
#include <cmath>

namespace densemimo::stats {

MeanCi mean_ci95(std::span<const double> xs) {
  MeanCi out;
  out.n = xs.size();
  if (out.n == 0) return out;
  KahanSum s;
  for (double x : xs) s.add(x);
  out.mean = s.sum / static_cast<double>(out.n);
  if (out.n < 2) return out;
  KahanSum sq;
  for (double x : xs) {
    const double d = x - out.mean;
    sq.add(d * d);
  }
  const double var = sq.sum / static_cast<double>(out.n - 1);
  out.half_width = kZ95 * std::sqrt(var / static_cast<double>(out.n));
  return out;
}

double kahan_total(std::span<const double> xs) {
  KahanSum s;
  for (double x : xs) s.add(x);
  return s.sum;
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return d;
}

double ks_statistic2(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical(double alpha, std::size_t n) {
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) /
         std::sqrt(static_cast<double>(n));
}

double ks_critical2(double alpha, std::size_t n, std::size_t m) {
  const double nm = static_cast<double>(n) * static_cast<double>(m);
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) *
         std::sqrt(static_cast<double>(n + m) / nm);
}

}  // namespace densemimo::stats
