#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace densemimo::stats {

inline constexpr double kZ95 = 1.959963984540054;  // two-sided 95% normal quantile

struct MeanCi {
  double mean = 0.0;
  double half_width = 0.0;  // z * sd / sqrt(n)
  std::size_t n = 0;
  double lo() const { return mean - half_width; }
  double hi() const { return mean + half_width; }
};

MeanCi mean_ci95(std::span<const double> xs);

// Compensated (Kahan) running sum.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

double kahan_total(std::span<const double> xs);

// One-sample KS statistic against a CDF; samples need not be sorted.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);
// Two-sample KS statistic.
double ks_statistic2(std::vector<double> a, std::vector<double> b);
// Asymptotic critical values: D_crit = c(alpha) / sqrt(n), c = sqrt(-ln(alpha/2)/2).
double ks_critical(double alpha, std::size_t n);
double ks_critical2(double alpha, std::size_t n, std::size_t m);

}  // namespace densemimo::stats
