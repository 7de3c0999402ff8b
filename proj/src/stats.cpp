#include "woms/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "woms/errors.hpp"
#include "woms/special_functions.hpp"

namespace woms {

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Jacobi theta form, fast for small lambda.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double sum = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double odd = 2.0 * k - 1.0;
      sum += std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
    }
    return 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum;
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-300) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double kolmogorov_quantile(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("kolmogorov_quantile: alpha in (0,1)");
  double lo = 0.0;
  double hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_survival(mid) > alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double ks_critical_one_sample(std::size_t n, double alpha) {
  return kolmogorov_quantile(alpha) / std::sqrt(static_cast<double>(n));
}

double ks_critical_two_sample(std::size_t n, std::size_t m, double alpha) {
  const double ne = static_cast<double>(n) * static_cast<double>(m) /
                    (static_cast<double>(n) + static_cast<double>(m));
  return kolmogorov_quantile(alpha) / std::sqrt(ne);
}

double empirical_cdf(const std::vector<double>& sorted_sample, double t) {
  if (sorted_sample.empty()) return 0.0;
  const auto k = std::upper_bound(sorted_sample.begin(), sorted_sample.end(), t) -
                 sorted_sample.begin();
  return static_cast<double>(k) / static_cast<double>(sorted_sample.size());
}

TestResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf,
                         double upper) {
  if (sample.empty()) throw DomainError("ks_one_sample: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  double f = 0.0;
  for (std::size_t i = 0; i < sample.size() && sample[i] <= upper; ++i) {
    // grid-valued samples repeat a lot; evaluate the CDF once per distinct value
    if (i == 0 || sample[i] != sample[i - 1]) f = cdf(sample[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  if (std::isfinite(upper)) d = std::max(d, std::abs(empirical_cdf(sample, upper) - cdf(upper)));
  return TestResult{d, kolmogorov_survival(std::sqrt(n) * d)};
}

TestResult ks_two_sample(std::vector<double> a, std::vector<double> b, double upper) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double n = static_cast<double>(a.size());
  const double m = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() || j < b.size()) {
    const double v = (j == b.size() || (i < a.size() && a[i] <= b[j])) ? a[i] : b[j];
    if (v > upper || !std::isfinite(v)) break;
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  const double ne = n * m / (n + m);
  return TestResult{d, kolmogorov_survival(std::sqrt(ne) * d)};
}

double chi_square_survival(int dof, double x) {
  if (dof < 1) throw DomainError("chi_square_survival: dof must be >= 1");
  if (x <= 0.0) return 1.0;
  return reg_upper_gamma_q(0.5 * dof, 0.5 * x);
}

double chi_square_critical(int dof, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("chi_square_critical: alpha in (0,1)");
  double lo = 0.0;
  double hi = static_cast<double>(dof) + 10.0 * std::sqrt(2.0 * dof) + 50.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (chi_square_survival(dof, mid) > alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TestResult chi_square_uniform(const std::vector<double>& values, int bins, double lo, double hi) {
  if (bins < 2) throw DomainError("chi_square_uniform: need at least 2 bins");
  if (!(hi > lo)) throw DomainError("chi_square_uniform: empty range");
  if (values.empty()) throw DomainError("chi_square_uniform: empty sample");
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (double v : values) {
    auto k = static_cast<long>(std::floor((v - lo) / (hi - lo) * bins));
    k = std::clamp(k, 0L, static_cast<long>(bins) - 1);
    counts[static_cast<std::size_t>(k)] += 1.0;
  }
  const double expected = static_cast<double>(values.size()) / bins;
  double stat = 0.0;
  for (double c : counts) stat += (c - expected) * (c - expected) / expected;
  return TestResult{stat, chi_square_survival(bins - 1, stat)};
}

Summary summarize(const std::vector<double>& values) {
  Summary s;
  double sum = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) {
      sum += v;
      ++s.count;
    }
  }
  if (s.count == 0) return s;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) {
      if (std::isfinite(v)) ss += (v - s.mean) * (v - s.mean);
    }
    s.stderr_mean = std::sqrt(ss / static_cast<double>(s.count - 1) / static_cast<double>(s.count));
  }
  return s;
}

}  // namespace woms
