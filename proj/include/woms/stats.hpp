#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace woms {

// Goodness-of-fit statistics. Samples may contain +inf for censored runs;
// the KS functions then restrict the supremum to t <= upper.

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

/// lambda with P(K > lambda) = alpha.
double kolmogorov_quantile(double alpha);

/// Asymptotic critical value of the one-sample KS statistic at level alpha.
double ks_critical_one_sample(std::size_t n, double alpha);

/// Asymptotic critical value of the two-sample KS statistic at level alpha.
double ks_critical_two_sample(std::size_t n, std::size_t m, double alpha);

/// sup_{t <= upper} |F_n(t) - cdf(t)| with its asymptotic p-value.
TestResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf,
                         double upper = std::numeric_limits<double>::infinity());

/// sup_{t <= upper} |F_n(t) - G_m(t)| with its asymptotic p-value.
TestResult ks_two_sample(std::vector<double> a, std::vector<double> b,
                         double upper = std::numeric_limits<double>::infinity());

/// Pearson statistic of `values` binned into `bins` equal cells on [lo, hi)
/// against the uniform law; p-value from chi-square with bins - 1 degrees of freedom.
TestResult chi_square_uniform(const std::vector<double>& values, int bins, double lo, double hi);

/// Upper alpha quantile of the chi-square law with `dof` degrees of freedom.
double chi_square_critical(int dof, double alpha);

/// Survival function of the chi-square law.
double chi_square_survival(int dof, double x);

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double stderr_mean = 0.0;
};

/// Mean and standard error over the finite entries of `values`.
Summary summarize(const std::vector<double>& values);

/// Empirical CDF of the finite-or-infinite sample at t: #{x <= t} / n.
double empirical_cdf(const std::vector<double>& sorted_sample, double t);

}  // namespace woms
