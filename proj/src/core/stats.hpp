#pragma once

#include <vector>

namespace zidlab {

double mean(const std::vector<double> &xs);
double sample_variance(const std::vector<double> &xs);

// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

// CDF of Student's t distribution with `df` degrees of freedom.
double student_t_cdf(double t, double df);

// One-sided Welch's t-test p-value for H1: mean(a) > mean(b).
double welch_one_sided_p(const std::vector<double> &a,
                         const std::vector<double> &b);

struct SpearmanResult {
  double rho = 0.0;
  double p_decreasing = 1.0; // one-sided, H1: y decreases with x
};

// Spearman rank correlation with average ranks for ties. The p-value is an
// exact permutation test for n <= 8 and a t approximation above that.
SpearmanResult spearman_decreasing(const std::vector<double> &x,
                                   const std::vector<double> &y);

// True when `successes` out of `n` lies inside the central normal-theory
// binomial interval around known probability p: |s/n - p| <= z*sqrt(pq/n).
bool within_binomial_ci(double p, long long n, long long successes,
                        double z = 1.959963984540054);

} // namespace zidlab
