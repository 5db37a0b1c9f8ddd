#include "core/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"

namespace zidlab {

double mean(const std::vector<double> &xs) {
  if (xs.empty())
    fail_validation("mean of empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

double sample_variance(const std::vector<double> &xs) {
  if (xs.size() < 2)
    fail_validation("sample variance needs at least 2 values");
  const double m = mean(xs);
  double acc = 0.0;
  for (double x : xs)
    acc += (x - m) * (x - m);
  return acc / static_cast<double>(xs.size() - 1);
}

namespace {

// Continued fraction for the incomplete beta function (Lentz's method).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-14;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny)
    d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny)
      d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny)
      c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny)
      d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny)
      c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps)
      break;
  }
  return h;
}

std::vector<double> average_ranks(const std::vector<double> &xs) {
  const size_t n = xs.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(n, 0.0);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]])
      ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 +
                     1.0;
    for (size_t k = i; k <= j; ++k)
      ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double> &a, const std::vector<double> &b) {
  const double ma = mean(a);
  const double mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0)
    return 0.0;
  return sab / std::sqrt(saa * sbb);
}

} // namespace

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0)
    return 0.0;
  if (x >= 1.0)
    return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log(1.0 - x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0))
    return bt * beta_cf(a, b, x) / a;
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (df <= 0.0)
    fail_validation("student_t_cdf: df must be positive");
  const double x = df / (df + t * t);
  const double p = 0.5 * incomplete_beta(df / 2.0, 0.5, x);
  return t >= 0.0 ? 1.0 - p : p;
}

double welch_one_sided_p(const std::vector<double> &a,
                         const std::vector<double> &b) {
  if (a.size() < 2 || b.size() < 2)
    fail_validation("welch test needs at least 2 values per sample");
  const double ma = mean(a), mb = mean(b);
  const double va = sample_variance(a), vb = sample_variance(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double se2 = va / na + vb / nb;
  if (se2 == 0.0)
    return ma > mb ? 0.0 : 1.0;
  const double t = (ma - mb) / std::sqrt(se2);
  const double df = se2 * se2 /
                    ((va / na) * (va / na) / (na - 1.0) +
                     (vb / nb) * (vb / nb) / (nb - 1.0));
  return 1.0 - student_t_cdf(t, df);
}

SpearmanResult spearman_decreasing(const std::vector<double> &x,
                                   const std::vector<double> &y) {
  if (x.size() != y.size() || x.size() < 3)
    fail_validation("spearman: need matched samples of size >= 3");
  const size_t n = x.size();
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);

  SpearmanResult result;
  result.rho = pearson(rx, ry);

  if (n <= 8) {
    // exact: permute the y ranks
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), size_t{0});
    long long le = 0, total = 0;
    std::vector<double> permuted(n);
    do {
      for (size_t i = 0; i < n; ++i)
        permuted[i] = ry[perm[i]];
      if (pearson(rx, permuted) <= result.rho + 1e-12)
        ++le;
      ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    result.p_decreasing = static_cast<double>(le) / static_cast<double>(total);
  } else {
    const double rho = std::clamp(result.rho, -0.9999999, 0.9999999);
    const double t = rho * std::sqrt((static_cast<double>(n) - 2.0) /
                                     (1.0 - rho * rho));
    result.p_decreasing = student_t_cdf(t, static_cast<double>(n) - 2.0);
  }
  return result;
}

bool within_binomial_ci(double p, long long n, long long successes, double z) {
  if (n <= 0)
    fail_validation("binomial CI: n must be positive");
  const double phat =
      static_cast<double>(successes) / static_cast<double>(n);
  const double half =
      z * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return std::abs(phat - p) <= half;
}

} // namespace zidlab
