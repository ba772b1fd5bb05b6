#pragma once

// Small-sample estimator helpers: leave-one-out jackknife standard errors
// for any statistic expressible through per-sample column sums, and an
// ordinary least-squares log-log slope fit.

#include <cmath>
#include <functional>
#include <vector>

#include "quenchlab/types.hpp"

namespace quenchlab {

struct EstimateSE {
  double value = 0.0;
  double se = 0.0;
};

// rows[i] holds the per-sample statistics; estimator maps (column sums,
// sample count) to the statistic of interest.
inline EstimateSE jackknife(const std::vector<std::vector<double>>& rows,
                            const std::function<double(const std::vector<double>&, int)>& est) {
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw Error("jackknife: no samples");
  const std::size_t k = rows[0].size();
  std::vector<double> sums(k, 0.0);
  for (const auto& row : rows) {
    if (row.size() != k) throw Error("jackknife: ragged rows");
    for (std::size_t c = 0; c < k; ++c) sums[c] += row[c];
  }

  EstimateSE out;
  out.value = est(sums, n);
  if (n < 2) return out;

  std::vector<double> loo(n), reduced(k);
  double mean_loo = 0.0;
  for (int i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < k; ++c) reduced[c] = sums[c] - rows[i][c];
    loo[i] = est(reduced, n - 1);
    mean_loo += loo[i];
  }
  mean_loo /= n;
  double ss = 0.0;
  for (int i = 0; i < n; ++i) ss += (loo[i] - mean_loo) * (loo[i] - mean_loo);
  out.se = std::sqrt(ss * (n - 1) / n);
  return out;
}

// Mean of column c.
inline EstimateSE jackknife_mean(const std::vector<std::vector<double>>& rows, std::size_t c) {
  return jackknife(rows, [c](const std::vector<double>& s, int n) { return s[c] / n; });
}

// Unbiased variance of column c, using column c2 = (column c)^2.
inline EstimateSE jackknife_variance(const std::vector<std::vector<double>>& rows, std::size_t c,
                                     std::size_t c2) {
  return jackknife(rows, [c, c2](const std::vector<double>& s, int n) {
    if (n < 2) return 0.0;
    return (s[c2] - s[c] * s[c] / n) / (n - 1);
  });
}

struct SlopeFit {
  double slope = 0.0;
  double slope_se = 0.0;
  double intercept = 0.0;
  int points = 0;
};

// OLS fit of log(y) against log(x); points with y <= 0 are skipped.
inline SlopeFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  SlopeFit fit;
  fit.points = static_cast<int>(lx.size());
  if (fit.points < 2) return fit;

  const int k = fit.points;
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < k; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < k; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (k > 2) {
    double rss = 0.0;
    for (int i = 0; i < k; ++i) {
      const double r = ly[i] - fit.intercept - fit.slope * lx[i];
      rss += r * r;
    }
    fit.slope_se = std::sqrt(rss / (k - 2) / sxx);
  }
  return fit;
}

}  // namespace quenchlab
