#pragma once
// Independent reference computations shared by the unit and acceptance tests.

#include <cmath>
#include <vector>

namespace oracle {

// Gauss hypergeometric 2F1(a, b; c; x) by its power series, 0 <= x < 1.
inline double hyp2f1(double a, double b, double c, double x) {
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 2000000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

inline double beta_fn(double x, double y) { return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y)); }

// int_B (1-|z|^2)^t |1 - <z,a>|^{-2s} dm  (normalized volume on B^n)
inline double ball_kernel_integral(int n, double t, double s, double a2) {
  return std::tgamma(n + 1.0) * std::tgamma(t + 1.0) / std::tgamma(n + 1.0 + t) * hyp2f1(s, s, n + 1.0 + t, a2);
}

// int_S |1 - <zeta,a>|^{-2s} dsigma
inline double sphere_kernel_integral(int n, double s, double a2) { return hyp2f1(s, s, n, a2); }

// ||(1 - <z,a>)^{-N}||_{p,alpha}^p for p < inf, from the series
// |1 - <z,a>|^{-Np} = |(1 - <z,a>)^{-Np/2}|^2.
inline double kernel_norm_p(int n, double p, double alpha, double N, double a2) {
  return ball_kernel_integral(n, alpha * p, N * p / 2.0, a2);
}

// Least-squares slope of y against x.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace oracle
