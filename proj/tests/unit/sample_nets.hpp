#pragma once
// Hand-built disk sequences and a brute-force density sum, shared by unit and
// acceptance tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bergman/seqlab.hpp"

namespace samples {

// circles of radius 1 - 2^-m carrying scale * 2^m points, odd circles rotated half a step
inline bergman::PointSeq geometric_net(int levels, double scale = 1.0) {
  std::vector<bergman::CPoint> pts;
  for (int m = 1; m <= levels; ++m) {
    const double r = 1 - std::ldexp(1.0, -m);
    const int count = static_cast<int>(std::ldexp(scale, m));
    const double shift = (m % 2) ? 0.5 : 0.0;
    for (int i = 0; i < count; ++i) {
      pts.push_back(bergman::CPoint{std::polar(r, 2 * std::numbers::pi * (i + shift) / count)});
    }
  }
  return bergman::PointSeq(1, pts);
}

// the defining sum with the one-variable Moebius map, double loop
inline double brute_density(const bergman::PointSeq& seq, double r, const std::vector<bergman::CPoint>& grid) {
  double best = 0;
  for (const auto& z : grid) {
    double s = 0;
    for (const auto& a : seq.points) {
      const double d = std::abs((z[0] - a[0]) / (1.0 - std::conj(a[0]) * z[0]));
      if (d > 0.5 && d < r) s += std::log(1 / d);
    }
    best = std::max(best, s / std::log(1 / (1 - r)));
  }
  return best;
}

}  // namespace samples
