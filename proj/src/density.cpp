#include "bergman/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bergman/parallel.hpp"

namespace bergman {

std::vector<double> dyadic_radii(int j_min, int j_max) {
  std::vector<double> r;
  for (int j = j_min; j <= j_max; ++j) r.push_back(1.0 - std::ldexp(1.0, -j));
  return r;
}

std::vector<CPoint> density_grid(const PointSeq& seq, int levels, std::size_t angular) {
  std::vector<CPoint> g = seq.points;
  g.push_back(CPoint{0.0});
  for (int j = 1; j <= levels; ++j) {
    const double r = 1.0 - std::ldexp(1.0, -j);
    for (std::size_t i = 0; i < angular; ++i) {
      g.push_back(CPoint{std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(angular))});
    }
  }
  return g;
}

DensityReport seip_density(const PointSeq& seq, std::span<const double> r_list, std::span<const CPoint> z_grid) {
  if (seq.n != 1) throw precondition_error("density is defined for sequences in the disk (n = 1)");
  if (r_list.empty()) throw precondition_error("r_list must be nonempty");
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    if (!(r_list[i] > 0.5 && r_list[i] < 1.0)) throw precondition_error("radii must lie in (1/2, 1)");
    if (i && !(r_list[i] > r_list[i - 1])) throw precondition_error("radii must increase");
  }
  if (z_grid.empty()) throw precondition_error("z grid must be nonempty");
  const std::size_t R = r_list.size();
  std::vector<double> denom(R);
  for (std::size_t i = 0; i < R; ++i) denom[i] = -std::log1p(-r_list[i]);
  // only terms with u above the smallest cut ever count
  const double r_max = r_list[R - 1];
  const double u_min = (1.0 - r_max) * (1.0 + r_max);
  std::vector<double> wa(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) wa[k] = one_minus_norm_sq(seq[k]);
  // per-z profile values
  std::vector<std::vector<double>> vals(z_grid.size(), std::vector<double>(R, 0.0));
  parallel_for(z_grid.size(), [&](std::size_t zi) {
    const CPoint& z = z_grid[zi];
    require_interior(z, "grid point");
    const double wz = one_minus_norm_sq(z);
    // u = 1 - |phi_z(a_k)|^2 is accurate near the boundary, unlike |phi_z(a_k)|;
    // the plain closed form screens, the compensated one decides
    std::vector<double> u;
    for (std::size_t k = 0; k < seq.size(); ++k) {
      const double rough = wz * wa[k] / std::norm(1.0 - z[0] * std::conj(seq[k][0]));
      if (rough < 0.5 * u_min || rough > 0.8) continue;
      const double uk = one_minus_dist_sq(z, seq[k]);
      if (uk < 0.75 && uk > u_min) u.push_back(uk);
    }
    std::sort(u.begin(), u.end(), std::greater<>());  // larger u = closer to z
    // terms with |phi| < r are those with u > 1 - r^2; prefix order is by u descending
    CompensatedSum acc;
    std::size_t k = 0;
    for (std::size_t i = 0; i < R; ++i) {
      const double cut = (1.0 - r_list[i]) * (1.0 + r_list[i]);
      while (k < u.size() && u[k] > cut) {
        acc.add(-0.5 * std::log1p(-u[k]));
        ++k;
      }
      vals[zi][i] = acc.value() / denom[i];
    }
  });
  DensityReport rep;
  std::size_t best_z = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < R; ++i) {
    double m = 0.0;
    std::size_t arg = 0;
    for (std::size_t zi = 0; zi < z_grid.size(); ++zi) {
      if (vals[zi][i] > m) {
        m = vals[zi][i];
        arg = zi;
      }
    }
    rep.r_profile.emplace_back(r_list[i], m);
    if (i + 3 >= R && m > best) {
      best = m;
      best_z = arg;
    }
  }
  rep.density = std::max(best, 0.0);
  rep.z_argmax = z_grid[best_z];
  if (R >= 3) {
    // least-squares slope of the last 3 profile values against log2(1/(1-r))
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = R - 3; i < R; ++i) {
      const double x = -std::log2(1.0 - r_list[i]);
      const double y = rep.r_profile[i].second;
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    rep.trend_slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  }
  rep.note = "finite truncation: max over the last 3 radii stands in for the limsup; a finite sequence has density 0 in the limit";
  return rep;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::interpolating: return "interpolating";
    case Verdict::not_interpolating: return "not-interpolating";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

VerdictReport density_verdict(const PointSeq& seq, double p, double alpha, std::span<const double> r_list,
                              std::span<const CPoint> z_grid) {
  if (!(p > 0.0)) throw precondition_error("p must be positive");
  if (alpha < -1.0 / p - 1e-12) throw precondition_error("alpha must be >= -1/p");
  VerdictReport rep;
  rep.threshold = alpha + 1.0 / p;
  if (seq.empty()) {
    rep.verdict = Verdict::interpolating;
    return rep;
  }
  rep.detail = seip_density(seq, r_list, z_grid);
  rep.density = rep.detail.density;
  const double gap = rep.density - rep.threshold;
  rep.verdict = std::abs(gap) <= 0.05 ? Verdict::inconclusive
                                      : (gap < 0 ? Verdict::interpolating : Verdict::not_interpolating);
  return rep;
}

VanishingReport vanishing_at_origin(const PointSeq& seq, const SpaceParams& params, const ExtensionParams& ext,
                                    double delta0, const SolveOptions& opts) {
  if (seq.n != 1 || params.n != 1) throw precondition_error("vanishing construction is for the disk (n = 1)");
  VanishingReport rep;
  if (seq.empty()) {
    rep.f = AnalyticFunction::constant(1.0);
    return rep;
  }
  std::vector<complex> inv(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (!(seq[k].norm() >= delta0)) throw precondition_error("all points must satisfy |a_k| >= delta0");
    inv[k] = 1.0 / seq[k][0];
  }
  rep.inverse_norm = weighted_lp_norm(seq.points, inv, params.p, params.beta());
  rep.inner = interpolate(seq, inv, params, ext, opts);
  rep.f = AnalyticFunction::constant(1.0) -
          AnalyticFunction::affine(0.0, CPoint{1.0}) * rep.inner.interpolant;
  for (const auto& a : seq.points) rep.max_node_value = std::max(rep.max_node_value, std::abs(rep.f(a)));
  return rep;
}

}  // namespace bergman
