#include "bergman/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bergman/parallel.hpp"
#include "bergman/rng.hpp"

namespace bergman {

std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::bergman: return "bergman";
    case SpaceKind::hardy: return "hardy";
    case SpaceKind::growth: return "growth";
  }
  return "bergman";
}

SpaceParams::SpaceParams(std::size_t n_, double p_, double alpha_) : n(n_), p(p_), alpha(alpha_) {
  validate();
}

void SpaceParams::validate() const {
  if (n < 1 || n > CPoint::kMaxDim) throw precondition_error("dimension n out of range");
  if (!(p > 0.0)) throw precondition_error("p must be positive");
  if (!std::isfinite(alpha)) throw precondition_error("alpha must be finite");
  const double floor = std::isinf(p) ? 0.0 : -1.0 / p;
  if (alpha < floor - 1e-12) throw precondition_error("alpha must be >= -1/p");
}

SpaceKind SpaceParams::kind() const {
  if (std::isinf(p)) return SpaceKind::growth;
  if (std::abs(alpha + 1.0 / p) <= 1e-12) return SpaceKind::hardy;
  return SpaceKind::bergman;
}

double SpaceParams::beta() const {
  return std::isinf(p) ? alpha : (static_cast<double>(n) + 1.0) / p + alpha;
}

double SpaceParams::conjugate() const {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return kInf;
  return p / (p - 1.0);
}

double weighted_lp_norm(std::span<const CPoint> points, std::span<const complex> values, double p,
                        double beta) {
  if (points.size() != values.size()) throw precondition_error("values and points have different lengths");
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
      m = std::max(m, std::pow(1.0 - points[k].norm_sq(), beta) * std::abs(values[k]));
    }
    return m;
  }
  CompensatedSum s;
  for (std::size_t k = 0; k < points.size(); ++k) {
    s.add(std::pow(std::pow(1.0 - points[k].norm_sq(), beta) * std::abs(values[k]), p));
  }
  return std::pow(s.value(), 1.0 / p);
}

double reproducing_constant(const SpaceParams& params) {
  const double n = static_cast<double>(params.n);
  const double ap = params.alpha * params.p;
  return std::exp(std::lgamma(n + ap + 1.0) - std::lgamma(n + 1.0) - std::lgamma(ap + 1.0));
}

AnalyticFunction reproducing_kernel(const CPoint& z, const SpaceParams& params) {
  params.validate();
  if (!(params.p > 1.0) || std::isinf(params.p) || !params.is_bergman()) {
    throw precondition_error("reproducing kernel needs 1 < p < inf and alpha > -1/p");
  }
  if (z.dim() != params.n) throw precondition_error("kernel point has wrong dimension");
  const double c = reproducing_constant(params);
  const double s = static_cast<double>(params.n) + 1.0 + params.alpha * params.p;
  return AnalyticFunction::scaled(c, kernel_fn(s, z));
}

Estimate integral_mean(const AnalyticFunction& f, std::size_t n, double p, double r,
                       const QuadratureSpec& spec) {
  auto g = [&](const CPoint& zeta) {
    CPoint z = zeta;
    z *= r;
    const complex v = f.eval_unchecked(z);
    return p == 2.0 ? std::norm(v) : std::pow(std::abs(v), p);
  };
  return sphere_integral(g, n, spec);
}

namespace {

double growth_value(const AnalyticFunction& f, double alpha, const CPoint& z) {
  const double w = 1.0 - z.norm_sq();
  return (alpha == 0.0 ? 1.0 : std::pow(w, alpha)) * std::abs(f.eval_unchecked(z));
}

// coordinate pattern search in real coordinates, staying inside the ball
std::pair<double, CPoint> refine_max(const AnalyticFunction& f, double alpha, CPoint z, double v) {
  const std::size_t n = z.dim();
  double step = 0.25 * (1.0 - z.norm());
  for (int it = 0; it < 400 && step > 1e-15; ++it) {
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (int part = 0; part < 2; ++part) {
        for (double sgn : {1.0, -1.0}) {
          CPoint c = z;
          c[i] += part == 0 ? complex(sgn * step, 0.0) : complex(0.0, sgn * step);
          if (!(c.norm() < 1.0 - 1e-13)) continue;
          const double cv = growth_value(f, alpha, c);
          if (cv > v) {
            v = cv;
            z = c;
            moved = true;
          }
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  return {v, z};
}

std::vector<CPoint> growth_grid(const AnalyticFunction& f, std::size_t n, int levels, int per_octave,
                                std::size_t cap) {
  std::vector<CPoint> pts;
  auto hints = f.hint_points();
  std::vector<CPoint> dirs;
  for (const auto& h : hints) {
    if (h.dim() == n && h.norm() > 1e-12) {
      CPoint d = h;
      d *= 1.0 / h.norm();
      dirs.push_back(d);
    }
    if (h.dim() == n && h.norm() < 1.0 - 1e-13) pts.push_back(h);
  }
  for (int j = 0; j < levels; ++j) {
    const double one_minus = std::exp2(-static_cast<double>(j) / per_octave);
    const double r = 1.0 - one_minus;
    std::size_t m = 16;
    while (m < cap && static_cast<double>(m) * one_minus < 16.0) m *= 2;
    if (n > 1) m = cap;
    if (r == 0.0) {
      pts.push_back(CPoint(n));
      continue;
    }
    for (auto z : sphere_point_set(n, m, 7)) {
      z *= r;
      pts.push_back(z);
    }
    for (auto z : dirs) {
      z *= r;
      pts.push_back(z);
    }
  }
  return pts;
}

std::pair<double, CPoint> grid_max(const AnalyticFunction& f, double alpha, const std::vector<CPoint>& pts) {
  std::vector<double> vals(pts.size());
  const std::size_t chunk = 1024;
  parallel_for((pts.size() + chunk - 1) / chunk, [&](std::size_t b) {
    for (std::size_t i = b * chunk; i < std::min(pts.size(), (b + 1) * chunk); ++i) {
      vals[i] = growth_value(f, alpha, pts[i]);
    }
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (vals[i] > vals[best]) best = i;
  }
  // refine the few best candidates
  std::vector<std::size_t> order(vals.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t top = std::min<std::size_t>(6, order.size());
  std::partial_sort(order.begin(), order.begin() + top, order.end(),
                    [&](std::size_t a, std::size_t b) { return vals[a] > vals[b] || (vals[a] == vals[b] && a < b); });
  double v = vals[best];
  CPoint z = pts[best];
  for (std::size_t t = 0; t < top; ++t) {
    auto [rv, rz] = refine_max(f, alpha, pts[order[t]], vals[order[t]]);
    if (rv > v) {
      v = rv;
      z = rz;
    }
  }
  return {v, z};
}

}  // namespace

GrowthSup growth_sup(const AnalyticFunction& f, std::size_t n, double alpha, int levels) {
  if (f.dim() != 0 && f.dim() != n) throw precondition_error("function dimension does not match n");
  const std::size_t cap = n == 1 ? 2048 : 512;
  auto fine = grid_max(f, alpha, growth_grid(f, n, levels, 8, cap));
  auto coarse = grid_max(f, alpha, growth_grid(f, n, levels / 2, 4, cap / 4));
  GrowthSup out;
  out.value = std::max(fine.first, coarse.first);
  out.argmax = fine.first >= coarse.first ? fine.second : coarse.second;
  out.stable = std::abs(fine.first - coarse.first) <= 1e-6 * std::max(out.value, 1e-300);
  return out;
}

Estimate norm(const AnalyticFunction& f, const SpaceParams& params, const QuadratureSpec& spec) {
  params.validate();
  if (f.dim() != 0 && f.dim() != params.n) throw precondition_error("function dimension does not match n");
  const std::size_t n = params.n;
  const double p = params.p;
  switch (params.kind()) {
    case SpaceKind::growth: {
      const auto g = growth_sup(f, n, params.alpha);
      Estimate e{g.value, 0.0, 0, {}};
      e.diagnostic = g.stable ? "grid sup (lower bound), refinement-stable"
                              : "grid sup (lower bound), NOT refinement-stable";
      return e;
    }
    case SpaceKind::hardy: {
      Estimate last, prev;
      for (int j = 1; j <= 24; ++j) {
        prev = last;
        last = integral_mean(f, n, p, 1.0 - std::ldexp(1.0, -j), spec);
      }
      Estimate e;
      e.value = std::pow(last.value, 1.0 / p);
      const double dv = std::abs(last.value - prev.value) + last.std_error;
      e.std_error = last.value > 0 ? e.value * dv / (p * last.value) : 0.0;
      e.samples_used = last.samples_used * 24;
      e.diagnostic = "last integral mean on r = 1 - 2^-j, j <= 24";
      return e;
    }
    case SpaceKind::bergman: break;
  }
  const double ap = params.alpha * p;
  auto integrand = [&](const CPoint& z) {
    const double w = 1.0 - z.norm_sq();
    const complex v = f.eval_unchecked(z);
    const double fp = p == 2.0 ? std::norm(v) : (p == 1.0 ? std::abs(v) : std::pow(std::abs(v), p));
    return ap == 0.0 ? fp : std::pow(w, ap) * fp;
  };
  QuadratureSpec q = spec;
  if (!q.pole && q.method == QuadMethod::product && n > 1) {
    // a single kernel center far out: pull the peak back to the origin
    const auto hints = f.hint_points();
    if (!hints.empty() && hints.front().norm() > 0.5 &&
        std::all_of(hints.begin(), hints.end(), [&](const CPoint& h) { return h == hints.front(); })) {
      q.pole = hints.front();
    }
  }
  const Estimate I = ball_integral(integrand, n, q);
  Estimate e;
  e.samples_used = I.samples_used;
  e.diagnostic = I.diagnostic;
  if (!std::isfinite(I.value)) {
    e.value = kInf;
    e.std_error = kInf;
    if (e.diagnostic.empty()) e.diagnostic = "divergent integral";
    return e;
  }
  e.value = std::pow(std::max(I.value, 0.0), 1.0 / p);
  e.std_error = I.value > 0 ? e.value * I.std_error / (p * I.value) : 0.0;
  return e;
}

AnalyticFunction apply_Tphi(const AnalyticFunction& f, const Automorphism& phi, const SpaceParams& params) {
  params.validate();
  if (phi.dim() != params.n) throw precondition_error("automorphism dimension does not match n");
  if (phi.is_identity()) return f;
  const CPoint& b = phi.preimage_of_origin();
  const double beta = params.beta();
  const AnalyticFunction comp = AnalyticFunction::composed(f, phi);
  if (b.is_zero()) return comp;
  const double scale = std::pow(1.0 - b.norm_sq(), beta);
  return AnalyticFunction::product(
      {AnalyticFunction::scaled(scale, AnalyticFunction::kernel_power(b, 2.0 * beta)), comp});
}

double pointwise_bound_probe(const AnalyticFunction& f, const SpaceParams& params,
                             std::span<const CPoint> grid, double norm_value) {
  params.validate();
  if (!(norm_value > 0.0) || !std::isfinite(norm_value)) throw precondition_error("norm must be positive and finite");
  const double beta = params.beta();
  double c = 0.0;
  for (const auto& z : grid) c = std::max(c, std::abs(f(z)) * std::pow(1.0 - z.norm_sq(), beta));
  return c / norm_value;
}

double pointwise_bound_probe(const AnalyticFunction& f, const SpaceParams& params,
                             std::span<const CPoint> grid, const QuadratureSpec& spec) {
  return pointwise_bound_probe(f, params, grid, norm(f, params, spec).value);
}

std::vector<CPoint> koranyi_packing(std::size_t n, double t, std::uint64_t seed) {
  if (!(t > 0.0)) throw precondition_error("Koranyi radius must be positive");
  std::vector<CPoint> eta;
  if (n == 1) {
    if (t >= 2.0) return {CPoint{1.0}};
    const double theta = 2.0 * std::asin(t / 2.0);
    const auto count = static_cast<std::size_t>(std::floor(std::numbers::pi / theta));
    for (std::size_t k = 0; k < count; ++k) {
      eta.push_back(CPoint{std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count))});
    }
    return eta;
  }
  // |1 - <z,w>|^{1/2} is a metric on the sphere, so centers at quasi-distance
  // >= 4t give disjoint balls of radius t
  Stream s(seed, streams::kPacking);
  std::size_t misses = 0;
  for (;;) {
    const CPoint c = draw_sphere_point(s, n);
    bool ok = true;
    for (const auto& e : eta) {
      if (std::abs(1.0 - herm_inner(c, e)) < 4.0 * t) {
        ok = false;
        break;
      }
    }
    if (ok) {
      eta.push_back(c);
      misses = 0;
    } else if (++misses > std::max<std::size_t>(1000, 200 * eta.size())) {
      break;
    }
  }
  return eta;
}

AnalyticFunction witness_F(double gamma, double r, double kappa, std::size_t n, std::uint64_t seed) {
  if (!(r > 0.0 && r < 1.0)) throw precondition_error("r must lie in (0,1)");
  if (!(kappa > 1.0)) throw precondition_error("kappa must exceed 1");
  const auto eta = koranyi_packing(n, kappa * r, seed);
  if (eta.empty()) throw numerical_error("Koranyi packing produced no points");
  std::vector<AnalyticFunction> terms;
  terms.reserve(eta.size());
  for (auto e : eta) {
    e *= (1.0 - r);
    terms.push_back(AnalyticFunction::kernel_power(e, gamma));
  }
  return AnalyticFunction::sum(std::move(terms));
}

std::vector<CPoint> graded_grid(std::size_t n, int levels, int per_octave, std::size_t angular,
                                std::uint64_t seed, std::span<const CPoint> extra) {
  std::vector<CPoint> pts(extra.begin(), extra.end());
  const auto dirs = sphere_point_set(n, angular, seed);
  for (int j = 0; j < levels; ++j) {
    const double r = 1.0 - std::exp2(-static_cast<double>(j) / per_octave);
    if (r == 0.0) {
      pts.push_back(CPoint(n));
      continue;
    }
    for (auto z : dirs) {
      z *= r;
      pts.push_back(z);
    }
  }
  return pts;
}

}  // namespace bergman
