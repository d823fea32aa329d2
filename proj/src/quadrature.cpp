#include "bergman/quadrature.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>

#include "bergman/parallel.hpp"
#include "bergman/rng.hpp"

namespace bergman {

namespace {

constexpr std::size_t kBlock = 4096;
constexpr std::size_t kReplicates = 8;
constexpr std::size_t kMinAngular = 64;
constexpr double kRejectQuota = 1e-4;
// radial panels stop here; 2^-41 keeps sqrt(1-s) clear of the boundary guard
constexpr int kMaxPanels = 40;
constexpr int kMinPanels = 12;

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

double frac(double x) { return x - std::floor(x); }

// Kronecker generators from the root of x^{d+1} = x + 1.
std::vector<double> kronecker_alpha(std::size_t d) {
  double phi = 2.0;
  for (int it = 0; it < 64; ++it) {
    const double f = std::pow(phi, static_cast<double>(d + 1)) - phi - 1.0;
    const double df = static_cast<double>(d + 1) * std::pow(phi, static_cast<double>(d)) - 1.0;
    phi -= f / df;
  }
  std::vector<double> a(d);
  for (std::size_t i = 0; i < d; ++i) a[i] = frac(std::pow(1.0 / phi, static_cast<double>(i + 1)));
  return a;
}

double gauss_tol(std::size_t n) { return n == 1 ? 1e-14 : 1e-13; }

// angular refinement stops two digits below the requested overall accuracy
double angular_tol(std::size_t n, const QuadratureSpec& spec) {
  return std::max(gauss_tol(n), 1e-2 * spec.target_rel_tol);
}

// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre01(std::size_t m, std::vector<double>& x, std::vector<double>& w) {
  x.assign(m, 0.0);
  w.assign(m, 0.0);
  const double dm = static_cast<double>(m);
  for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dm + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (std::size_t k = 2; k <= m; ++k) {
        const double dk = static_cast<double>(k);
        const double p2 = ((2.0 * dk - 1.0) * z * p1 - (dk - 1.0) * p0) / dk;
        p0 = p1;
        p1 = p2;
      }
      dp = dm * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = 0.5 * (1.0 - z);
    x[m - 1 - i] = 0.5 * (1.0 + z);
    w[i] = w[m - 1 - i] = 1.0 / ((1.0 - z * z) * dp * dp);
  }
}

std::size_t gauss_count(std::size_t L) { return L / 2 + 4; }

// One angular rule: nodes on the unit sphere with weights summing to 1.
struct AngularLevel {
  std::vector<CPoint> pts;
  std::vector<double> w;
};

// Circle: equispaced. n >= 2: |z_1| = cos psi_1, |z_2| = sin psi_1 cos psi_2,
// ... with Gauss-Legendre in each psi_k on [0, pi/2] (the pushed-forward
// density is folded into the weights) times the trapezoid rule in each
// phase. Both parts converge geometrically for smooth integrands.
AngularLevel make_level(std::size_t n, std::size_t L, const std::vector<double>& phase_shift) {
  AngularLevel lv;
  const double two_pi = 2.0 * std::numbers::pi;
  if (n == 1) {
    for (std::size_t i = 0; i < L; ++i) {
      lv.pts.push_back(CPoint{std::polar(1.0, two_pi * (phase_shift[0] + static_cast<double>(i)) / static_cast<double>(L))});
      lv.w.push_back(1.0 / static_cast<double>(L));
    }
    return lv;
  }
  const std::size_t M = gauss_count(L);
  std::vector<double> gx, gw;
  gauss_legendre01(M, gx, gw);
  std::size_t radial_count = 1, phase_count = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) radial_count *= M;
  for (std::size_t k = 0; k < n; ++k) phase_count *= L;
  lv.pts.reserve(radial_count * phase_count);
  lv.w.reserve(radial_count * phase_count);
  std::vector<double> mod(n);
  const double half_pi = 0.5 * std::numbers::pi;
  for (std::size_t ri = 0; ri < radial_count; ++ri) {
    double weight = 1.0, remaining = 1.0;
    std::size_t idx = ri;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const std::size_t g = idx % M;
      idx /= M;
      const double psi = half_pi * gx[g];
      const double e = static_cast<double>(n - 2 - k);
      const double c = std::cos(psi), sn = std::sin(psi);
      // t = cos^2 psi has density (e+1)(1-t)^e on [0, 1]
      weight *= half_pi * gw[g] * 2.0 * (e + 1.0) * std::pow(sn, 2.0 * e + 1.0) * c;
      mod[k] = remaining * c;
      remaining *= sn;
    }
    mod[n - 1] = remaining;
    weight /= static_cast<double>(phase_count);
    for (std::size_t pi = 0; pi < phase_count; ++pi) {
      std::size_t j = pi;
      CPoint z(n);
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t a = j % L;
        j /= L;
        z[k] = std::polar(mod[k], two_pi * (phase_shift[k] + static_cast<double>(a)) / static_cast<double>(L));
      }
      lv.pts.push_back(z);
      lv.w.push_back(weight);
    }
  }
  return lv;
}

std::size_t level_size(std::size_t n, std::size_t L) {
  if (n == 1) return L;
  std::size_t size = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) size *= gauss_count(L);
  for (std::size_t k = 0; k < n; ++k) size *= L;
  return size;
}

// Rules of increasing resolution (steps of about sqrt 2), built on first
// use. The first is always available, later ones only while they fit the
// budget.
class AngularRules {
 public:
  AngularRules(std::size_t n, std::size_t budget, std::uint64_t seed) : n_(n), shift_(n) {
    Stream s(seed, streams::kQmcShift);
    for (auto& x : shift_) x = s.uniform();
    const std::size_t base = n == 1 ? kMinAngular : 4;
    for (int step = 0;; ++step) {
      const std::size_t L = step % 2 == 0 ? base << (step / 2) : 3 * (base << (step / 2)) / 2;
      const std::size_t size = level_size(n, L);
      if (!L_.empty() && size > budget) break;
      L_.push_back(L);
      if (size > budget) break;
    }
    built_.resize(L_.size());
  }

  std::size_t size() const { return L_.size(); }
  std::size_t dim() const { return n_; }

  const AngularLevel& operator[](std::size_t k) const {
    std::lock_guard lock(mu_);
    if (!built_[k]) built_[k] = std::make_unique<AngularLevel>(make_level(n_, L_[k], shift_));
    return *built_[k];
  }

 private:
  std::size_t n_;
  std::vector<double> shift_;
  std::vector<std::size_t> L_;
  mutable std::vector<std::unique_ptr<AngularLevel>> built_;
  mutable std::mutex mu_;
};

struct AngularResult {
  double value = 0.0;
  double err = 0.0;
  std::size_t used = 0;
  std::size_t rejected = 0;
  std::size_t level = 0;
  bool converged = false;
};

double level_mean(const RealIntegrand& f, const AngularLevel& lv, double r, std::size_t& rejected) {
  CompensatedSum sum, wsum;
  for (std::size_t i = 0; i < lv.pts.size(); ++i) {
    CPoint z = lv.pts[i];
    z *= r;
    const double v = f(z);
    if (std::isfinite(v)) {
      sum.add(lv.w[i] * v);
      wsum.add(lv.w[i]);
    } else {
      ++rejected;
    }
  }
  return wsum.value() > 0.0 ? sum.value() / wsum.value() : 0.0;
}

// Mean of f(r * zeta), refining until two successive rules agree to rounding
// or the budget is spent.
AngularResult angular_mean(const RealIntegrand& f, const AngularRules& levels, double r,
                           std::size_t start, double rel_tol, double abs_tol = 0.0) {
  AngularResult out;
  const double tol = rel_tol;
  std::size_t k = std::min(start, levels.size() - 1);
  double prev = level_mean(f, levels[k], r, out.rejected);
  out.used += levels[k].pts.size();
  out.value = prev;
  out.level = k;
  out.err = std::abs(prev);
  while (k + 1 < levels.size()) {
    ++k;
    const double q = level_mean(f, levels[k], r, out.rejected);
    out.used += levels[k].pts.size();
    out.err = std::abs(q - prev);
    out.value = q;
    out.level = k;
    if (out.err <= std::max(tol * std::abs(q), abs_tol) || (q == 0.0 && prev == 0.0)) {
      out.converged = true;
      break;
    }
    prev = q;
  }
  return out;
}

Estimate finalize(CompensatedSum sum, double err, std::size_t used, std::size_t rejected) {
  if (static_cast<double>(rejected) > kRejectQuota * static_cast<double>(std::max<std::size_t>(used, 1))) {
    throw numerical_error("integrand produced " + std::to_string(rejected) +
                          " non-finite values, above the rejection quota");
  }
  return {sum.value(), err, used, {}};
}

Estimate product_ball(const RealIntegrand& f, std::size_t n, const QuadratureSpec& spec) {
  const AngularRules levels(n, spec.angular_budget, spec.seed);
  std::size_t start_level = 0;
  std::size_t unresolved = 0;
  const double dn = static_cast<double>(n);
  CompensatedSum total;
  double err = 0.0;
  std::size_t used = 0, rejected = 0;
  double prev_c = std::numeric_limits<double>::quiet_NaN();
  int settled = 0;
  double last_ratio = 1.0;
  double last_c = 0.0;
  bool converged = false;
  for (int j = 0; j < kMaxPanels; ++j) {
    const double hi = std::ldexp(1.0, -j);
    const double lo = std::ldexp(1.0, -(j + 1));
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    std::array<double, 15> svals{};
    for (int i = 0; i < 7; ++i) {
      svals[2 * i] = c - h * kXgk[i];
      svals[2 * i + 1] = c + h * kXgk[i];
    }
    svals[14] = c;
    std::array<AngularResult, 15> ang;
    // a node only needs the accuracy its share of the integral can show
    const double running = std::abs(total.value());
    parallel_for(15, [&](std::size_t k) {
      const double share = h * dn * std::pow(1.0 - svals[k], dn - 1.0);
      ang[k] = angular_mean(f, levels, std::sqrt(1.0 - svals[k]), start_level, angular_tol(n, spec),
                            angular_tol(n, spec) * running / share);
    });
    std::size_t top = 0;
    for (const auto& a : ang) top = std::max(top, a.level);
    start_level = top > 0 ? top - 1 : 0;
    auto radial = [&](int k) {
      return dn * std::pow(1.0 - svals[k], dn - 1.0) * ang[k].value;
    };
    auto rweight = [&](int k) { return dn * std::pow(1.0 - svals[k], dn - 1.0); };
    double kron = kWgk[7] * radial(14);
    double gauss = kWg[3] * radial(14);
    double aerr = kWgk[7] * rweight(14) * ang[14].err;
    for (int i = 0; i < 7; ++i) {
      const double pair = radial(2 * i) + radial(2 * i + 1);
      kron += kWgk[i] * pair;
      if (i % 2 == 1) gauss += kWg[i / 2] * pair;
      aerr += kWgk[i] * (rweight(2 * i) * ang[2 * i].err + rweight(2 * i + 1) * ang[2 * i + 1].err);
    }
    kron *= h;
    gauss *= h;
    aerr *= h;
    for (const auto& a : ang) {
      used += a.used;
      rejected += a.rejected;
      if (!a.converged && levels.size() > 1) ++unresolved;
    }
    total.add(kron);
    err += std::abs(kron - gauss) + aerr;
    last_c = kron;
    if (!std::isnan(prev_c) && prev_c != 0.0) {
      last_ratio = std::abs(kron / prev_c);
    } else if (kron == 0.0) {
      last_ratio = 0.0;
    }
    prev_c = kron;
    const double tail = last_ratio < 1.0 ? std::abs(kron) * last_ratio / (1.0 - last_ratio) : INFINITY;
    if (j + 1 >= kMinPanels && last_ratio < 0.9 &&
        tail <= spec.target_rel_tol * std::abs(total.value())) {
      if (++settled >= 2) {
        converged = true;
        break;
      }
    } else {
      settled = 0;
    }
  }
  if (!converged && last_ratio >= 1.0 - 1e-3) {
    Estimate e{INFINITY, INFINITY, used, {}};
    e.diagnostic = "radial contributions do not decay near the boundary; integral diverges";
    return e;
  }
  // geometric tail for s in (0, 2^-J)
  const double tail = last_ratio < 1.0 ? last_c * last_ratio / (1.0 - last_ratio) : 0.0;
  total.add(tail);
  err += std::abs(tail) * (converged ? 0.0 : 1.0);
  Estimate out = finalize(total, err, used, rejected);
  if (unresolved > 0) {
    out.diagnostic = "angular rule hit its budget at " + std::to_string(unresolved) +
                     " radial nodes; the error estimate may be optimistic";
  }
  return out;
}

Estimate product_sphere(const RealIntegrand& f, std::size_t n, const QuadratureSpec& spec) {
  const AngularRules levels(n, spec.angular_budget, spec.seed);
  const AngularResult a = angular_mean(f, levels, 1.0, 0, angular_tol(n, spec));
  CompensatedSum mean;
  mean.add(a.value);
  return finalize(mean, a.err, a.used, a.rejected);
}

struct Moments {
  CompensatedSum s1, s2;
  std::size_t count = 0, rejected = 0;
};

Estimate mc_estimate(std::size_t total, const std::function<CPoint(Stream&)>& draw,
                     const RealIntegrand& f, std::uint64_t seed) {
  const std::size_t blocks = (total + kBlock - 1) / kBlock;
  std::vector<Moments> per(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    Stream s(seed, streams::kMonteCarlo, b);
    const std::size_t cnt = std::min(kBlock, total - b * kBlock);
    for (std::size_t i = 0; i < cnt; ++i) {
      const double v = f(draw(s));
      if (!std::isfinite(v)) {
        ++per[b].rejected;
        continue;
      }
      per[b].s1.add(v);
      per[b].s2.add(v * v);
      ++per[b].count;
    }
  });
  CompensatedSum s1, s2;
  std::size_t rejected = 0;
  for (const auto& m : per) {
    s1.add(m.s1.value());
    s2.add(m.s2.value());
    rejected += m.rejected;
  }
  const double nn = static_cast<double>(total);
  const double mean = s1.value() / nn;
  const double var = std::max(0.0, s2.value() / nn - mean * mean);
  CompensatedSum out;
  out.add(mean);
  return finalize(out, std::sqrt(var / std::max(1.0, nn - 1.0)), total, rejected);
}

Estimate qmc_estimate(std::size_t total, std::size_t dim,
                      const std::function<CPoint(const double*)>& map, const RealIntegrand& f,
                      std::uint64_t seed) {
  const std::size_t per = std::max<std::size_t>(1, total / kReplicates);
  const auto alpha = kronecker_alpha(dim);
  std::vector<double> means(kReplicates);
  std::vector<std::size_t> rej(kReplicates, 0);
  parallel_for(kReplicates, [&](std::size_t rep) {
    Stream s(seed, streams::kQmcShift, rep + 1);
    std::vector<double> shift(dim), u(dim);
    for (auto& x : shift) x = s.uniform();
    CompensatedSum sum;
    for (std::size_t k = 0; k < per; ++k) {
      for (std::size_t i = 0; i < dim; ++i) u[i] = frac(shift[i] + static_cast<double>(k) * alpha[i]);
      const double v = f(map(u.data()));
      if (std::isfinite(v)) {
        sum.add(v);
      } else {
        ++rej[rep];
      }
    }
    means[rep] = sum.value() / static_cast<double>(per);
  });
  CompensatedSum m;
  for (double x : means) m.add(x);
  const double mean = m.value() / kReplicates;
  double var = 0.0;
  for (double x : means) var += (x - mean) * (x - mean);
  var /= static_cast<double>(kReplicates - 1);
  std::size_t rejected = 0;
  for (auto r : rej) rejected += r;
  CompensatedSum out;
  out.add(mean);
  return finalize(out, std::sqrt(var / kReplicates), per * kReplicates, rejected);
}

RealIntegrand pulled_back(const RealIntegrand& f, const CPoint& a, double jac_exponent) {
  const double one_minus = 1.0 - a.norm_sq();
  return [f, a, one_minus, jac_exponent](const CPoint& w) {
    const double j = std::pow(one_minus / std::norm(1.0 - herm_inner(w, a)), jac_exponent);
    return f(apply_automorphism(a, w)) * j;
  };
}

}  // namespace

std::string to_string(QuadMethod m) {
  switch (m) {
    case QuadMethod::product: return "product";
    case QuadMethod::monte_carlo: return "monte-carlo";
    case QuadMethod::quasi_monte_carlo: return "quasi-monte-carlo";
  }
  return "product";
}

QuadMethod quad_method_from_string(const std::string& s) {
  if (s == "product") return QuadMethod::product;
  if (s == "monte-carlo" || s == "mc") return QuadMethod::monte_carlo;
  if (s == "quasi-monte-carlo" || s == "qmc") return QuadMethod::quasi_monte_carlo;
  throw precondition_error("unknown quadrature method '" + s + "'");
}

void QuadratureSpec::validate() const {
  if (samples < 1) throw precondition_error("samples must be >= 1");
  if (angular_budget < 1) throw precondition_error("angular_budget must be >= 1");
  if (!(target_rel_tol > 0.0)) throw precondition_error("target_rel_tol must be positive");
  if (pole) require_interior(*pole, "pole center");
}

Estimate ball_integral(const RealIntegrand& f, std::size_t n, const QuadratureSpec& spec) {
  spec.validate();
  if (n < 1 || n > CPoint::kMaxDim) throw precondition_error("dimension n out of range");
  if (spec.pole) {
    if (spec.pole->dim() != n) throw precondition_error("pole dimension mismatch");
    QuadratureSpec plain = spec;
    plain.pole.reset();
    return ball_integral(pulled_back(f, *spec.pole, static_cast<double>(n + 1)), n, plain);
  }
  switch (spec.method) {
    case QuadMethod::product: return product_ball(f, n, spec);
    case QuadMethod::monte_carlo:
      return mc_estimate(spec.samples, [n](Stream& s) { return draw_ball_point(s, n); }, f, spec.seed);
    case QuadMethod::quasi_monte_carlo:
      return qmc_estimate(
          spec.samples, 2 * n,
          [n](const double* u) {
            CPoint z = cube_to_sphere(u + 1, n);
            z *= std::pow(u[0], 1.0 / (2.0 * static_cast<double>(n)));
            return z;
          },
          f, spec.seed);
  }
  return {};
}

Estimate sphere_integral(const RealIntegrand& f, std::size_t n, const QuadratureSpec& spec) {
  spec.validate();
  if (n < 1 || n > CPoint::kMaxDim) throw precondition_error("dimension n out of range");
  if (spec.pole) {
    if (spec.pole->dim() != n) throw precondition_error("pole dimension mismatch");
    QuadratureSpec plain = spec;
    plain.pole.reset();
    return sphere_integral(pulled_back(f, *spec.pole, static_cast<double>(n)), n, plain);
  }
  switch (spec.method) {
    case QuadMethod::product: return product_sphere(f, n, spec);
    case QuadMethod::monte_carlo:
      return mc_estimate(spec.samples, [n](Stream& s) { return draw_sphere_point(s, n); }, f, spec.seed);
    case QuadMethod::quasi_monte_carlo:
      return qmc_estimate(spec.samples, 2 * n - 1, [n](const double* u) { return cube_to_sphere(u, n); },
                          f, spec.seed);
  }
  return {};
}

Estimate tau_integral(const RealIntegrand& f, const CPoint& center, double r,
                      const QuadratureSpec& spec) {
  if (!(r > 0.0 && r < 1.0)) throw precondition_error("radius must lie in (0,1)");
  require_interior(center, "tau-ball center");
  const std::size_t n = center.dim();
  const double dn = static_cast<double>(n);
  const double scale = std::pow(r, 2.0 * dn);
  auto g = [&](const CPoint& v) {
    CPoint w = v;
    w *= r;
    return scale * f(apply_automorphism(center, w)) * std::pow(1.0 - w.norm_sq(), -(dn + 1.0));
  };
  QuadratureSpec plain = spec;
  plain.pole.reset();
  return ball_integral(g, n, plain);
}

std::vector<CPoint> sample_ball(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<CPoint> out(count);
  parallel_for((count + kBlock - 1) / kBlock, [&](std::size_t b) {
    Stream s(seed, streams::kBallSamples, b);
    for (std::size_t i = b * kBlock; i < std::min(count, (b + 1) * kBlock); ++i) out[i] = draw_ball_point(s, n);
  });
  return out;
}

std::vector<CPoint> sample_sphere(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<CPoint> out(count);
  parallel_for((count + kBlock - 1) / kBlock, [&](std::size_t b) {
    Stream s(seed, streams::kSphereSamples, b);
    for (std::size_t i = b * kBlock; i < std::min(count, (b + 1) * kBlock); ++i) out[i] = draw_sphere_point(s, n);
  });
  return out;
}

std::vector<CPoint> sphere_point_set(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<CPoint> pts;
  pts.reserve(count);
  if (n == 1) {
    const double u0 = Stream(seed, streams::kQmcShift).uniform();
    for (std::size_t i = 0; i < count; ++i) {
      pts.push_back(CPoint{std::polar(1.0, 2.0 * std::numbers::pi * (u0 + static_cast<double>(i)) /
                                               static_cast<double>(count))});
    }
    return pts;
  }
  const std::size_t d = 2 * n - 1;
  const auto alpha = kronecker_alpha(d);
  Stream s(seed, streams::kQmcShift);
  std::vector<double> shift(d), u(d);
  for (auto& x : shift) x = s.uniform();
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t i = 0; i < d; ++i) u[i] = frac(shift[i] + static_cast<double>(k) * alpha[i]);
    pts.push_back(cube_to_sphere(u.data(), n));
  }
  return pts;
}

CPoint cube_to_sphere(const double* u, std::size_t n) {
  CPoint z(n);
  double remaining = 1.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double x = remaining * (1.0 - std::pow(1.0 - u[k], 1.0 / static_cast<double>(n - 1 - k)));
    z[k] = std::polar(std::sqrt(x), 2.0 * std::numbers::pi * u[n - 1 + k]);
    remaining -= x;
  }
  z[n - 1] = std::polar(std::sqrt(std::max(remaining, 0.0)), 2.0 * std::numbers::pi * u[2 * n - 2]);
  return z;
}

}  // namespace bergman
