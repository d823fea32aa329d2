#include "bergman/solver.hpp"

#include <algorithm>
#include <cmath>

#include "bergman/parallel.hpp"
#include "bergman/rng.hpp"

namespace bergman {

using nlohmann::json;

std::string to_string(SolveMethod m) { return m == SolveMethod::neumann ? "neumann" : "direct"; }

SolveMethod solve_method_from_string(const std::string& s) {
  if (s == "neumann") return SolveMethod::neumann;
  if (s == "direct") return SolveMethod::direct;
  throw precondition_error("unknown solve method '" + s + "'");
}

double extension_exponent(const SpaceParams& params, double m) {
  params.validate();
  if (!params.is_bergman()) throw precondition_error("extension needs a Bergman space (alpha > -1/p, p < inf)");
  const double n1 = static_cast<double>(params.n) + 1.0;
  if (params.p == 1.0) {
    if (!(m > 0.0)) throw precondition_error("p = 1 extension needs m > 0");
    return n1 + params.alpha + m;
  }
  if (params.p > 1.0) return n1 + params.alpha * params.p;
  throw precondition_error("extension is defined for 1 <= p < inf");
}

ExtensionParams make_extension(const SpaceParams& params, double m) {
  return {m, extension_exponent(params, m)};
}

namespace {

std::vector<double> weights(const PointSeq& seq, double beta) {
  std::vector<double> w(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) w[k] = std::pow(1.0 - seq[k].norm_sq(), beta);
  return w;
}

double weighted_norm(const Eigen::VectorXcd& v, const std::vector<double>& w, double p) {
  CompensatedSum s;
  for (Eigen::Index k = 0; k < v.size(); ++k) s.add(std::pow(w[k] * std::abs(v(k)), p));
  return std::pow(s.value(), 1.0 / p);
}

void check_values(const PointSeq& seq, std::span<const complex> values) {
  if (values.size() != seq.size()) throw precondition_error("one value per sequence point required");
  for (auto v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw precondition_error("non-finite target value");
  }
}

double node_residual(const AnalyticFunction& f, const PointSeq& seq, std::span<const complex> values, double beta) {
  std::vector<double> r(seq.size(), 0.0);
  parallel_for(seq.size(), [&](std::size_t k) {
    r[k] = std::abs(f.eval_unchecked(seq[k]) - values[k]) * std::pow(1.0 - seq[k].norm_sq(), beta);
  });
  return r.empty() ? 0.0 : *std::max_element(r.begin(), r.end());
}

Eigen::PartialPivLU<Eigen::MatrixXcd> factorize(const Eigen::MatrixXcd& B) {
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(B);
  if (B.size() > 0 && !(lu.rcond() > 1e-14)) throw numerical_error("extension matrix is numerically singular");
  return lu;
}

struct NeumannResult {
  Eigen::VectorXcd c;
  int iterations = 0;
  double contraction = 0.0;
  std::vector<double> history;
};

// c = sum_i (Id - B)^i v, with the terms r_i doubling as residuals v - B c_i
NeumannResult neumann(const Eigen::MatrixXcd& B, const Eigen::VectorXcd& v, const std::vector<double>& w, double p,
                      int max_iter) {
  NeumannResult out;
  out.c = v;
  Eigen::VectorXcd r = v - B * v;
  const double v_norm = weighted_norm(v, w, p);
  double prev = weighted_norm(r, w, p);
  out.history.push_back(prev);
  if (v_norm == 0.0) return out;
  while (prev > 1e-17 * v_norm) {
    if (out.iterations >= max_iter) throw numerical_error("Neumann iteration did not converge");
    out.c += r;
    r -= B * r;
    ++out.iterations;
    const double cur = weighted_norm(r, w, p);
    out.history.push_back(cur);
    if (prev > 0.0) out.contraction = std::max(out.contraction, cur / prev);
    if (cur >= prev && cur > 1e-14 * v_norm) throw numerical_error("Neumann iteration is not contracting");
    if (cur >= prev) break;
    prev = cur;
  }
  return out;
}

}  // namespace

ValueSeq restrict(const AnalyticFunction& f, const PointSeq& seq, const SpaceParams& params) {
  params.validate();
  ValueSeq out;
  out.params = params;
  out.values.resize(seq.size());
  parallel_for(seq.size(), [&](std::size_t k) { out.values[k] = f(seq[k]); });
  out.norm = weighted_lp_norm(seq.points, out.values, params.p, params.beta());
  return out;
}

std::vector<AnalyticFunction> kernel_basis(const PointSeq& seq, double s) {
  std::vector<AnalyticFunction> basis;
  basis.reserve(seq.size());
  for (const auto& a : seq.points) {
    basis.push_back(AnalyticFunction::scaled(std::pow(1.0 - a.norm_sq(), s), AnalyticFunction::kernel_power(a, s)));
  }
  return basis;
}

AnalyticFunction combine(std::span<const complex> coeffs, const std::vector<AnalyticFunction>& basis) {
  if (coeffs.size() != basis.size()) throw precondition_error("coefficient count does not match basis");
  std::vector<AnalyticFunction> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] != complex{}) terms.push_back(AnalyticFunction::scaled(coeffs[k], basis[k]));
  }
  return AnalyticFunction::sum(std::move(terms));
}

AnalyticFunction approx_extension(std::span<const complex> values, const PointSeq& seq, const ExtensionParams& ext) {
  check_values(seq, values);
  return combine(values, kernel_basis(seq, ext.s));
}

Eigen::MatrixXcd te_matrix(const PointSeq& seq, const ExtensionParams& ext) {
  const auto basis = kernel_basis(seq, ext.s);
  const std::size_t N = seq.size();
  Eigen::MatrixXcd B(N, N);
  parallel_for(N, [&](std::size_t j) {
    for (std::size_t k = 0; k < N; ++k) B(j, k) = basis[k].eval_unchecked(seq[j]);
  });
  return B;
}

double te_deviation(const Eigen::MatrixXcd& B, const PointSeq& seq, const SpaceParams& params) {
  const std::size_t N = seq.size();
  if (static_cast<std::size_t>(B.rows()) != N) throw precondition_error("matrix does not match sequence");
  if (N == 0) return 0.0;
  const auto w = weights(seq, params.beta());
  Eigen::MatrixXcd H(N, N);
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t k = 0; k < N; ++k) H(j, k) = (j == k ? B(j, k) - 1.0 : B(j, k)) * (w[j] / w[k]);
  }
  auto col_norm = [&] {
    double m = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      CompensatedSum s;
      for (std::size_t j = 0; j < N; ++j) s.add(std::abs(H(j, k)));
      m = std::max(m, s.value());
    }
    return m;
  };
  auto row_norm = [&] {
    double m = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      CompensatedSum s;
      for (std::size_t k = 0; k < N; ++k) s.add(std::abs(H(j, k)));
      m = std::max(m, s.value());
    }
    return m;
  };
  const double p = params.p;
  if (p == 1.0) return col_norm();
  if (p == 2.0) {
    const double asym = (H - H.adjoint()).norm();
    if (asym <= 1e-12 * std::max(1.0, H.norm())) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (H + H.adjoint()), Eigen::EigenvaluesOnly);
      return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(H);
    return svd.singularValues()(0);
  }
  if (std::isinf(p)) return row_norm();
  const double q = p / (p - 1.0);
  return std::pow(col_norm(), 1.0 / p) * std::pow(row_norm(), 1.0 / q);
}

SolveReport interpolate(const PointSeq& seq, std::span<const complex> values, const SpaceParams& params,
                        const ExtensionParams& ext, const SolveOptions& opts) {
  params.validate();
  if (!params.is_bergman()) throw precondition_error("interpolation needs alpha > -1/p and p < inf");
  check_values(seq, values);
  const double beta = params.beta();
  const auto basis = kernel_basis(seq, ext.s);
  const std::size_t N = seq.size();
  Eigen::MatrixXcd B(N, N);
  parallel_for(N, [&](std::size_t j) {
    for (std::size_t k = 0; k < N; ++k) B(j, k) = basis[k].eval_unchecked(seq[j]);
  });
  SolveReport rep;
  rep.ext = ext;
  rep.te_deviation = te_deviation(B, seq, params);
  rep.method = opts.method.value_or(rep.te_deviation < 1.0 ? SolveMethod::neumann : SolveMethod::direct);
  const auto w = weights(seq, beta);
  Eigen::VectorXcd v(N);
  for (std::size_t k = 0; k < N; ++k) v(k) = values[k];
  rep.value_norm = weighted_norm(v, w, params.p);
  Eigen::VectorXcd c;
  if (rep.method == SolveMethod::neumann) {
    if (!(rep.te_deviation < 1.0)) {
      throw precondition_error("Neumann iteration refused: te_deviation = " + std::to_string(rep.te_deviation) +
                               " >= 1; try a larger m, split the sequence, or use the direct solve");
    }
    auto nr = neumann(B, v, w, params.p, opts.max_iter);
    c = std::move(nr.c);
    rep.iterations = nr.iterations;
    rep.contraction = nr.contraction;
    rep.residual_history = std::move(nr.history);
  } else {
    c = N ? Eigen::VectorXcd(factorize(B).solve(v)) : Eigen::VectorXcd();
  }
  rep.coefficients.assign(c.data(), c.data() + c.size());
  rep.interpolant = combine(rep.coefficients, basis);
  rep.residual_max = node_residual(rep.interpolant, seq, values, beta);
  if (opts.compute_norm) rep.norm_estimate = norm(rep.interpolant, params, opts.quad);
  return rep;
}

std::pair<double, double> two_sided_constants(const PointSeq& seq, const SpaceParams& params) {
  if (!(params.p > 1.0) || std::isinf(params.p)) throw precondition_error("two-sided condition needs 1 < p < inf");
  const double p = params.p;
  const double q = p / (p - 1.0);
  const double n1 = static_cast<double>(params.n) + 1.0;
  const double bq = params.alpha * p / q;
  const double e1 = n1 / p + params.alpha;
  const double e2 = n1 / q + bq;
  const double k1 = k_value(seq, e1, e2).value;
  const double k2 = k_value(seq, e2, e1).value;
  return {std::pow(k1, 1.0 / q), std::pow(k2, 1.0 / p)};
}

ExtensionChoice default_extension(const PointSeq& seq, const SpaceParams& params) {
  params.validate();
  ExtensionChoice ch;
  const double n1 = static_cast<double>(params.n) + 1.0;
  if (params.p == 1.0) {
    for (double m : {1.0, 2.0, 4.0, 8.0}) {
      const double k = k_value(seq, m, n1 + params.alpha).value;
      if (k < 1.0) {
        ch.ext = make_extension(params, m);
        ch.method = SolveMethod::neumann;
        ch.criterion = k;
        return ch;
      }
    }
    ch.ext = make_extension(params, 2.0);
    ch.criterion = k_value(seq, 2.0, n1 + params.alpha).value;
    ch.method = SolveMethod::direct;
    return ch;
  }
  ch.ext = make_extension(params, 0.0);
  const auto [c1, c2] = two_sided_constants(seq, params);
  ch.criterion = c1 * c2;
  ch.method = ch.criterion < 1.0 ? SolveMethod::neumann : SolveMethod::direct;
  return ch;
}

AlphaChoice choose_alpha(const PointSeq& seq, std::span<const double> alpha_grid) {
  const double n1 = static_cast<double>(seq.n) + 1.0;
  for (double a : alpha_grid) {
    for (double m : {1.0, 2.0, 4.0, 8.0}) {
      const double k = k_value(seq, m, n1 + a).value;
      if (k < 1.0) return {a, m, k};
    }
  }
  throw numerical_error("no alpha on the grid gives K < 1");
}

DualFamily dual_family(const PointSeq& seq, const SpaceParams& params, const ExtensionParams& ext,
                       const SolveOptions& opts) {
  params.validate();
  if (!params.is_bergman()) throw precondition_error("dual family needs a Bergman space");
  const std::size_t N = seq.size();
  const double beta = params.beta();
  DualFamily fam;
  fam.ext = ext;
  const auto basis = kernel_basis(seq, ext.s);
  const Eigen::MatrixXcd B = te_matrix(seq, ext);
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(N, N);
  for (std::size_t j = 0; j < N; ++j) D(j, j) = std::pow(1.0 - seq[j].norm_sq(), -beta);
  if (opts.method == SolveMethod::neumann) {
    const auto w = weights(seq, beta);
    if (!(te_deviation(B, seq, params) < 1.0)) throw precondition_error("Neumann iteration refused: te_deviation >= 1");
    fam.coefficients.resize(N, N);
    for (std::size_t j = 0; j < N; ++j) fam.coefficients.col(j) = neumann(B, D.col(j), w, params.p, opts.max_iter).c;
  } else {
    fam.coefficients = N ? Eigen::MatrixXcd(factorize(B).solve(D)) : Eigen::MatrixXcd();
  }
  for (std::size_t j = 0; j < N; ++j) {
    std::vector<complex> c(fam.coefficients.col(j).data(), fam.coefficients.col(j).data() + N);
    fam.duals.push_back(combine(c, basis));
  }
  if (opts.compute_norm) {
    for (const auto& f : fam.duals) {
      fam.norms.push_back(norm(f, params, opts.quad).value);
      fam.M = std::max(fam.M, fam.norms.back());
    }
  }
  return fam;
}

bool transfer_regime_ok(const SpaceParams& from, const SpaceParams& to, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (from.n != to.n) return fail("dimensions differ");
  if (std::isinf(from.p) || std::isinf(to.p)) return fail("transfer needs finite exponents");
  const bool a = from.p <= to.p && from.beta() < to.beta();
  const bool b = from.p >= to.p && from.alpha + 1.0 / from.p < to.alpha + 1.0 / to.p;
  if (a || b) return true;
  return fail("neither p <= p' with (n+1)/p+alpha < (n+1)/p'+alpha' (" + std::to_string(from.beta()) + " vs " +
              std::to_string(to.beta()) + ") nor p >= p' with alpha+1/p < alpha'+1/p' holds");
}

AnalyticFunction transfer_basis(const PointSeq& seq, const std::vector<AnalyticFunction>& duals,
                                const SpaceParams& from, const SpaceParams& to, double m,
                                std::span<const complex> lambda) {
  from.validate();
  to.validate();
  std::string why;
  if (!transfer_regime_ok(from, to, &why)) throw precondition_error("transfer regime violated: " + why);
  if (duals.size() != seq.size() || lambda.size() != seq.size()) {
    throw precondition_error("need one dual and one coefficient per point");
  }
  if (!(m > 0.0)) throw precondition_error("m must be positive");
  const double b = from.beta(), bp = to.beta();
  std::vector<AnalyticFunction> terms;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (lambda[k] == complex{}) continue;
    const CPoint& a = seq[k];
    const double w = 1.0 - a.norm_sq();
    AnalyticFunction g = AnalyticFunction::scaled(std::pow(w, b + m), AnalyticFunction::kernel_power(a, bp + m));
    terms.push_back(AnalyticFunction::scaled(lambda[k], g * duals[k]));
  }
  return AnalyticFunction::sum(std::move(terms));
}

double transfer_sum_probe(const PointSeq& seq, const SpaceParams& from, const SpaceParams& to, double m, double A,
                          std::span<const CPoint> z_grid) {
  const double b = from.beta(), bp = to.beta();
  const double n = static_cast<double>(from.n);
  if (!((b + m) * A - n - 1.0 > -1.0)) throw precondition_error("exponent condition ((n+1)/p+alpha+m)A - n - 1 > -1 fails");
  std::vector<double> vals(z_grid.size(), 0.0);
  std::vector<double> w(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) w[k] = std::pow(1.0 - seq[k].norm_sq(), (b + m) * A);
  parallel_for(z_grid.size(), [&](std::size_t i) {
    const CPoint& z = z_grid[i];
    require_interior(z, "grid point");
    CompensatedSum s;
    for (std::size_t k = 0; k < seq.size(); ++k) {
      s.add(w[k] / std::pow(std::abs(1.0 - herm_inner(z, seq[k])), (bp + m) * A));
    }
    vals[i] = s.value() * std::pow(1.0 - z.norm_sq(), -A * (b - bp));
  });
  return vals.empty() ? 0.0 : *std::max_element(vals.begin(), vals.end());
}

SolveReport add_points(const PointSeq& seq, std::span<const complex> values, std::span<const ExtraPoint> extra,
                       const SpaceParams& params, const ExtensionParams& ext, const SolveOptions& opts) {
  SolveOptions base_opts = opts;
  base_opts.compute_norm = false;
  SolveReport rep = interpolate(seq, values, params, ext, base_opts);
  std::vector<CPoint> pts = seq.points;
  std::vector<complex> vals(values.begin(), values.end());
  AnalyticFunction F = rep.interpolant;
  for (const auto& [x, v0] : extra) {
    require_interior(x, "extra point");
    if (x.dim() != seq.n) throw precondition_error("extra point has wrong dimension");
    for (const auto& a : pts) {
      if (a == x) throw precondition_error("extra point already belongs to the sequence");
    }
    std::vector<AnalyticFunction> factors;
    for (const auto& a : pts) {
      const CPoint b = apply_automorphism(x, a);
      const double b2 = b.norm_sq();
      if (std::sqrt(b2) < 1e-6) throw precondition_error("a moved node lies within 1e-6 of the origin; vanishing factor degenerates");
      CPoint mb = b;
      mb *= -1.0;
      // (|b|^2 - <w, b>) / |b|^2
      factors.push_back(AnalyticFunction::scaled(1.0 / b2, AnalyticFunction::affine(b2, mb)));
    }
    const AnalyticFunction f =
        AnalyticFunction::composed(AnalyticFunction::product(std::move(factors)), Automorphism(x));
    const complex gx = F(x);
    if (v0 != gx) F = F + AnalyticFunction::scaled(v0 - gx, f);
    pts.push_back(x);
    vals.push_back(v0);
  }
  const PointSeq all(seq.n, pts);
  rep.interpolant = F;
  rep.residual_max = node_residual(F, all, vals, params.beta());
  rep.note = "augmented with " + std::to_string(extra.size()) + " point(s)";
  if (opts.compute_norm) rep.norm_estimate = norm(F, params, opts.quad);
  return rep;
}

StabilityReport stability_iterate(const PointSeq& seq, const PointSeq& seq_prime, std::span<const complex> values,
                                  const SpaceParams& params, const ExtensionParams& ext, int max_iter, double tol,
                                  const SolveOptions& opts) {
  params.validate();
  if (seq.size() != seq_prime.size()) throw precondition_error("perturbed sequence must have the same length");
  check_values(seq_prime, values);
  if (max_iter < 1) throw precondition_error("max_iter must be >= 1");
  const double beta = params.beta();
  const auto basis = kernel_basis(seq, ext.s);
  const auto lu = factorize(te_matrix(seq, ext));
  const std::size_t N = seq.size();
  StabilityReport out;
  Eigen::VectorXcd v(N), total = Eigen::VectorXcd::Zero(N);
  for (std::size_t k = 0; k < N; ++k) v(k) = values[k];
  const double v0 = weighted_lp_norm(seq_prime.points, values, params.p, beta);
  out.value_norms.push_back(v0);
  int it = 0;
  double cur = v0;
  while (it < max_iter && cur > tol * v0) {
    const Eigen::VectorXcd c = lu.solve(v);
    total += c;
    const AnalyticFunction f = combine(std::vector<complex>(c.data(), c.data() + N), basis);
    for (std::size_t k = 0; k < N; ++k) v(k) -= f.eval_unchecked(seq_prime[k]);
    ++it;
    const double next = weighted_lp_norm(seq_prime.points, std::vector<complex>(v.data(), v.data() + N), params.p, beta);
    out.value_norms.push_back(next);
    if (cur > 1e-12 * v0) out.gamma = std::max(out.gamma, next / cur);
    cur = next;
  }
  out.contracting = out.gamma < 1.0;
  SolveReport& rep = out.report;
  rep.ext = ext;
  rep.method = SolveMethod::direct;
  rep.iterations = it;
  rep.coefficients.assign(total.data(), total.data() + N);
  rep.interpolant = combine(rep.coefficients, basis);
  rep.residual_max = node_residual(rep.interpolant, seq_prime, values, beta);
  rep.contraction = out.gamma;
  rep.residual_history = out.value_norms;
  rep.value_norm = v0;
  if (!out.contracting) rep.note = "observed contraction >= 1; the perturbation is too large";
  if (opts.compute_norm) rep.norm_estimate = norm(rep.interpolant, params, opts.quad);
  return out;
}

std::vector<complex> random_values(const PointSeq& seq, const SpaceParams& params, std::uint64_t seed,
                                   std::uint64_t trial) {
  Stream s(seed, streams::kValues, trial);
  const double beta = params.beta();
  std::vector<complex> v(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) v[k] = s.complex_normal() * std::pow(1.0 - seq[k].norm_sq(), -beta);
  const double nv = weighted_lp_norm(seq.points, v, params.p, beta);
  if (nv > 0.0) {
    for (auto& x : v) x /= nv;
  }
  return v;
}

double interpolation_constant_probe(const PointSeq& seq, const SpaceParams& params, const ExtensionParams& ext,
                                    int trials, std::uint64_t seed, const QuadratureSpec& quad) {
  if (trials < 1) throw precondition_error("trials must be >= 1");
  const auto basis = kernel_basis(seq, ext.s);
  const auto lu = factorize(te_matrix(seq, ext));
  const std::size_t N = seq.size();
  const double n = static_cast<double>(params.n);
  // p = 2 with the reproducing exponent: the kernels are orthogonal-projection
  // kernels of the weighted measure, so the norm is a finite Gram form
  const bool gram = params.p == 2.0 && params.is_bergman() && 2.0 * params.alpha > -1.0 &&
                    std::abs(ext.s - (n + 1.0 + 2.0 * params.alpha)) <= 1e-12 * ext.s;
  Eigen::MatrixXcd G;
  if (gram) {
    G.resize(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    std::vector<double> w(N);
    for (std::size_t k = 0; k < N; ++k) w[k] = std::pow(one_minus_norm_sq(seq[k]), ext.s);
    const double c = reproducing_constant(params);
    parallel_for(N, [&](std::size_t j) {
      for (std::size_t k = 0; k < N; ++k) {
        G(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
            w[j] * w[k] * std::pow(1.0 - herm_inner(seq[j], seq[k]), -ext.s) / c;
      }
    });
  }
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto v = random_values(seq, params, seed, static_cast<std::uint64_t>(t));
    Eigen::VectorXcd vv(N);
    for (std::size_t k = 0; k < N; ++k) vv(k) = v[k];
    const Eigen::VectorXcd c = lu.solve(vv);
    const double nf = gram ? std::sqrt(std::max(0.0, (c.adjoint() * G * c)(0, 0).real()))
                           : norm(combine(std::vector<complex>(c.data(), c.data() + N), basis), params, quad).value;
    const double nv = weighted_lp_norm(seq.points, v, params.p, params.beta());
    best = std::max(best, nf / nv);
  }
  return best;
}

json to_json(const SolveReport& r) {
  json coeffs = json::array();
  for (auto c : r.coefficients) coeffs.push_back(complex_to_json(c));
  return {{"interpolant", r.interpolant.to_json()},
          {"coefficients", coeffs},
          {"residual_max", r.residual_max},
          {"te_deviation", r.te_deviation},
          {"iterations", r.iterations},
          {"norm_estimate",
           {{"value", r.norm_estimate.value},
            {"stderr", r.norm_estimate.std_error},
            {"samples_used", r.norm_estimate.samples_used},
            {"diagnostic", r.norm_estimate.diagnostic}}},
          {"method", to_string(r.method)},
          {"contraction", r.contraction},
          {"residual_history", r.residual_history},
          {"extension", {{"m", r.ext.m}, {"s", r.ext.s}}},
          {"value_norm", r.value_norm},
          {"note", r.note}};
}

}  // namespace bergman
