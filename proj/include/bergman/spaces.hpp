#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "bergman/analytic_function.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class SpaceKind { bergman, hardy, growth };
std::string to_string(SpaceKind k);

/// (n, p, alpha) with p in (0, inf]. beta = (n+1)/p + alpha.
struct SpaceParams {
  std::size_t n = 1;
  double p = 2.0;
  double alpha = 0.0;

  SpaceParams() = default;
  SpaceParams(std::size_t n_, double p_, double alpha_);

  SpaceKind kind() const;
  double beta() const;
  bool is_bergman() const { return kind() == SpaceKind::bergman; }
  /// Throws unless the triple names a space: alpha >= -1/p.
  void validate() const;
  /// Conjugate exponent p/(p-1) (inf for p = 1).
  double conjugate() const;
};

/// ||v||_{p,beta} = (sum_k [(1-|a_k|^2)^beta |v_k|]^p)^{1/p}, sup for p = inf.
double weighted_lp_norm(std::span<const CPoint> points, std::span<const complex> values, double p,
                        double beta);

struct ValueSeq {
  std::vector<complex> values;
  SpaceParams params;
  double norm = 0.0;
};

/// K_z(zeta) = Gamma(n+ap+1)/(Gamma(n+1)Gamma(ap+1)) (1 - <zeta, z>)^{-(n+1+ap)}.
AnalyticFunction reproducing_kernel(const CPoint& z, const SpaceParams& params);
double reproducing_constant(const SpaceParams& params);

/// ||f||_{p,alpha}. Bergman: quadrature of (1-|z|^2)^{ap}|f|^p. Growth: a grid
/// sup (lower bound, with a stability note). Hardy: the last M_p(f, r) on the
/// grid r = 1 - 2^-j.
Estimate norm(const AnalyticFunction& f, const SpaceParams& params, const QuadratureSpec& spec);

/// Integral mean M_p(f, r)^p over the sphere.
Estimate integral_mean(const AnalyticFunction& f, std::size_t n, double p, double r,
                       const QuadratureSpec& spec);

struct GrowthSup {
  double value = 0.0;
  CPoint argmax;
  bool stable = false;
};
/// sup_z (1-|z|^2)^alpha |f(z)| over a boundary-graded grid with local refinement.
GrowthSup growth_sup(const AnalyticFunction& f, std::size_t n, double alpha, int levels = 320);

/// T_phi f = ((1-|b|^2)/(1-<z,b>)^2)^beta f o phi with b = phi^{-1}(0).
AnalyticFunction apply_Tphi(const AnalyticFunction& f, const Automorphism& phi, const SpaceParams& params);

/// max over the grid of |f(z)| (1-|z|^2)^beta / norm_value.
double pointwise_bound_probe(const AnalyticFunction& f, const SpaceParams& params,
                             std::span<const CPoint> grid, double norm_value);
double pointwise_bound_probe(const AnalyticFunction& f, const SpaceParams& params,
                             std::span<const CPoint> grid, const QuadratureSpec& spec);

/// Centers eta_k of a maximal family of disjoint Koranyi balls K(eta_k, t).
std::vector<CPoint> koranyi_packing(std::size_t n, double t, std::uint64_t seed);

/// F(z) = sum_k (1 - (1-r) <z, eta_k>)^{-gamma} over a Koranyi packing with
/// radius kappa * r.
AnalyticFunction witness_F(double gamma, double r, double kappa, std::size_t n, std::uint64_t seed = 0);

/// Boundary-graded test grid: radii 1 - 2^{-j/per_octave} for j < levels,
/// `angular` sphere directions per radius, plus the given extra points.
std::vector<CPoint> graded_grid(std::size_t n, int levels, int per_octave, std::size_t angular,
                                std::uint64_t seed, std::span<const CPoint> extra = {});

}  // namespace bergman
