#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bergman/geometry.hpp"

namespace bergman {

enum class QuadMethod { product, monte_carlo, quasi_monte_carlo };

std::string to_string(QuadMethod m);
QuadMethod quad_method_from_string(const std::string& s);

struct QuadratureSpec {
  QuadMethod method = QuadMethod::product;
  /// (Q)MC: total points.
  std::size_t samples = 4096;
  /// product: largest angular rule per radius.
  std::size_t angular_budget = std::size_t{1} << 16;
  std::uint64_t seed = 0;
  /// Advisory; the product rule uses it to stop adding radial panels.
  double target_rel_tol = 1e-12;
  /// When set, the integrand is pulled back through the automorphism
  /// exchanging 0 and this point, which concentrates nodes near it.
  std::optional<CPoint> pole;

  void validate() const;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples_used = 0;
  /// Empty unless something noteworthy happened (divergence, truncation).
  std::string diagnostic;
};

using RealIntegrand = std::function<double(const CPoint&)>;

/// Integral of f over B^n against normalized Lebesgue measure dm.
Estimate ball_integral(const RealIntegrand& f, std::size_t n, const QuadratureSpec& spec);

/// Integral of f over the unit sphere against normalized surface measure.
Estimate sphere_integral(const RealIntegrand& f, std::size_t n, const QuadratureSpec& spec);

/// Integral of f over E(center, r) against the invariant measure
/// dtau = (1-|z|^2)^{-(n+1)} dm.
Estimate tau_integral(const RealIntegrand& f, const CPoint& center, double r,
                      const QuadratureSpec& spec);

std::vector<CPoint> sample_ball(std::size_t n, std::size_t count, std::uint64_t seed);
std::vector<CPoint> sample_sphere(std::size_t n, std::size_t count, std::uint64_t seed);

/// Deterministic low-discrepancy point set on the sphere (first `count`
/// points of a shifted Kronecker sequence; equispaced circle when n = 1).
std::vector<CPoint> sphere_point_set(std::size_t n, std::size_t count, std::uint64_t seed);

/// Maps a point of the unit cube [0,1)^{2n-1} to the sphere, pushing
/// Lebesgue measure forward to sigma.
CPoint cube_to_sphere(const double* u, std::size_t n);

}  // namespace bergman
