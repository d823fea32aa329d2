#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bergman/seqlab.hpp"
#include "bergman/solver.hpp"

namespace bergman {

struct DensityReport {
  double density = 0.0;
  std::vector<std::pair<double, double>> r_profile;
  CPoint z_argmax;
  /// Slope of the profile against j for r = 1 - 2^-j over the last 3 values.
  double trend_slope = 0.0;
  std::string note;
};

/// Default radii 1 - 2^-j, j = 2..j_max.
std::vector<double> dyadic_radii(int j_min, int j_max);

/// The sequence points plus a dyadic radial-angular grid in the disk.
std::vector<CPoint> density_grid(const PointSeq& seq, int levels = 12, std::size_t angular = 64);

/// For each r, the grid sup over z of
/// sum_{1/2 < |phi_z(a_k)| < r} log(1/|phi_z(a_k)|) / log(1/(1-r)).
DensityReport seip_density(const PointSeq& seq, std::span<const double> r_list, std::span<const CPoint> z_grid);

enum class Verdict { interpolating, not_interpolating, inconclusive };
std::string to_string(Verdict v);

struct VerdictReport {
  Verdict verdict = Verdict::inconclusive;
  double density = 0.0;
  double threshold = 0.0;
  DensityReport detail;
};

/// Compares the density estimate with alpha + 1/p; within 0.05 is inconclusive.
VerdictReport density_verdict(const PointSeq& seq, double p, double alpha, std::span<const double> r_list,
                              std::span<const CPoint> z_grid);

struct VanishingReport {
  AnalyticFunction f;
  SolveReport inner;  ///< interpolation of 1/a_k
  double max_node_value = 0.0;
  double inverse_norm = 0.0;  ///< ||{1/a_k}|| in the weighted sequence norm
};

/// f(z) = 1 - z f0(z) with f0 interpolating 1/a_k at every node (n = 1),
/// so f vanishes on the sequence and f(0) = 1.
VanishingReport vanishing_at_origin(const PointSeq& seq, const SpaceParams& params, const ExtensionParams& ext,
                                    double delta0, const SolveOptions& opts = {});

}  // namespace bergman
