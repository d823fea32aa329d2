#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "bergman/seqlab.hpp"
#include "bergman/spaces.hpp"

namespace bergman {

enum class SolveMethod { neumann, direct };
std::string to_string(SolveMethod m);
SolveMethod solve_method_from_string(const std::string& s);

struct ExtensionParams {
  double m = 1.0;  ///< auxiliary exponent (p = 1 only)
  double s = 0.0;  ///< kernel exponent
};

/// s = n+1+alpha+m for p = 1, s = n+1+alpha p for 1 < p < inf.
double extension_exponent(const SpaceParams& params, double m);
ExtensionParams make_extension(const SpaceParams& params, double m);

struct SolveReport {
  AnalyticFunction interpolant;
  std::vector<complex> coefficients;
  double residual_max = 0.0;
  double te_deviation = 0.0;
  int iterations = 0;
  Estimate norm_estimate;
  SolveMethod method = SolveMethod::direct;
  /// Largest observed ratio of successive weighted residual norms (Neumann).
  double contraction = 0.0;
  std::vector<double> residual_history;
  ExtensionParams ext;
  double value_norm = 0.0;
  std::string note;
};

/// {f(a_k)} with its weighted l^p_beta norm.
ValueSeq restrict(const AnalyticFunction& f, const PointSeq& seq, const SpaceParams& params);

/// The kernel quotients ((1-|a_k|^2)/(1 - <z, a_k>))^s, one per point.
std::vector<AnalyticFunction> kernel_basis(const PointSeq& seq, double s);

/// E(v) = sum_k v_k ((1-|a_k|^2)/(1 - <z, a_k>))^s.
AnalyticFunction approx_extension(std::span<const complex> values, const PointSeq& seq,
                                  const ExtensionParams& ext);
AnalyticFunction combine(std::span<const complex> coeffs, const std::vector<AnalyticFunction>& basis);

/// B_jk = ((1-|a_k|^2)/(1 - <a_j, a_k>))^s, so (TE v)_j = sum_k B_jk v_k.
Eigen::MatrixXcd te_matrix(const PointSeq& seq, const ExtensionParams& ext);

/// Operator norm of B - Id on l^p weighted by (1-|a_k|^2)^beta: exact for
/// p = 1 (column sums) and p = 2 (Hermitian eigenvalues), a Riesz-Thorin bound
/// otherwise.
double te_deviation(const Eigen::MatrixXcd& B, const PointSeq& seq, const SpaceParams& params);

struct SolveOptions {
  std::optional<SolveMethod> method;  ///< empty: Neumann when it provably converges
  bool compute_norm = false;
  QuadratureSpec quad;
  int max_iter = 10000;
};

SolveReport interpolate(const PointSeq& seq, std::span<const complex> values, const SpaceParams& params,
                        const ExtensionParams& ext, const SolveOptions& opts = {});

struct ExtensionChoice {
  ExtensionParams ext;
  SolveMethod method = SolveMethod::direct;
  double criterion = 0.0;  ///< K for p = 1, c1 c2 for p > 1
};

/// p = 1: smallest m in {1,2,4,8} with K(seq, m, n+1+alpha) < 1 (Neumann),
/// else m = 2 with a direct solve. p > 1: c1 = K1^{1/q}, c2 = K2^{1/p}.
ExtensionChoice default_extension(const PointSeq& seq, const SpaceParams& params);

/// c1, c2 of the two-sided K condition for 1 < p < inf.
std::pair<double, double> two_sided_constants(const PointSeq& seq, const SpaceParams& params);

struct AlphaChoice {
  double alpha = 0.0;
  double m = 1.0;
  double k = 0.0;
};
/// Smallest alpha on the grid with K(seq, m, n+1+alpha) < 1 for some m in {1,2,4,8}.
AlphaChoice choose_alpha(const PointSeq& seq, std::span<const double> alpha_grid);

struct DualFamily {
  std::vector<AnalyticFunction> duals;
  Eigen::MatrixXcd coefficients;  ///< column j: coefficients of f_j
  std::vector<double> norms;      ///< filled when requested
  double M = 0.0;                 ///< max norm
  ExtensionParams ext;
};

/// f_j(a_k) = delta_jk (1-|a_j|^2)^{-beta}.
DualFamily dual_family(const PointSeq& seq, const SpaceParams& params, const ExtensionParams& ext,
                       const SolveOptions& opts = {});

/// Whether (p, alpha) -> (p', alpha') is covered by one of the two transfer regimes.
bool transfer_regime_ok(const SpaceParams& from, const SpaceParams& to, std::string* why = nullptr);

/// G = sum_k lambda_k g_k f_k with
/// g_k = (1-|a_k|^2)^{beta+m} / (1 - <z, a_k>)^{beta'+m}.
AnalyticFunction transfer_basis(const PointSeq& seq, const std::vector<AnalyticFunction>& duals,
                                const SpaceParams& from, const SpaceParams& to, double m,
                                std::span<const complex> lambda);

/// Grid sup of sum_k |g_k(z)|^A (1-|z|^2)^{-A(beta - beta')}.
double transfer_sum_probe(const PointSeq& seq, const SpaceParams& from, const SpaceParams& to, double m, double A,
                          std::span<const CPoint> z_grid);

struct ExtraPoint {
  CPoint z;
  complex value;
};

/// Adds points one at a time: F = g + (v0 - g(x)) h o phi_x, with h the
/// polynomial vanishing at phi_x(a_k) and h(0) = 1.
SolveReport add_points(const PointSeq& seq, std::span<const complex> values, std::span<const ExtraPoint> extra,
                       const SpaceParams& params, const ExtensionParams& ext, const SolveOptions& opts = {});

struct StabilityReport {
  SolveReport report;
  double gamma = 0.0;  ///< max ratio of successive value norms
  std::vector<double> value_norms;
  bool contracting = true;
};

/// Solves on seq_prime by repeatedly interpolating on seq and correcting.
StabilityReport stability_iterate(const PointSeq& seq, const PointSeq& seq_prime, std::span<const complex> values,
                                  const SpaceParams& params, const ExtensionParams& ext, int max_iter,
                                  double tol = 1e-13, const SolveOptions& opts = {});

/// max over random values of unit l^p_beta norm of ||interpolant|| / ||v||.
double interpolation_constant_probe(const PointSeq& seq, const SpaceParams& params, const ExtensionParams& ext,
                                    int trials, std::uint64_t seed, const QuadratureSpec& quad);

/// Random values with unit weighted norm, deterministic in (seed, trial).
std::vector<complex> random_values(const PointSeq& seq, const SpaceParams& params, std::uint64_t seed,
                                   std::uint64_t trial);

nlohmann::json to_json(const SolveReport& r);

}  // namespace bergman
