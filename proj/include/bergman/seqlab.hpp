#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "bergman/geometry.hpp"

namespace bergman {

/// Finite sequence of distinct interior points with a generation record.
struct PointSeq {
  std::size_t n = 1;
  std::vector<CPoint> points;
  nlohmann::json meta = nlohmann::json::object();

  PointSeq() = default;
  PointSeq(std::size_t n_, std::vector<CPoint> pts, nlohmann::json meta_ = nlohmann::json::object());

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  const CPoint& operator[](std::size_t k) const { return points[k]; }
  /// Throws unless all points are interior, of dimension n, and distinct.
  void validate() const;
  PointSeq subset(std::span<const std::size_t> idx) const;
  PointSeq mapped(const Automorphism& phi) const;
};

PointSeq concat(const PointSeq& a, const PointSeq& b);

struct KReport {
  double value = 0.0;
  std::size_t argmax_k = 0;
  std::vector<double> per_k;
};

/// Greedy separated packing of the spheres |z| = 1 - r^m, m = 1..m_max,
/// keeping pairwise invariant distance >= r.
PointSeq generate_net(std::size_t n, double r, int m_max, std::uint64_t seed);

/// Points of each layer, read back from the generation record.
std::vector<std::size_t> layer_counts(const PointSeq& seq);

/// Minimal pairwise invariant distance; +inf for fewer than two points.
double separation(const PointSeq& seq);

/// sup_k sum_{j != k} (1-|a_k|^2)^p (1-|a_j|^2)^q / |1 - <a_j, a_k>|^{p+q}.
KReport k_value(const PointSeq& seq, double p, double q);

/// Grid sup over z of sum_k (1-|z|^2)^p (1-|a_k|^2)^q / |1 - <z, a_k>|^{p+q}.
double sup_z_k_value(const PointSeq& seq, double p, double q, std::span<const CPoint> z_grid);

struct WindowSet {
  int t_levels = 12;            ///< t = 2^-j for j = 0..t_levels-1
  std::size_t boundary_centers = 256;
  std::uint64_t seed = 0;
};

/// max over windows C_t(zeta) of mass(C_t) / t^q for masses (1-|a_k|^2)^q.
double carleson_ratio(const PointSeq& seq, double q, const WindowSet& windows = {});

/// Same statistic for arbitrary point masses.
double carleson_ratio_masses(const PointSeq& seq, std::span<const double> masses, double q,
                             const WindowSet& windows = {});

/// Grid sup over b of sum_k (1-|b|^2)^{2 beta - n} mass_k / |1 - <b, a_k>|^{2 beta}.
double carleson_beta_test(const PointSeq& seq, std::span<const double> masses, double beta,
                          std::span<const CPoint> b_grid);

struct Partition {
  std::vector<std::size_t> s1, s2;
};

/// Row sums of a nonnegative matrix with compensated summation.
std::vector<double> row_sums(const Eigen::MatrixXd& A);
/// For each index, the sum of A_jk over j in the same class.
std::vector<double> within_class_sums(const Eigen::MatrixXd& A, const Partition& part);

/// Bipartition with within-class row sums <= M/2, M the maximal row sum,
/// found by local search on the cut weight.
Partition mills_partition(const Eigen::MatrixXd& A);

/// A_jk = (1-|a_k|^2)^s (1-|a_j|^2)^s / |1 - <a_j, a_k>|^{2s}, zero diagonal.
Eigen::MatrixXd mills_matrix(const PointSeq& seq, double s);

/// Recursive Mills bisection until every part has K(part, s, s) < target
/// with s = n + 1 + alpha.
std::vector<PointSeq> split_until_interpolating(const PointSeq& seq, double alpha, double target,
                                                int max_depth = 32);

/// a'_k = phi_{a_k}(delta w_k) with w_k uniform in the ball, so d(a_k, a'_k) < delta.
PointSeq perturb(const PointSeq& seq, double delta, std::uint64_t seed);

nlohmann::json to_json(const PointSeq& seq);
PointSeq point_seq_from_json(const nlohmann::json& j);

}  // namespace bergman
