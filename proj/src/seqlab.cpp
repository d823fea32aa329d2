#include "bergman/seqlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bergman/analytic_function.hpp"
#include "bergman/parallel.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/rng.hpp"

namespace bergman {

using nlohmann::json;

PointSeq::PointSeq(std::size_t n_, std::vector<CPoint> pts, json meta_)
    : n(n_), points(std::move(pts)), meta(std::move(meta_)) {
  validate();
}

void PointSeq::validate() const {
  if (n < 1 || n > CPoint::kMaxDim) throw precondition_error("dimension n out of range");
  for (const auto& z : points) {
    if (z.dim() != n) throw precondition_error("sequence point has wrong dimension");
    require_interior(z, "sequence point");
  }
  // distinctness, sorted copy keeps this O(N log N)
  std::vector<std::size_t> idx(points.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  auto key = [&](std::size_t i) {
    std::vector<double> v;
    for (std::size_t d = 0; d < n; ++d) {
      v.push_back(points[i][d].real());
      v.push_back(points[i][d].imag());
    }
    return v;
  };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (points[idx[i]] == points[idx[i - 1]]) throw precondition_error("sequence points must be distinct");
  }
}

PointSeq PointSeq::subset(std::span<const std::size_t> idx) const {
  PointSeq out;
  out.n = n;
  out.meta = meta;
  out.meta.erase("layer_counts");
  for (auto i : idx) out.points.push_back(points.at(i));
  return out;
}

PointSeq PointSeq::mapped(const Automorphism& phi) const {
  PointSeq out;
  out.n = n;
  out.meta = meta;
  for (const auto& z : points) out.points.push_back(phi(z));
  return out;
}

PointSeq concat(const PointSeq& a, const PointSeq& b) {
  if (a.n != b.n) throw precondition_error("cannot concatenate sequences of different dimension");
  std::vector<CPoint> pts = a.points;
  pts.insert(pts.end(), b.points.begin(), b.points.end());
  return PointSeq(a.n, std::move(pts), json{{"method", "concat"}});
}

PointSeq generate_net(std::size_t n, double r, int m_max, std::uint64_t seed) {
  if (!(r > 0.0 && r < 1.0)) throw precondition_error("r must lie in (0,1)");
  if (m_max < 1) throw precondition_error("m_max must be >= 1");
  struct Placed {
    CPoint z;
    double w;  // 1 - |z|^2
  };
  std::vector<std::vector<Placed>> layers;
  std::vector<double> radius;
  std::vector<std::size_t> counts;
  const double cut = 1.0 - r * r;  // d < r  <=>  1 - d^2 > cut
  for (int m = 1; m <= m_max; ++m) {
    const double rho = 1.0 - std::pow(r, m);
    if (!(rho < 1.0 - kBoundaryGuard)) throw precondition_error("layer radius reaches the boundary");
    // d(a,b) >= d(|a|,|b|), so only layers radially closer than r matter
    std::vector<std::size_t> near;
    for (std::size_t l = 0; l < layers.size(); ++l) {
      if (std::abs(radius[l] - rho) / (1.0 - radius[l] * rho) < r) near.push_back(l);
    }
    layers.emplace_back();
    radius.push_back(rho);
    near.push_back(layers.size() - 1);
    Stream s(seed, streams::kNet, static_cast<std::uint64_t>(m));
    std::size_t misses = 0;
    for (;;) {
      CPoint c = draw_sphere_point(s, n);
      c *= rho;
      const double wc = 1.0 - rho * rho;
      bool ok = true;
      for (std::size_t l : near) {
        for (const auto& b : layers[l]) {
          if (wc * b.w > cut * std::norm(1.0 - herm_inner(c, b.z))) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (ok) {
        layers.back().push_back({c, wc});
        misses = 0;
      } else if (++misses >= std::max<std::size_t>(500, 20 * layers.back().size())) {
        break;
      }
    }
    counts.push_back(layers.back().size());
  }
  std::vector<CPoint> pts;
  for (const auto& l : layers) {
    for (const auto& b : l) pts.push_back(b.z);
  }
  json meta{{"method", "generate_net"}, {"r", r}, {"m_max", m_max}, {"seed", seed}, {"layer_counts", counts}};
  return PointSeq(n, std::move(pts), std::move(meta));
}

std::vector<std::size_t> layer_counts(const PointSeq& seq) {
  if (!seq.meta.contains("layer_counts")) return {};
  return seq.meta["layer_counts"].get<std::vector<std::size_t>>();
}

double separation(const PointSeq& seq) {
  if (seq.size() < 2) return std::numeric_limits<double>::infinity();
  std::vector<double> best(seq.size(), std::numeric_limits<double>::infinity());
  parallel_for(seq.size(), [&](std::size_t k) {
    for (std::size_t j = k + 1; j < seq.size(); ++j) best[k] = std::min(best[k], inv_distance(seq[k], seq[j]));
  });
  return *std::min_element(best.begin(), best.end());
}

KReport k_value(const PointSeq& seq, double p, double q) {
  if (!(p > 0.0 && q > 0.0)) throw precondition_error("K needs positive exponents");
  KReport rep;
  const std::size_t N = seq.size();
  rep.per_k.assign(N, 0.0);
  std::vector<double> w(N);
  for (std::size_t k = 0; k < N; ++k) w[k] = 1.0 - seq[k].norm_sq();
  parallel_for(N, [&](std::size_t k) {
    CompensatedSum s;
    const double wk = std::pow(w[k], p);
    for (std::size_t j = 0; j < N; ++j) {
      if (j == k) continue;
      s.add(wk * std::pow(w[j], q) / std::pow(std::abs(1.0 - herm_inner(seq[j], seq[k])), p + q));
    }
    rep.per_k[k] = s.value();
  });
  for (std::size_t k = 0; k < N; ++k) {
    if (rep.per_k[k] > rep.value) {
      rep.value = rep.per_k[k];
      rep.argmax_k = k;
    }
  }
  return rep;
}

double sup_z_k_value(const PointSeq& seq, double p, double q, std::span<const CPoint> z_grid) {
  if (!(p > 0.0 && q > 0.0)) throw precondition_error("exponents must be positive");
  std::vector<double> vals(z_grid.size(), 0.0);
  std::vector<double> w(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) w[k] = std::pow(1.0 - seq[k].norm_sq(), q);
  parallel_for(z_grid.size(), [&](std::size_t i) {
    const CPoint& z = z_grid[i];
    require_interior(z, "grid point");
    const double wz = std::pow(1.0 - z.norm_sq(), p);
    CompensatedSum s;
    for (std::size_t k = 0; k < seq.size(); ++k) {
      s.add(wz * w[k] / std::pow(std::abs(1.0 - herm_inner(z, seq[k])), p + q));
    }
    vals[i] = s.value();
  });
  return vals.empty() ? 0.0 : *std::max_element(vals.begin(), vals.end());
}

double carleson_ratio_masses(const PointSeq& seq, std::span<const double> masses, double q,
                             const WindowSet& windows) {
  if (masses.size() != seq.size()) throw precondition_error("one mass per point required");
  if (seq.empty()) return 0.0;
  auto centers = sphere_point_set(seq.n, windows.boundary_centers, windows.seed);
  for (const auto& a : seq.points) {
    if (a.norm() > 0.0) {
      CPoint c = a;
      c *= 1.0 / a.norm();
      centers.push_back(c);
    }
  }
  std::vector<double> best(centers.size(), 0.0);
  parallel_for(centers.size(), [&](std::size_t c) {
    std::vector<double> gap(seq.size());
    for (std::size_t k = 0; k < seq.size(); ++k) gap[k] = std::abs(1.0 - herm_inner(seq[k], centers[c]));
    for (int j = 0; j < windows.t_levels; ++j) {
      const double t = std::ldexp(1.0, -j);
      CompensatedSum mass;
      for (std::size_t k = 0; k < seq.size(); ++k) {
        if (gap[k] < t) mass.add(masses[k]);
      }
      best[c] = std::max(best[c], mass.value() / std::pow(t, q));
    }
  });
  return *std::max_element(best.begin(), best.end());
}

double carleson_ratio(const PointSeq& seq, double q, const WindowSet& windows) {
  std::vector<double> masses(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) masses[k] = std::pow(1.0 - seq[k].norm_sq(), q);
  return carleson_ratio_masses(seq, masses, q, windows);
}

double carleson_beta_test(const PointSeq& seq, std::span<const double> masses, double beta,
                          std::span<const CPoint> b_grid) {
  const double n = static_cast<double>(seq.n);
  if (!(beta > n / 2.0)) throw precondition_error("beta must exceed n/2");
  if (masses.size() != seq.size()) throw precondition_error("one mass per point required");
  std::vector<double> vals(b_grid.size(), 0.0);
  parallel_for(b_grid.size(), [&](std::size_t i) {
    const CPoint& b = b_grid[i];
    require_interior(b, "grid point");
    const double wb = std::pow(1.0 - b.norm_sq(), 2.0 * beta - n);
    CompensatedSum s;
    for (std::size_t k = 0; k < seq.size(); ++k) {
      s.add(wb * masses[k] / std::pow(std::abs(1.0 - herm_inner(b, seq[k])), 2.0 * beta));
    }
    vals[i] = s.value();
  });
  return vals.empty() ? 0.0 : *std::max_element(vals.begin(), vals.end());
}

std::vector<double> row_sums(const Eigen::MatrixXd& A) {
  std::vector<double> out(A.rows());
  for (Eigen::Index k = 0; k < A.rows(); ++k) {
    CompensatedSum s;
    for (Eigen::Index j = 0; j < A.cols(); ++j) s.add(A(j, k));
    out[k] = s.value();
  }
  return out;
}

std::vector<double> within_class_sums(const Eigen::MatrixXd& A, const Partition& part) {
  std::vector<double> out(A.rows(), 0.0);
  for (const auto* cls : {&part.s1, &part.s2}) {
    for (auto k : *cls) {
      CompensatedSum s;
      for (auto j : *cls) s.add(A(j, k));
      out[k] = s.value();
    }
  }
  return out;
}

Partition mills_partition(const Eigen::MatrixXd& A) {
  const Eigen::Index N = A.rows();
  if (A.cols() != N) throw precondition_error("matrix must be square");
  for (Eigen::Index i = 0; i < N; ++i) {
    if (A(i, i) != 0.0) throw precondition_error("diagonal must vanish");
    for (Eigen::Index j = 0; j < N; ++j) {
      if (!(A(i, j) >= 0.0) || !std::isfinite(A(i, j))) throw precondition_error("entries must be finite and nonnegative");
      if (A(i, j) != A(j, i)) throw precondition_error("matrix must be symmetric");
    }
  }
  std::vector<int> side(N, 0);
  // greedy start: place each index opposite to its heavier neighbours
  for (Eigen::Index k = 0; k < N; ++k) {
    double w0 = 0.0, w1 = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) (side[j] == 0 ? w0 : w1) += A(j, k);
    side[k] = w0 > w1 ? 1 : 0;
  }
  auto sums = [&](Eigen::Index k) {
    CompensatedSum within, cross;
    for (Eigen::Index j = 0; j < N; ++j) (side[j] == side[k] ? within : cross).add(A(j, k));
    return std::pair{within.value(), cross.value()};
  };
  // each move strictly increases the cut weight, so this terminates
  for (bool moved = true; moved;) {
    moved = false;
    for (Eigen::Index k = 0; k < N; ++k) {
      const auto [within, cross] = sums(k);
      if (within > cross) {
        side[k] ^= 1;
        moved = true;
      }
    }
  }
  Partition part;
  for (Eigen::Index k = 0; k < N; ++k) (side[k] == 0 ? part.s1 : part.s2).push_back(static_cast<std::size_t>(k));
  return part;
}

Eigen::MatrixXd mills_matrix(const PointSeq& seq, double s) {
  const std::size_t N = seq.size();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  std::vector<double> w(N);
  for (std::size_t k = 0; k < N; ++k) w[k] = std::pow(1.0 - seq[k].norm_sq(), s);
  parallel_for(N, [&](std::size_t k) {
    for (std::size_t j = 0; j < N; ++j) {
      if (j != k) A(j, k) = w[k] * w[j] / std::pow(std::norm(1.0 - herm_inner(seq[j], seq[k])), s);
    }
  });
  // exact symmetry: |1-<a_j,a_k>| is symmetric only up to rounding
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t j = k + 1; j < N; ++j) A(k, j) = A(j, k);
  }
  return A;
}

std::vector<PointSeq> split_until_interpolating(const PointSeq& seq, double alpha, double target,
                                                int max_depth) {
  if (!(alpha > -1.0)) throw precondition_error("alpha must exceed -1");
  if (!(target > 0.0 && target <= 1.0)) throw precondition_error("target must lie in (0,1]");
  const double s = static_cast<double>(seq.n) + 1.0 + alpha;
  const double k0 = k_value(seq, s, s).value;
  if (!std::isfinite(k0)) throw precondition_error("K is not finite; not a finite union of separated sequences");
  std::vector<PointSeq> out;
  auto rec = [&](auto&& self, const PointSeq& part, int depth) -> void {
    if (k_value(part, s, s).value < target) {
      out.push_back(part);
      return;
    }
    if (depth >= max_depth) throw numerical_error("splitting exceeded the depth cap");
    const Partition pp = mills_partition(mills_matrix(part, s));
    self(self, part.subset(pp.s1), depth + 1);
    self(self, part.subset(pp.s2), depth + 1);
  };
  rec(rec, seq, 0);
  return out;
}

PointSeq perturb(const PointSeq& seq, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0 && delta < 1.0)) throw precondition_error("delta must lie in [0,1)");
  PointSeq out;
  out.n = seq.n;
  out.meta = seq.meta;
  out.meta["perturbation"] = json{{"delta", delta}, {"seed", seed}};
  for (std::size_t k = 0; k < seq.size(); ++k) {
    Stream s(seed, streams::kPerturb, k);
    CPoint w = draw_ball_point(s, seq.n);
    w *= delta;
    CPoint a = apply_automorphism(seq[k], w);
    if (delta > 0.0 && !(inv_distance(seq[k], a) < delta)) throw numerical_error("perturbation left E(a_k, delta)");
    out.points.push_back(delta == 0.0 ? seq[k] : a);
  }
  return out;
}

json to_json(const PointSeq& seq) {
  json pts = json::array();
  for (const auto& z : seq.points) pts.push_back(point_to_json(z));
  return {{"n", seq.n}, {"points", pts}, {"meta", seq.meta}};
}

PointSeq point_seq_from_json(const json& j) {
  const auto n = j.at("n").get<std::size_t>();
  std::vector<CPoint> pts;
  for (const auto& p : j.at("points")) pts.push_back(point_from_json(p));
  return PointSeq(n, std::move(pts), j.value("meta", json::object()));
}

}  // namespace bergman
