#include "bergman/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "bergman/rng.hpp"

namespace bergman {

CPoint::CPoint(std::size_t n) : n_(n) {
  if (n == 0 || n > kMaxDim) {
    throw precondition_error("dimension must be in [1, " + std::to_string(kMaxDim) + "]");
  }
}

CPoint::CPoint(std::initializer_list<complex> coords)
    : CPoint(std::span<const complex>(coords.begin(), coords.size())) {}

CPoint::CPoint(std::span<const complex> coords) : CPoint(coords.size()) {
  for (std::size_t i = 0; i < n_; ++i) {
    if (!std::isfinite(coords[i].real()) || !std::isfinite(coords[i].imag())) {
      throw precondition_error("non-finite coordinate");
    }
    c_[i] = coords[i];
  }
}

double CPoint::norm_sq() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += std::norm(c_[i]);
  return s;
}

double CPoint::norm() const { return std::sqrt(norm_sq()); }

bool CPoint::is_zero() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (c_[i] != complex{}) return false;
  }
  return true;
}

CPoint& CPoint::operator+=(const CPoint& o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < n_; ++i) c_[i] += o.c_[i];
  return *this;
}

CPoint& CPoint::operator-=(const CPoint& o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < n_; ++i) c_[i] -= o.c_[i];
  return *this;
}

CPoint& CPoint::operator*=(complex s) {
  for (std::size_t i = 0; i < n_; ++i) c_[i] *= s;
  return *this;
}

bool operator==(const CPoint& a, const CPoint& b) {
  if (a.n_ != b.n_) return false;
  return std::equal(a.c_.begin(), a.c_.begin() + a.n_, b.c_.begin());
}

CPoint CPoint::basis(std::size_t n, std::size_t k) {
  CPoint e(n);
  if (k >= n) throw precondition_error("basis index out of range");
  e[k] = 1.0;
  return e;
}

void require_same_dim(const CPoint& a, const CPoint& b) {
  if (a.dim() != b.dim()) {
    throw precondition_error("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                             std::to_string(b.dim()));
  }
}

void require_interior(const CPoint& z, const char* what) {
  if (!(z.norm() < 1.0 - kBoundaryGuard)) {
    throw precondition_error(std::string(what) + " must lie in the open unit ball");
  }
}

complex herm_inner(const CPoint& z, const CPoint& w) {
  require_same_dim(z, w);
  complex s{};
  for (std::size_t i = 0; i < z.dim(); ++i) s += z[i] * std::conj(w[i]);
  return s;
}

namespace {

// 1 - sum x_i y_i in double-double (fma products, two-sum accumulation)
double one_minus_dot(std::span<const double> x, std::span<const double> y) {
  double hi = 1.0, lo = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double p = x[i] * y[i];
    const double pe = std::fma(x[i], y[i], -p);
    const double t = hi - p;
    const double bv = t - hi;
    lo += (hi - (t - bv)) + (-p - bv) - pe;
    hi = t;
  }
  return hi + lo;
}

// 1 - <z, w> with the real part accumulated in double-double
complex one_minus_inner(const CPoint& z, const CPoint& w) {
  std::array<double, 2 * CPoint::kMaxDim> x{}, y{};
  for (std::size_t i = 0; i < z.dim(); ++i) {
    x[2 * i] = z[i].real();
    x[2 * i + 1] = z[i].imag();
    y[2 * i] = w[i].real();
    y[2 * i + 1] = w[i].imag();
  }
  const std::size_t m = 2 * z.dim();
  return {one_minus_dot({x.data(), m}, {y.data(), m}), -herm_inner(z, w).imag()};
}

}  // namespace

CPoint apply_automorphism(const CPoint& a, const CPoint& z) {
  require_same_dim(a, z);
  require_interior(a, "automorphism center");
  // P_a z + s Q_a z = s z + (1-s) <z,a>/|a|^2 a, and (1-s)/|a|^2 = 1/(1+s),
  // which stays finite at a = 0.
  const double s = std::sqrt(one_minus_norm_sq(a));
  const complex za = herm_inner(z, a);
  const complex denom = one_minus_inner(z, a);
  const complex ca = 1.0 - za / (1.0 + s);
  CPoint out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = (ca * a[i] - s * z[i]) / denom;
  return out;
}

Automorphism::Automorphism(CPoint center) : center_(std::move(center)) {
  require_interior(center_, "automorphism center");
}

Automorphism::Automorphism(CPoint center, std::vector<complex> rotation)
    : center_(std::move(center)), rotation_(std::move(rotation)) {
  require_interior(center_, "automorphism center");
  const std::size_t n = center_.dim();
  if (!rotation_.empty()) {
    if (rotation_.size() != n * n) throw precondition_error("rotation must be n x n");
    // unitarity check
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        complex s{};
        for (std::size_t k = 0; k < n; ++k) s += rotation_[i * n + k] * std::conj(rotation_[j * n + k]);
        if (std::abs(s - (i == j ? 1.0 : 0.0)) > 1e-10) {
          throw precondition_error("rotation is not unitary");
        }
      }
    }
  }
}

Automorphism Automorphism::identity(std::size_t n) {
  // -Id composed with phi_0 = -Id gives the identity.
  std::vector<complex> minus_id(n * n, complex{});
  for (std::size_t i = 0; i < n; ++i) minus_id[i * n + i] = -1.0;
  Automorphism id(CPoint(n), std::move(minus_id));
  id.identity_ = true;
  return id;
}

CPoint Automorphism::rotate(const CPoint& z) const {
  if (rotation_.empty()) return z;
  const std::size_t n = z.dim();
  CPoint out(n);
  for (std::size_t i = 0; i < n; ++i) {
    complex s{};
    for (std::size_t k = 0; k < n; ++k) s += rotation_[i * n + k] * z[k];
    out[i] = s;
  }
  return out;
}

CPoint Automorphism::operator()(const CPoint& z) const {
  if (identity_) {
    require_same_dim(center_, z);
    return z;
  }
  return rotate(apply_automorphism(center_, z));
}

CPoint Automorphism::image_of_origin() const { return rotate(center_); }

Automorphism Automorphism::inverse() const {
  if (identity_) return *this;
  if (rotation_.empty()) return *this;
  // (U phi_a)^{-1} = phi_a U* = U* phi_{Ua}
  const std::size_t n = center_.dim();
  std::vector<complex> adj(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) adj[i * n + j] = std::conj(rotation_[j * n + i]);
  }
  return Automorphism(rotate(center_), std::move(adj));
}

double inv_distance(const CPoint& a, const CPoint& b) {
  require_same_dim(a, b);
  require_interior(a, "first point");
  require_interior(b, "second point");
  // |1-<a,b>|^2 - (1-|a|^2)(1-|b|^2) = |a-b|^2 - sum_{i<j} |a_i b_j - a_j b_i|^2
  double diff = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) diff += std::norm(a[i] - b[i]);
  double wedge = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = i + 1; j < a.dim(); ++j) wedge += std::norm(a[i] * b[j] - a[j] * b[i]);
  }
  const double num = std::max(diff - wedge, 0.0);
  const double den = std::norm(1.0 - herm_inner(a, b));
  return std::min(std::sqrt(num / den), std::nextafter(1.0, 0.0));
}


double one_minus_norm_sq(const CPoint& z) {
  std::array<double, 2 * CPoint::kMaxDim> x{};
  for (std::size_t i = 0; i < z.dim(); ++i) {
    x[2 * i] = z[i].real();
    x[2 * i + 1] = z[i].imag();
  }
  const std::span<const double> v(x.data(), 2 * z.dim());
  return one_minus_dot(v, v);
}

double one_minus_dist_sq(const CPoint& a, const CPoint& b) {
  require_same_dim(a, b);
  return one_minus_norm_sq(a) * one_minus_norm_sq(b) / std::norm(one_minus_inner(a, b));
}

bool in_hyperbolic_ball(const CPoint& z, const CPoint& center, double r) {
  if (!(r > 0.0 && r < 1.0)) throw precondition_error("radius must lie in (0,1)");
  return inv_distance(z, center) < r;
}

bool in_window(const CPoint& z, const CPoint& zeta0, double t) {
  if (!(t > 0.0)) throw precondition_error("window size must be positive");
  if (std::abs(zeta0.norm() - 1.0) > 1e-12) throw precondition_error("window center must be a unit vector");
  return std::abs(1.0 - herm_inner(z, zeta0)) < t;
}

bool in_koranyi_ball(const CPoint& zeta, const CPoint& eta, double t) {
  if (!(t > 0.0)) throw precondition_error("ball size must be positive");
  if (std::abs(zeta.norm() - 1.0) > 1e-12 || std::abs(eta.norm() - 1.0) > 1e-12) {
    throw precondition_error("Koranyi ball points must be unit vectors");
  }
  return std::abs(1.0 - herm_inner(zeta, eta)) < t;
}

double quasi_triangle_defect(std::span<const PointTriple> triples) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& [z, u, w] : triples) {
    const double zw = std::sqrt(std::abs(1.0 - herm_inner(z, w)));
    const double zu = std::sqrt(std::abs(1.0 - herm_inner(z, u)));
    const double uw = std::sqrt(std::abs(1.0 - herm_inner(u, w)));
    worst = std::max(worst, zw - zu - uw);
  }
  return triples.empty() ? 0.0 : worst;
}

std::vector<complex> random_unitary(std::size_t n, std::uint64_t seed) {
  Stream s(seed, streams::kUnitary);
  Eigen::MatrixXcd g(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) g(i, j) = s.complex_normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix column phases so the distribution is Haar
  for (std::size_t j = 0; j < n; ++j) {
    const complex d = r(j, j);
    const double ad = std::abs(d);
    if (ad > 0) q.col(j) *= d / ad;
  }
  std::vector<complex> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = q(i, j);
  }
  return out;
}

}  // namespace bergman
