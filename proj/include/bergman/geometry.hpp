#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace bergman {

using complex = std::complex<double>;

/// Raised when an operation's precondition is violated (bad dimension,
/// point outside the open ball, parameter out of range).
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure fails (singular solve, divergence).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Points closer than this to the unit sphere are rejected by operations
/// that need interior points.
inline constexpr double kBoundaryGuard = 1e-14;

/// A point of the closed unit ball of C^n, stored inline (no allocation).
class CPoint {
 public:
  static constexpr std::size_t kMaxDim = 8;

  CPoint() = default;
  explicit CPoint(std::size_t n);
  CPoint(std::initializer_list<complex> coords);
  explicit CPoint(std::span<const complex> coords);

  std::size_t dim() const { return n_; }
  complex& operator[](std::size_t i) { return c_[i]; }
  const complex& operator[](std::size_t i) const { return c_[i]; }
  std::span<const complex> coords() const { return {c_.data(), n_}; }
  std::span<complex> coords() { return {c_.data(), n_}; }

  double norm_sq() const;
  double norm() const;
  bool is_zero() const;

  CPoint& operator+=(const CPoint& o);
  CPoint& operator-=(const CPoint& o);
  CPoint& operator*=(complex s);

  friend CPoint operator+(CPoint a, const CPoint& b) { return a += b; }
  friend CPoint operator-(CPoint a, const CPoint& b) { return a -= b; }
  friend CPoint operator*(complex s, CPoint a) { return a *= s; }
  friend CPoint operator*(CPoint a, complex s) { return a *= s; }
  friend bool operator==(const CPoint& a, const CPoint& b);

  /// Unit vector e_k in C^n.
  static CPoint basis(std::size_t n, std::size_t k);

 private:
  std::array<complex, kMaxDim> c_{};
  std::size_t n_ = 0;
};

/// z w-bar := sum_j z_j conj(w_j).
complex herm_inner(const CPoint& z, const CPoint& w);

void require_same_dim(const CPoint& a, const CPoint& b);
void require_interior(const CPoint& z, const char* what);

/// The involutive automorphism phi_a exchanging 0 and a:
/// phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z, a>), s_a = sqrt(1 - |a|^2),
/// with phi_0 = -Id.
CPoint apply_automorphism(const CPoint& a, const CPoint& z);

/// Ball automorphism z -> U phi_a(z). The rotation U is a unitary n x n
/// matrix stored row-major; an empty rotation means the identity.
class Automorphism {
 public:
  Automorphism() = default;
  explicit Automorphism(CPoint center);
  Automorphism(CPoint center, std::vector<complex> rotation);

  static Automorphism identity(std::size_t n);

  CPoint operator()(const CPoint& z) const;
  Automorphism inverse() const;
  /// phi^{-1}(0); for U phi_a this is a.
  const CPoint& preimage_of_origin() const { return center_; }
  /// phi(0) = U a.
  CPoint image_of_origin() const;

  const CPoint& center() const { return center_; }
  const std::vector<complex>& rotation() const { return rotation_; }
  bool has_rotation() const { return !rotation_.empty(); }
  bool is_identity() const { return identity_; }
  std::size_t dim() const { return center_.dim(); }

 private:
  CPoint rotate(const CPoint& z) const;

  CPoint center_;
  std::vector<complex> rotation_;
  bool identity_ = false;
};

/// Pseudo-hyperbolic distance d(a,b) = |phi_a(b)|.
double inv_distance(const CPoint& a, const CPoint& b);

/// 1 - |z|^2 without cancellation near the sphere.
double one_minus_norm_sq(const CPoint& z);

/// 1 - d(a,b)^2 evaluated from the closed form
/// (1-|a|^2)(1-|b|^2)/|1-<a,b>|^2.
double one_minus_dist_sq(const CPoint& a, const CPoint& b);

/// z in E(center, r) = {d(z, center) < r}.
bool in_hyperbolic_ball(const CPoint& z, const CPoint& center, double r);
/// z in the Carleson window C_t(zeta0) = {|1 - <z, zeta0>| < t}.
bool in_window(const CPoint& z, const CPoint& zeta0, double t);
/// zeta in the Koranyi ball K(eta, t) = {|1 - <zeta, eta>| < t} on the sphere.
bool in_koranyi_ball(const CPoint& zeta, const CPoint& eta, double t);

struct PointTriple {
  CPoint z, u, w;
};

/// max over triples of |1-<z,w>|^{1/2} - |1-<z,u>|^{1/2} - |1-<u,w>|^{1/2}.
/// The quasi-metric |1 - <z,w>|^{1/2} obeys the triangle inequality on the
/// closed ball, so the result is <= 0 up to rounding.
double quasi_triangle_defect(std::span<const PointTriple> triples);

/// Uniform random unitary matrix (QR of a complex Gaussian matrix), row-major.
std::vector<complex> random_unitary(std::size_t n, std::uint64_t seed);

}  // namespace bergman
