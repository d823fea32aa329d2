#include <doctest.h>

#include <cmath>
#include <random>

#include "bergman/geometry.hpp"
#include "bergman/rng.hpp"

using namespace bergman;

namespace {

CPoint random_point(std::mt19937_64& g, std::size_t n, double rmax = 0.999) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud;
  CPoint z(n);
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = {nd(g), nd(g)};
    s += std::norm(z[i]);
  }
  const double r = rmax * ud(g);
  for (std::size_t i = 0; i < n; ++i) z[i] *= r / std::sqrt(s);
  return z;
}

// one-variable Moebius map, written out directly
complex mobius(complex a, complex z) { return (a - z) / (1.0 - std::conj(a) * z); }

}  // namespace

TEST_CASE("herm_inner basics") {
  CHECK(herm_inner(CPoint{1.0, 0.0}, CPoint{1.0, 0.0}) == complex(1.0));
  CHECK(herm_inner(CPoint(2), CPoint{0.3, complex(0, 0.2)}) == complex(0.0));
  std::mt19937_64 g(1);
  for (int t = 0; t < 100; ++t) {
    const CPoint z = random_point(g, 3), w = random_point(g, 3);
    complex direct = 0;
    for (std::size_t i = 0; i < 3; ++i) direct += z[i] * std::conj(w[i]);
    CHECK(std::abs(herm_inner(z, w) - direct) < 1e-15);
    CHECK(std::abs(herm_inner(z, w) - std::conj(herm_inner(w, z))) < 1e-15);
  }
  CHECK_THROWS_AS(herm_inner(CPoint(1), CPoint(2)), precondition_error);
}

TEST_CASE("phi_a exchanges 0 and a and matches the one-variable map") {
  std::mt19937_64 g(2);
  for (std::size_t n : {1u, 2u, 3u}) {
    for (int t = 0; t < 50; ++t) {
      const CPoint a = random_point(g, n), z = random_point(g, n);
      CHECK((apply_automorphism(a, CPoint(n)) - a).norm() < 1e-15);
      CHECK(apply_automorphism(a, a).norm() < 1e-12);
      const CPoint w = apply_automorphism(a, z);
      const double lhs = 1.0 - w.norm_sq();
      const double rhs = (1 - a.norm_sq()) * (1 - z.norm_sq()) / std::norm(1.0 - herm_inner(z, a));
      CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
      CHECK((apply_automorphism(a, w) - z).norm() < 1e-10);
      if (n == 1) CHECK(std::abs(w[0] - mobius(a[0], z[0])) < 1e-13);
    }
  }
  // a = 0 is minus the identity
  CHECK((apply_automorphism(CPoint(2), CPoint{0.3, 0.2}) + CPoint{0.3, 0.2}).norm() == 0.0);
}

TEST_CASE("inv_distance") {
  const CPoint a{0.5}, b{-0.5};
  CHECK(inv_distance(a, b) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(inv_distance(CPoint{0.0, 0.0}, CPoint{0.3, 0.4}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(inv_distance(a, a) == 0.0);
  std::mt19937_64 g(3);
  for (int t = 0; t < 200; ++t) {
    const CPoint x = random_point(g, 1), y = random_point(g, 1);
    CHECK(inv_distance(x, y) == doctest::Approx(std::abs(mobius(x[0], y[0]))).epsilon(1e-12));
    CHECK(inv_distance(x, y) == inv_distance(y, x));
  }
}

TEST_CASE("automorphisms compose with their inverse") {
  std::mt19937_64 g(4);
  for (std::size_t n : {1u, 2u, 3u}) {
    const Automorphism phi(random_point(g, n, 0.9), random_unitary(n, 7));
    const Automorphism inv = phi.inverse();
    CHECK(phi(phi.preimage_of_origin()).norm() < 1e-13);
    CHECK((phi(CPoint(n)) - phi.image_of_origin()).norm() < 1e-13);
    for (int t = 0; t < 20; ++t) {
      const CPoint z = random_point(g, n, 0.99);
      CHECK((inv(phi(z)) - z).norm() < 1e-11);
      CHECK((phi(inv(z)) - z).norm() < 1e-11);
      // invariance of the distance
      const CPoint w = random_point(g, n, 0.99);
      CHECK(inv_distance(phi(z), phi(w)) == doctest::Approx(inv_distance(z, w)).epsilon(1e-9));
    }
  }
  const auto id = Automorphism::identity(2);
  CHECK(id.is_identity());
  CHECK(id(CPoint{0.1, 0.2}) == CPoint{0.1, 0.2});
  CHECK_THROWS_AS(Automorphism(CPoint{0.1, 0.1}, {1.0, 1.0, 0.0, 1.0}), precondition_error);
}

TEST_CASE("membership predicates") {
  std::mt19937_64 g(5);
  const CPoint zeta{1.0, 0.0};
  for (int t = 0; t < 100; ++t) {
    const CPoint z = random_point(g, 2);
    CHECK(in_window(z, zeta, 2.0));
    CHECK(in_hyperbolic_ball(z, z, 0.1));
  }
  CHECK(in_koranyi_ball(zeta, zeta, 1e-9));
  CHECK_FALSE(in_hyperbolic_ball(CPoint{0.9}, CPoint{-0.9}, 0.5));
}

TEST_CASE("quasi-triangle inequality") {
  const CPoint z{0.3};
  const PointTriple same{z, z, z};
  CHECK(quasi_triangle_defect(std::span(&same, 1)) <= 0.0);
  const PointTriple line{CPoint{0.0}, CPoint{0.5}, CPoint{0.9}};
  CHECK(quasi_triangle_defect(std::span(&line, 1)) <= 0.0);
  std::mt19937_64 g(6);
  std::vector<PointTriple> triples;
  for (int t = 0; t < 10000; ++t) triples.push_back({random_point(g, 2), random_point(g, 2), random_point(g, 2)});
  CHECK(quasi_triangle_defect(triples) <= 1e-12);
}

TEST_CASE("random unitary is unitary and seeded") {
  const auto U = random_unitary(3, 11);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      complex s = 0;
      for (std::size_t k = 0; k < 3; ++k) s += U[i * 3 + k] * std::conj(U[j * 3 + k]);
      CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-13);
    }
  }
  CHECK(random_unitary(3, 11) == U);
}

TEST_CASE("interior checks") {
  CHECK_THROWS_AS(require_interior(CPoint{1.0}, "z"), precondition_error);
  CHECK_NOTHROW(require_interior(CPoint{0.999}, "z"));
  CHECK_THROWS_AS(CPoint(CPoint::kMaxDim + 1), precondition_error);
}
