#include <doctest.h>

#include <cmath>

#include "bergman/geometry.hpp"
#include "bergman/parallel.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/rng.hpp"
#include "oracles.hpp"

using namespace bergman;

TEST_CASE("ball integral of constants and radial powers") {
  for (std::size_t n : {1u, 2u, 3u}) {
    const QuadratureSpec q;
    CHECK(ball_integral([](const CPoint&) { return 1.0; }, n, q).value == doctest::Approx(1.0).epsilon(1e-12));
    for (double t : {0.5, 1.0, 2.5}) {
      const double exact = std::tgamma(n + 1.0) * std::tgamma(t + 1.0) / std::tgamma(n + 1.0 + t);
      const auto e = ball_integral([t](const CPoint& z) { return std::pow(1 - z.norm_sq(), t); }, n, q);
      CHECK(e.value == doctest::Approx(exact).epsilon(1e-11));
    }
  }
}

TEST_CASE("ball integral of kernel powers matches the hypergeometric series") {
  for (double t : {0.0, 1.0}) {
    for (double c : {0.5, 1.5}) {
      const double s = (2 + t + c) / 2.0;
      for (double r : {0.5, 0.9, 0.99, 0.995}) {
        const CPoint a{r};
        const auto f = [&](const CPoint& z) {
          return std::pow(1 - z.norm_sq(), t) * std::pow(std::abs(1.0 - herm_inner(z, a)), -2 * s);
        };
        INFO("t=" << t << " c=" << c << " r=" << r);
        const auto e = ball_integral(f, 1, QuadratureSpec{});
        CHECK(e.value == doctest::Approx(oracle::ball_kernel_integral(1, t, s, r * r)).epsilon(1e-12));
      }
    }
  }
  // n = 2: sharp away from the boundary
  for (auto [t, c] : {std::pair{0.0, 1.5}, {1.0, 0.5}}) {
    const CPoint a{0.5, 0.0};
    const double s = (3 + t + c) / 2.0;
    const auto f = [&](const CPoint& z) {
      return std::pow(1 - z.norm_sq(), t) * std::pow(std::abs(1.0 - herm_inner(z, a)), -2 * s);
    };
    const auto e = ball_integral(f, 2, QuadratureSpec{});
    CHECK(e.value == doctest::Approx(oracle::ball_kernel_integral(2, t, s, 0.25)).epsilon(1e-10));
  }
}

TEST_CASE("pole pull-back near the boundary") {
  const double s = 1.75;
  QuadratureSpec q;
  q.pole = CPoint{0.995};
  const CPoint a{0.995};
  const auto e = ball_integral([&](const CPoint& z) { return std::pow(std::abs(1.0 - herm_inner(z, a)), -2 * s); }, 1, q);
  CHECK(e.value == doctest::Approx(oracle::ball_kernel_integral(1, 0.0, s, a.norm_sq())).epsilon(1e-12));

  // n = 2 the reported error has to cover the true one
  const CPoint b{0.9, 0.0};
  q.pole = b;
  const auto e2 =
      ball_integral([&](const CPoint& z) { return std::pow(std::abs(1.0 - herm_inner(z, b)), -4.5); }, 2, q);
  const double exact = oracle::ball_kernel_integral(2, 0.0, 2.25, 0.81);
  CHECK(std::abs(e2.value - exact) <= e2.std_error);
  CHECK(std::abs(e2.value - exact) < 1e-3 * exact);
}

TEST_CASE("sphere integrals") {
  const QuadratureSpec q;
  CHECK(sphere_integral([](const CPoint&) { return 1.0; }, 2, q).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(sphere_integral([](const CPoint& z) { return z[0].real(); }, 1, q).value) < 1e-14);
  for (int n : {1, 2}) {
    for (double r : {0.5, 0.9}) {
      CPoint a(n);
      a[0] = r;
      const double s = (n + 1.5) / 2.0;
      const auto e = sphere_integral(
          [&](const CPoint& z) { return std::pow(std::abs(1.0 - herm_inner(z, a)), -2 * s); }, n, q);
      const double exact = oracle::sphere_kernel_integral(n, s, r * r);
      CHECK(std::abs(e.value - exact) <= e.std_error + 1e-14 * exact);
      if (n == 1 || r == 0.5) CHECK(e.value == doctest::Approx(exact).epsilon(1e-10));
    }
  }
}

TEST_CASE("invariant volume of hyperbolic balls") {
  const QuadratureSpec q;
  double prev = 0.0;
  for (double r : {0.1, 0.3, 0.5, 0.7}) {
    const double v = tau_integral([](const CPoint&) { return 1.0; }, CPoint{0.0}, r, q).value;
    CHECK(v == doctest::Approx(r * r / (1 - r * r)).epsilon(1e-10));
    CHECK(v > prev);
    prev = v;
  }
  const double base = tau_integral([](const CPoint&) { return 1.0; }, CPoint{0.0, 0.0}, 0.5, q).value;
  for (const auto& c : sample_ball(2, 5, 3)) {
    const double v = tau_integral([](const CPoint&) { return 1.0; }, c, 0.5, q).value;
    CHECK(std::abs(v - base) < 0.02 * base);
  }
}

TEST_CASE("Monte Carlo and quasi-Monte Carlo") {
  QuadratureSpec q;
  q.method = QuadMethod::monte_carlo;
  q.samples = 1 << 20;
  q.seed = 5;
  const auto e = ball_integral([](const CPoint& z) { return z.norm_sq(); }, 1, q);
  CHECK(std::abs(e.value - 0.5) < 3 * e.std_error);
  CHECK(e.samples_used == q.samples);
  q.method = QuadMethod::quasi_monte_carlo;
  q.samples = 1 << 16;
  const auto e2 = ball_integral([](const CPoint& z) { return z.norm_sq(); }, 2, q);
  CHECK(std::abs(e2.value - 2.0 / 3.0) < std::max(3 * e2.std_error, 1e-4));
}

TEST_CASE("non-decaying integrands are reported as divergent") {
  const auto e = ball_integral([](const CPoint& z) { return 1.0 / std::pow(1 - z.norm_sq(), 1.5); }, 1, QuadratureSpec{});
  CHECK(std::isinf(e.value));
  CHECK_FALSE(e.diagnostic.empty());
}

TEST_CASE("sampling streams") {
  for (const auto& z : sample_sphere(3, 1000, 1)) CHECK(std::abs(z.norm() - 1.0) < 1e-14);
  for (const auto& z : sample_ball(2, 1000, 1)) CHECK(z.norm() < 1.0);
  const auto a = sample_ball(2, 100, 9), b = sample_ball(2, 100, 9), c = sample_ball(2, 100, 10);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  Stream s1(1, 2, 3), s2(1, 2, 3);
  for (int i = 0; i < 10; ++i) CHECK(s1.bits() == s2.bits());
}

TEST_CASE("quadrature is independent of the worker count") {
  const auto f = [](const CPoint& z) { return std::pow(std::abs(1.0 - herm_inner(z, CPoint{0.7, 0.1})), -3.0); };
  QuadratureSpec q;
  q.method = QuadMethod::monte_carlo;
  q.samples = 50000;
  const auto v1 = ball_integral(f, 2, q).value;
  setenv("BERGMAN_THREADS", "3", 1);
  const auto v3 = ball_integral(f, 2, q).value;
  unsetenv("BERGMAN_THREADS");
  CHECK(v1 == v3);
}

TEST_CASE("compensated summation") {
  std::vector<double> xs{1e16, 1.0, -1e16, 1.0};
  CHECK(compensated_sum(xs) == 2.0);
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec q;
  q.samples = 0;
  CHECK_THROWS_AS(q.validate(), precondition_error);
  CHECK_THROWS_AS(quad_method_from_string("simpson"), precondition_error);
  CHECK(quad_method_from_string("mc") == QuadMethod::monte_carlo);
}
