#include <doctest.h>

#include <cmath>

#include "bergman/density.hpp"
#include "sample_nets.hpp"

using namespace bergman;

using samples::brute_density;
using samples::geometric_net;

TEST_CASE("density of finite sequences") {
  const PointSeq one(1, {CPoint{0.3}});
  const auto radii = dyadic_radii(2, 10);
  const auto rep = seip_density(one, radii, density_grid(one, 12));
  CHECK(rep.density < 0.2);
  CHECK(rep.r_profile.back().second <= rep.r_profile[radii.size() - 2].second);
  CHECK_FALSE(rep.note.empty());
  CHECK_THROWS_AS(seip_density(PointSeq(2, {CPoint{0.1, 0.1}}), radii, density_grid(one)), precondition_error);
  const std::vector<double> bad{0.4, 0.9};
  CHECK_THROWS_AS(seip_density(one, bad, density_grid(one)), precondition_error);
}

TEST_CASE("geometric net matches the brute-force sum") {
  const auto net = geometric_net(12);
  const double r = 1 - std::ldexp(1.0, -10);
  const auto grid = density_grid(net, 10, 64);
  const std::vector<double> radii{r};
  const double fast = seip_density(net, radii, grid).density;
  const double slow = brute_density(net, r, grid);
  CHECK(fast == doctest::Approx(slow).epsilon(0.05));
  CHECK(fast > 0.5);
}

TEST_CASE("density verdicts") {
  const auto radii = dyadic_radii(2, 10);
  const PointSeq one(1, {CPoint{0.3}});
  CHECK(density_verdict(one, 2, 0, radii, density_grid(one)).verdict == Verdict::interpolating);
  const auto net = geometric_net(12);
  const auto grid = density_grid(net, 12);
  const auto hi = density_verdict(net, 2, 0.0, radii, grid);
  CHECK(hi.verdict == Verdict::not_interpolating);
  CHECK(density_verdict(net, 2, 2.0, radii, grid).verdict == Verdict::interpolating);
  // a threshold inside the band is inconclusive
  const double d = hi.density;
  CHECK(density_verdict(net, 2, d - 0.5 + 0.01, radii, grid).verdict == Verdict::inconclusive);
  CHECK(to_string(Verdict::not_interpolating) == "not-interpolating");
}

TEST_CASE("function vanishing on the sequence") {
  const SpaceParams sp(1, 2, 0.5);
  const auto ext = make_extension(sp, 1);
  CHECK(vanishing_at_origin(PointSeq(1, {}), sp, ext, 0.5).f(CPoint{0.3}) == complex(1.0));
  const PointSeq one(1, {CPoint{0.4}});
  const auto r1 = vanishing_at_origin(one, sp, ext, 0.4);
  CHECK(std::abs(r1.f(CPoint{0.4})) < 1e-14);
  CHECK(std::abs(r1.f(CPoint{0.0}) - 1.0) < 1e-15);

  auto net = geometric_net(5);
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < 20; ++k) idx.push_back(k);
  net = net.subset(idx);
  const SpaceParams s2(1, 2, 2.0);
  const auto rep = vanishing_at_origin(net, s2, make_extension(s2, 1), 0.5);
  CHECK(rep.max_node_value < 1e-9);
  CHECK(std::abs(rep.f(CPoint{0.0}) - 1.0) < 1e-15);
  CHECK(std::isfinite(norm(rep.f, s2, QuadratureSpec{}).value));
  CHECK_THROWS_AS(vanishing_at_origin(one, sp, ext, 0.5), precondition_error);
}
