#include "bergman/rng.hpp"

#include <cmath>
#include <numbers>

namespace bergman {

namespace {

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(block),
                    static_cast<std::uint32_t>(block >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Stream::Stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t block)
    : eng_(seeded(seed, stream, block)) {}

double Stream::uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

double Stream::uniform_open() {
  return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_open();
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * std::numbers::pi * u2;
  spare_ = rad * std::sin(th);
  has_spare_ = true;
  return rad * std::cos(th);
}

complex Stream::complex_normal() {
  const double x = normal();
  const double y = normal();
  return {x, y};
}

CPoint draw_sphere_point(Stream& s, std::size_t n) {
  CPoint z(n);
  double r2 = 0.0;
  do {
    for (std::size_t i = 0; i < n; ++i) z[i] = s.complex_normal();
    r2 = z.norm_sq();
  } while (r2 < 1e-300);
  z *= 1.0 / std::sqrt(r2);
  return z;
}

CPoint draw_ball_point(Stream& s, std::size_t n) {
  CPoint z = draw_sphere_point(s, n);
  const double rad = std::pow(s.uniform(), 1.0 / (2.0 * static_cast<double>(n)));
  z *= rad;
  return z;
}

}  // namespace bergman
