#pragma once

#include <cstdint>
#include <random>

#include "bergman/geometry.hpp"

namespace bergman {

/// Deterministic random stream keyed by (seed, stream, block). Samples are
/// generated in fixed-size blocks so that sample i only depends on the key of
/// block i / block_size, never on how work is split across threads.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t block = 0);

  std::uint64_t bits() { return eng_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  double normal();
  complex complex_normal();

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Stream ids used by the library, kept distinct so that different consumers
/// of one user seed do not share random numbers.
namespace streams {
inline constexpr std::uint64_t kBallSamples = 1;
inline constexpr std::uint64_t kSphereSamples = 2;
inline constexpr std::uint64_t kMonteCarlo = 3;
inline constexpr std::uint64_t kQmcShift = 4;
inline constexpr std::uint64_t kNet = 5;
inline constexpr std::uint64_t kPerturb = 6;
inline constexpr std::uint64_t kUnitary = 7;
inline constexpr std::uint64_t kProbe = 8;
inline constexpr std::uint64_t kPacking = 9;
inline constexpr std::uint64_t kValues = 10;
}  // namespace streams

/// One dm-uniform point of B^n (radius u^{1/(2n)} times a sphere point).
CPoint draw_ball_point(Stream& s, std::size_t n);
/// One sigma-uniform point of the sphere (normalized complex Gaussian).
CPoint draw_sphere_point(Stream& s, std::size_t n);

}  // namespace bergman
