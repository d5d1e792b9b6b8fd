#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace beamsim {

using NodeId = int;

// Planar position in meters.
using Position = Eigen::Vector2d;

// Column i is the position of node i.
using Positions = Eigen::Matrix2Xd;

using Rng = std::mt19937_64;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Wraps an angle into [0, 2pi).
inline double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

// Signed smallest difference a - b, in (-pi, pi].
inline double angle_offset(double a, double b) {
  double d = wrap_angle(a - b);
  return d > kPi ? d - kTwoPi : d;
}

inline double bearing(const Position& from, const Position& to) {
  return wrap_angle(std::atan2(to.y() - from.y(), to.x() - from.x()));
}

// SplitMix64 finalizer, used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng make_stream(std::uint64_t seed, std::uint64_t tag) {
  return Rng(mix_seed(mix_seed(seed) ^ mix_seed(tag + 0x632be59bd9b4e019ULL)));
}

// Uniform double in [0, 1). Spelled out so streams are identical across
// standard libraries.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [lo, hi].
inline int uniform_int(Rng& rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

}  // namespace beamsim
