#pragma once

#include "beamsim/types.hpp"

#include <vector>

namespace beamsim {

struct MobilityConfig {
  double alpha = 1.6;
  double beta = 300.0;
  // Hard truncation of the jump law. Non-positive means "derive it":
  // min(10 * beta, arena diagonal).
  double x_max = 0.0;
  double area_width = 500.0;
  double area_height = 500.0;

  double effective_x_max() const;
  // Throws std::invalid_argument on alpha <= 1, beta <= 0, x_max < 1 or a
  // degenerate arena.
  void validate() const;
};

// Truncated power law with exponential cutoff, p(x) = C x^-alpha e^(-x/beta),
// supported on [1, x_max]. Normalization and the inverse-CDF table are built
// once at construction.
class JumpLaw {
 public:
  static constexpr int kKnots = 4096;

  explicit JumpLaw(const MobilityConfig& cfg);

  const MobilityConfig& config() const { return cfg_; }
  double x_max() const { return x_max_; }
  double normalization() const { return norm_; }

  // Density. Below 1 m it is pinned to the value at 1 m; above x_max it is 0.
  double pdf(double x) const;
  double cdf(double x) const;
  double sample(Rng& rng) const;

  // Unnormalized kernel x^-alpha e^(-x/beta).
  double kernel(double x) const;

 private:
  MobilityConfig cfg_;
  double x_max_;
  double norm_;
  std::vector<double> knots_;
  std::vector<double> cdf_;
};

double jump_pdf(double x, const JumpLaw& law);
double sample_jump(Rng& rng, const JumpLaw& law);

// Specular reflection of a coordinate into [0, extent].
double reflect_into(double v, double extent);

// Moves p by `length` along `direction`, reflecting off the arena walls.
Position displace(const Position& p, double length, double direction,
                  const MobilityConfig& cfg);

// One jump per node: length from the law, direction uniform on [0, 2pi).
Positions step(const Positions& positions, Rng& rng, const JumpLaw& law);

// Uniform scatter of n nodes over the arena.
Positions scatter(int n, Rng& rng, const MobilityConfig& cfg);

}  // namespace beamsim
