#include "beamsim/mobility.hpp"

#include "beamsim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace beamsim {

double MobilityConfig::effective_x_max() const {
  if (x_max > 0.0) return x_max;
  return std::min(10.0 * beta, std::hypot(area_width, area_height));
}

void MobilityConfig::validate() const {
  if (!(alpha > 1.0))
    throw std::invalid_argument("mobility: alpha must be > 1");
  if (!(beta > 0.0)) throw std::invalid_argument("mobility: beta must be > 0");
  if (!(area_width > 0.0) || !(area_height > 0.0))
    throw std::invalid_argument("mobility: arena extents must be > 0");
  if (!(effective_x_max() >= 1.0))
    throw std::invalid_argument("mobility: x_max must be >= 1");
}

JumpLaw::JumpLaw(const MobilityConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  x_max_ = cfg_.effective_x_max();

  knots_.resize(kKnots);
  cdf_.resize(kKnots);
  const double log_span = std::log(x_max_);
  for (int i = 0; i < kKnots; ++i)
    knots_[i] = std::exp(log_span * i / (kKnots - 1));
  knots_.front() = 1.0;
  knots_.back() = x_max_;

  // Panel-wise integration of the kernel; each log-spaced panel is narrow
  // enough that a single adaptive call converges immediately.
  const QuadratureConfig q{1e-12, 1e-300, 50};
  const auto k = [this](double x) { return kernel(x); };
  cdf_[0] = 0.0;
  for (int i = 1; i < kKnots; ++i)
    cdf_[i] = cdf_[i - 1] + integrate(k, knots_[i - 1], knots_[i], q).value;
  const double total = cdf_.back();
  norm_ = 1.0 / total;
  for (double& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

double JumpLaw::kernel(double x) const {
  return std::pow(x, -cfg_.alpha) * std::exp(-x / cfg_.beta);
}

double JumpLaw::pdf(double x) const {
  if (x > x_max_) return 0.0;
  return norm_ * kernel(std::max(x, 1.0));
}

double JumpLaw::cdf(double x) const {
  if (x <= 1.0) return 0.0;
  if (x >= x_max_) return 1.0;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  const auto i = static_cast<std::size_t>(it - knots_.begin());
  const double x0 = knots_[i - 1];
  const QuadratureConfig q{1e-12, 1e-300, 50};
  const auto k = [this](double s) { return kernel(s); };
  return cdf_[i - 1] + norm_ * integrate(k, x0, x, q).value;
}

double JumpLaw::sample(Rng& rng) const {
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) return x_max_;
  const auto i = static_cast<std::size_t>(it - cdf_.begin());
  const double c0 = cdf_[i - 1];
  const double c1 = cdf_[i];
  const double w = c1 > c0 ? (u - c0) / (c1 - c0) : 0.0;
  return knots_[i - 1] + w * (knots_[i] - knots_[i - 1]);
}

double jump_pdf(double x, const JumpLaw& law) {
  if (x < 0.0) throw std::invalid_argument("jump_pdf: x must be >= 0");
  return law.pdf(x);
}

double sample_jump(Rng& rng, const JumpLaw& law) { return law.sample(rng); }

double reflect_into(double v, double extent) {
  const double period = 2.0 * extent;
  double y = std::fmod(v, period);
  if (y < 0.0) y += period;
  if (y > extent) y = period - y;
  return std::clamp(y, 0.0, extent);
}

Position displace(const Position& p, double length, double direction,
                  const MobilityConfig& cfg) {
  const Position raw = p + length * Position(std::cos(direction),
                                             std::sin(direction));
  return {reflect_into(raw.x(), cfg.area_width),
          reflect_into(raw.y(), cfg.area_height)};
}

Positions step(const Positions& positions, Rng& rng, const JumpLaw& law) {
  Positions out(2, positions.cols());
  for (Eigen::Index i = 0; i < positions.cols(); ++i) {
    const double length = law.sample(rng);
    const double direction = kTwoPi * uniform01(rng);
    out.col(i) = displace(positions.col(i), length, direction, law.config());
  }
  return out;
}

Positions scatter(int n, Rng& rng, const MobilityConfig& cfg) {
  Positions out(2, n);
  for (int i = 0; i < n; ++i) {
    const double x = cfg.area_width * uniform01(rng);
    const double y = cfg.area_height * uniform01(rng);
    out.col(i) = Position(x, y);
  }
  return out;
}

}  // namespace beamsim
