#include "beamsim/predictor.hpp"

#include <algorithm>
#include <cmath>

namespace beamsim {

double connection_angle(double a, double l, double r) {
  if (!(l > 0.0)) throw DegenerateGeometry("connection_angle: l must be > 0");
  if (!(a > 0.0) || !(r > 0.0))
    throw std::invalid_argument("connection_angle: a and r must be > 0");
  const double c = (a * a + l * l - r * r) / (2.0 * a * l);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double connection_prob_given_jump(double a, double l, double r) {
  return connection_angle(a, l, r) / kPi;
}

double connection_prob(double l, double r, const JumpLaw& law,
                       const QuadratureConfig& q) {
  if (!(l > 0.0)) throw DegenerateGeometry("connection_prob: l must be > 0");
  if (!(r > 0.0)) throw std::invalid_argument("connection_prob: r must be > 0");
  const double lo = std::max(std::abs(l - r), 1.0);
  const double hi = std::min(l + r, law.x_max());
  if (!(hi > lo)) return 0.0;
  // a = lo + h (1 - cos u) absorbs the square-root behaviour of arccos at
  // both ends of the annulus.
  const double h = 0.5 * (hi - lo);
  const auto integrand = [&](double u) {
    const double a = lo + h * (1.0 - std::cos(u));
    return law.pdf(a) * connection_prob_given_jump(a, l, r) * h * std::sin(u);
  };
  return std::clamp(integrate(integrand, 0.0, kPi, q).value, 0.0, 1.0);
}

double predict_node_stability(const PredictionInput& input, const JumpLaw& law,
                              const QuadratureConfig& q) {
  if (input.records.empty()) return 0.0;
  double total = 0.0;
  for (const auto& rec : input.records) {
    const double l = (rec.last_position - input.own_new_position).norm();
    if (l > 0.0) total += connection_prob(l, input.r, law, q);
  }
  return total / static_cast<double>(input.records.size());
}

}  // namespace beamsim
