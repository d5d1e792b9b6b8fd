#pragma once

#include <functional>

namespace beamsim {

struct QuadratureConfig {
  double rel_tol = 1e-6;
  double abs_tol = 1e-9;
  int max_subdivisions = 200;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
// The interval with the largest error estimate is bisected until the total
// error meets max(abs_tol, rel_tol * |value|) or the subdivision budget runs
// out. Reversed limits give the negated integral.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureConfig& cfg = {});

}  // namespace beamsim
