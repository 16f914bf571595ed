#pragma once

#include <functional>
#include <vector>

#include "gpen/core.hpp"

namespace gpen {

/// Accepted-step skeleton of an adaptive scalar integration: knots t_k with
/// solution values y_k, monotone in t.
struct OdeSolution {
  std::vector<double> t;
  std::vector<double> y;
  long n_steps = 0;
  long n_rejected = 0;
};

/// Adaptive embedded Dormand-Prince 5(4) pair for a scalar ODE y' = f(t, y),
/// integrating from t0 to t1 (either direction). Steps are capped at h_max
/// so the knot sequence doubles as a dense-output table.
OdeSolution integrate_dopri5(const std::function<double(double, double)>& f,
                             double t0, double y0, double t1, double rtol,
                             double atol, double h_max);

}  // namespace gpen
