#include "gpen/ode.hpp"

#include <cmath>
#include <stdexcept>

namespace gpen {

namespace {

// Dormand-Prince RK5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 4th-order embedded weights (the 7th stage is the FSAL evaluation).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

OdeSolution integrate_dopri5(const std::function<double(double, double)>& f,
                             double t0, double y0, double t1, double rtol,
                             double atol, double h_max) {
  OdeSolution sol;
  sol.t.push_back(t0);
  sol.y.push_back(y0);
  if (t1 == t0) return sol;

  const double dir = (t1 > t0) ? 1.0 : -1.0;
  const double span = std::fabs(t1 - t0);
  double h = std::fmin(h_max, span / 16.0);
  double t = t0, y = y0;
  double k1 = f(t, y);

  const long max_steps = 4000000;
  while (dir * (t1 - t) > 0.0) {
    if (sol.n_steps + sol.n_rejected > max_steps) {
      throw std::runtime_error("integrate_dopri5: step budget exhausted");
    }
    h = std::fmin(h, std::fabs(t1 - t));
    const double hs = dir * h;

    const double k2 = f(t + c2 * hs, y + hs * (a21 * k1));
    const double k3 = f(t + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
    const double k4 = f(t + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 =
        f(t + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double k6 = f(
        t + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const double y5 =
        y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double k7 = f(t + hs, y5);

    const double err_raw =
        hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double sc = atol + rtol * std::fmax(std::fabs(y), std::fabs(y5));
    const double err = std::fabs(err_raw) / sc;

    if (err <= 1.0) {
      t += hs;
      y = y5;
      k1 = k7;  // FSAL
      sol.t.push_back(t);
      sol.y.push_back(y);
      ++sol.n_steps;
    } else {
      ++sol.n_rejected;
    }
    const double fac =
        0.9 * std::pow(1.0 / std::fmax(err, 1e-10), 0.2);
    h = std::fmin(h_max, h * std::fmin(5.0, std::fmax(0.2, fac)));
  }
  return sol;
}

}  // namespace gpen
