#include "gpen/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "gpen/sphharm.hpp"

namespace gpen {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  // Newton iteration on P_n from Chebyshev-like initial guesses; symmetric
  // pairs filled together.
  const int mid = (n + 1) / 2;
  for (int i = 0; i < mid; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    const double wi = 2.0 / ((1.0 - z * z) * pp * pp);
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
}

ParameterGrid build_grid(int n_theta, int n_phi) {
  if (n_theta < 8 || n_phi < 16 || n_phi % 2 != 0) {
    throw std::invalid_argument(
        "build_grid: require n_theta >= 8, n_phi >= 16 and even");
  }
  ParameterGrid g;
  g.n_theta = n_theta;
  g.n_phi = n_phi;
  std::vector<double> xs, ws;
  gauss_legendre(n_theta, xs, ws);
  g.theta.resize(n_theta);
  g.x.resize(n_theta);
  g.sin_theta.resize(n_theta);
  g.w_x.resize(n_theta);
  // theta ascending means x = cos(theta) descending.
  for (int i = 0; i < n_theta; ++i) {
    const double x = xs[n_theta - 1 - i];
    g.x[i] = x;
    g.theta[i] = std::acos(x);
    g.sin_theta[i] = std::sqrt(1.0 - x * x);
    g.w_x[i] = ws[n_theta - 1 - i];
  }
  g.phi.resize(n_phi);
  g.w_phi = 2.0 * kPi / n_phi;
  for (int j = 0; j < n_phi; ++j) g.phi[j] = g.w_phi * j;
  return g;
}

double integrate_sphere(const ParameterGrid& grid, const ScalarField& f) {
  if (static_cast<int>(f.size()) != grid.nodes()) {
    throw std::invalid_argument("integrate_sphere: field size != node count");
  }
  KahanSum s;
  for (int i = 0; i < grid.n_theta; ++i) {
    const double w = grid.weight(i);
    for (int j = 0; j < grid.n_phi; ++j) s.add(w * f[grid.idx(i, j)]);
  }
  return s.value();
}

std::pair<ScalarField, ScalarField> differentiate(const ScalarField& f,
                                                  const ParameterGrid& grid) {
  const SphExpansion e = analyze_field(grid, f);
  const auto jets = synthesize_jets(grid, e);
  ScalarField dth(grid.nodes()), dph(grid.nodes());
  for (int k = 0; k < grid.nodes(); ++k) {
    dth[k] = jets[k].dth;
    dph[k] = jets[k].dph;
  }
  return {std::move(dth), std::move(dph)};
}

}  // namespace gpen
