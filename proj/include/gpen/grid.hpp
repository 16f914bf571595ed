#pragma once

#include <utility>
#include <vector>

#include "gpen/core.hpp"

namespace gpen {

/// Gauss-Legendre nodes/weights on (-1, 1), ascending nodes.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

/// Product quadrature grid on S^2: Gauss-Legendre in cos(theta) (so no node
/// ever sits on a pole) times a uniform periodic grid in phi. The weights
/// integrate the round measure sin(theta) dtheta dphi; their sum is 4 pi.
struct ParameterGrid {
  int n_theta = 0;
  int n_phi = 0;
  std::vector<double> theta;      // ascending in (0, pi)
  std::vector<double> x;          // cos(theta), matching order
  std::vector<double> sin_theta;
  std::vector<double> w_x;        // Gauss-Legendre weights w.r.t. dx
  std::vector<double> phi;        // 2 pi j / n_phi
  double w_phi = 0.0;             // 2 pi / n_phi

  int nodes() const { return n_theta * n_phi; }
  int idx(int i, int j) const { return i * n_phi + j; }
  /// Quadrature weight of node (i, j) against the round measure.
  double weight(int i) const { return w_x[i] * w_phi; }
};

/// n_theta >= 8, n_phi >= 16 and even; throws std::invalid_argument below
/// the minimum.
ParameterGrid build_grid(int n_theta, int n_phi);

/// Integral of a gridded field against the round S^2 measure.
double integrate_sphere(const ParameterGrid& grid, const ScalarField& f);

/// Spectral chart derivatives (d/dtheta, d/dphi): Fourier in phi, normalized
/// Legendre transform in theta; exact for band-limited fields up to the
/// grid's design order.
std::pair<ScalarField, ScalarField> differentiate(const ScalarField& f,
                                                  const ParameterGrid& grid);

}  // namespace gpen
