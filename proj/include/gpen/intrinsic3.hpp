#pragma once

#include <functional>

#include "gpen/geometry.hpp"
#include "gpen/grid.hpp"
#include "gpen/profile.hpp"

namespace gpen {

/// Graph surface s = u(theta, phi) inside the Riemannian 3-manifold with
/// metric ds^2/A(s) + s^2 g_{S^2}, A(s) = 1 - 2m/s + lambda^2 s^2.
/// lambda = 0 is the t = 0 Schwarzschild slice. Everything here is intrinsic
/// to the 3-manifold, so it stays valid for s below 2m as long as A(s) > 0.
struct Surface3 {
  ParameterGrid grid;
  double m = 0.0;
  double lambda = 0.0;
  ProfileFields u;

  std::vector<Sym2> h, h_inv;   // induced metric
  ScalarField sqrt_det_h;
  std::vector<Vec3> normal;     // outward unit normal (n^s > 0)
  std::vector<Sym2> second_form;  // II_ab = -<n, D_a X_b>, positive on spheres
  ScalarField mean_curvature;     // H = h^{ab} II_ab
  double min_mean_curvature = 0.0;
};

/// Throws std::domain_error if A(u) <= 0 anywhere.
Surface3 build_surface3(const ParameterGrid& grid, double m, double lambda,
                        const ProfileFields& u);

double integrate3(const Surface3& s, const ScalarField& f);
double area3(const Surface3& s);

/// Volume integral of phi(s) over the region between the level set s = s_lo
/// and the graph, with the metric volume element: per-angular-node
/// Gauss-Legendre radial quadrature of phi(s) s^2 / sqrt(A(s)).
double bulk_integral(const ParameterGrid& grid, double m, double lambda,
                     const ScalarField& u, double s_lo, int n_radial,
                     const std::function<double(double)>& phi);

/// Same but for phi = sqrt(A) (the static potential): the integrand
/// collapses to s^2, which is what the divergence identity produces.
double bulk_potential_integral(const ParameterGrid& grid, double m,
                               double lambda, const ScalarField& u,
                               double s_lo, int n_radial);

}  // namespace gpen
