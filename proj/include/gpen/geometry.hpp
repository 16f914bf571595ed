#pragma once

#include <array>

#include "gpen/core.hpp"

namespace gpen {

/// Schwarzschild coordinates (t, r, theta, phi), geometric units G = c = 1.
/// All spacetime evaluations require r > 2m; the poles theta in {0, pi} are
/// excluded from every quadrature grid.
struct SpacetimePoint {
  double t = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

struct TangentVector {
  Vec4 v;
  SpacetimePoint base;
};

enum class CausalClass { Timelike, Null, Spacelike };

/// Point on the Riemannian 3-manifold S^2 x (s0, infinity) carrying the
/// AdS-Schwarzschild metric ds^2/(1-2m/s+lambda^2 s^2) + s^2 g_{S^2}.
struct RiemannianPoint3 {
  double s = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

struct Christoffel4 {
  // G[mu][alpha][beta] = Gamma^mu_{alpha beta}, symmetric in (alpha, beta).
  double G[4][4][4] = {};
};

struct Christoffel3 {
  double G[3][3][3] = {};
};

/// Metric diagonal (g_tt, g_rr, g_thth, g_phph) at p. Throws std::domain_error
/// for r <= 2m.
std::array<double, 4> metric_diag(const SpacetimePoint& p, double m);

/// Full 4x4 Schwarzschild metric, diag(-(1-2m/r), 1/(1-2m/r), r^2, r^2 sin^2).
std::array<std::array<double, 4>, 4> metric_components(const SpacetimePoint& p,
                                                       double m);

double inner_product(const SpacetimePoint& p, double m, const Vec4& a,
                     const Vec4& b);

/// Checked variant: both vectors must live at p (base-point mismatch throws).
double inner_product(const SpacetimePoint& p, double m, const TangentVector& a,
                     const TangentVector& b);

/// Closed-form Schwarzschild connection coefficients.
Christoffel4 christoffel(const SpacetimePoint& p, double m);

/// sqrt(1 - 2m/s + lambda^2 s^2); lambda = 0 gives the Schwarzschild static
/// potential sqrt(1 - 2m/r). Throws on a negative radicand.
double static_potential(double s, double m, double lambda);

/// A(s) = 1 - 2m/s + lambda^2 s^2 (the squared potential), no domain check.
double potential_squared(double s, double m, double lambda);

/// d/ds of potential_squared.
double potential_squared_prime(double s, double m, double lambda);

CausalClass causal_class(const SpacetimePoint& p, double m,
                         const TangentVector& v, double tol = 1e-9);

/// AdS-Schwarzschild 3-metric diag(1/A(s), s^2, s^2 sin^2 theta);
/// throws if A(s) <= 0.
std::array<std::array<double, 3>, 3> ads_sch_metric3(const RiemannianPoint3& q,
                                                     double m, double lambda);

/// Connection of the 3-metric family diag(1/A, s^2, s^2 sin^2 theta) with
/// A(s) = 1 - 2m/s + lambda^2 s^2; lambda = 0 is the t = 0 Schwarzschild
/// slice metric.
Christoffel3 christoffel3(double s, double theta, double m, double lambda);

/// Coordinate basis vectors.
inline Vec4 basis_t() { return {{1.0, 0.0, 0.0, 0.0}}; }
inline Vec4 basis_r() { return {{0.0, 1.0, 0.0, 0.0}}; }

}  // namespace gpen
