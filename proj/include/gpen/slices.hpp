#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gpen/extrinsic.hpp"
#include "gpen/intrinsic3.hpp"
#include "gpen/ode.hpp"
#include "gpen/surface.hpp"

namespace gpen {

/// Unique positive root of 1 - 2m/s + lambda^2 s^2 = 0 (the horizon radius
/// of the AdS-Schwarzschild 3-metric). Bracketed bisection plus Newton
/// polish; requires m > 0, lambda > 0.
double s0_root(double m, double lambda);

/// Dense table of the umbilical-slice time profile rho_lambda, the solution
/// of rho'(s) = lambda s / ((1 - 2m/s) sqrt(1 - 2m/s + lambda^2 s^2))
/// anchored at rho_lambda(4m) = 4m. Evaluation interpolates the solver knots
/// with quintic Hermite segments built from the closed-form rho' and rho''.
class RhoTable {
 public:
  RhoTable(double m, double lambda, std::vector<double> s,
           std::vector<double> rho);

  double m() const { return m_; }
  double lambda() const { return lambda_; }
  double s_min() const { return s_.front(); }
  double s_max() const { return s_.back(); }
  int knots() const { return static_cast<int>(s_.size()); }

  double value(double s) const;
  double derivative(double s) const;

  static double rhs(double s, double m, double lambda);
  static double rhs_prime(double s, double m, double lambda);

 private:
  int segment(double s) const;
  double m_ = 0.0, lambda_ = 0.0;
  std::vector<double> s_, rho_;
};

/// Integrates the rho ODE over [s_min, s_max]; requires
/// 2m < s_min <= 4m <= s_max. Local tolerance 1e-12.
RhoTable solve_rho_lambda(double m, double lambda, double s_min, double s_max);

/// Tortoise time profile t(r) = r + 2m log(r/2m - 1) of the outgoing null
/// cone through r = 4m (t = r for m = 0).
class TortoiseMap final : public TimeMap {
 public:
  explicit TortoiseMap(double m) : m_(m) {}
  double g(double r) const override;
  double dg(double r) const override;
  double d2g(double r) const override;

 private:
  double m_;
};

/// Time map backed by a RhoTable (values) and the closed-form derivatives.
class RhoMap final : public TimeMap {
 public:
  explicit RhoMap(std::shared_ptr<const RhoTable> table)
      : table_(std::move(table)) {}
  double g(double r) const override { return table_->value(r); }
  double dg(double r) const override {
    return RhoTable::rhs(r, table_->m(), table_->lambda());
  }
  double d2g(double r) const override {
    return RhoTable::rhs_prime(r, table_->m(), table_->lambda());
  }

 private:
  std::shared_ptr<const RhoTable> table_;
};

SurfaceSample build_static_slice(const Profile& u, double m,
                                 const ParameterGrid& grid);
SurfaceSample build_umbilical_slice(const Profile& u, double m, double lambda,
                                    const ParameterGrid& grid);
SurfaceSample build_null_cone(const Profile& u, double m,
                              const ParameterGrid& grid);

/// Verdict of the convex-static admissibility condition
/// h_ab >= Omega^{-1} nu(Omega) g_ab > 0 on the projected base surface.
struct GateResult {
  bool ok = false;
  double margin = 0.0;       // min generalized eigenvalue of h - c g rel. g
  double lower_bound = 0.0;  // min of c (m > 0) or of the h spectrum (m = 0)
  std::string reason;
};

GateResult convex_static_check(const Profile& sigma_hat, double m,
                               const ParameterGrid& grid);
GateResult convex_static_check(const ProfileFields& sigma_hat, double m,
                               const ParameterGrid& grid);

/// Throws GateRejected when the base fails convex_static_check.
SurfaceSample build_convex_static(const Profile& sigma_hat, const Profile& tau,
                                  double m, const ParameterGrid& grid);

/// Projection of a convex-static surface to the t = 0 slice together with
/// the per-node relations tying the two geometries.
struct ProjectionReport {
  Surface3 sigma_hat;         // the projected surface
  double area_sigma = 0.0;    // |Sigma|
  double area_sigma_hat = 0.0;  // |Sigma_hat|, always >= |Sigma|
  double metric_residual = 0.0;
  double inverse_metric_residual = 0.0;
  double volume_element_residual = 0.0;
};

ProjectionReport project_surface(const SurfaceSample& s);

/// Pointwise identities linking -<J, dt> to the projected mean curvature.
struct PointwiseIdentityReport {
  ScalarField j_identity_residual;     // -<J,dt> = -<H,nu> f sqrt(1+f^2|grad tau|^2)
  ScalarField projection_residual;     // -<H,nu> = Hhat + W:(hhat - c ghat)
  ScalarField mean_curvature_excess;   // -<H,nu> - Hhat (>= 0 when gated)
  double max_j_residual = 0.0;
  double max_projection_residual = 0.0;
  double min_excess = 0.0;
};

PointwiseIdentityReport projection_pointwise_identity(const SurfaceSample& s);

/// |div(s f(s) d/ds) - 3 f(s)| on the 3-manifold, evaluated in closed form.
double conformal_killing_divergence(double s, double m, double lambda);

/// Flux of the conformal Killing field s f d/ds through a graph surface.
double conformal_flux(const Surface3& s);

/// Horizon flux 4 pi s0^3 of the conformal Killing field.
double horizon_flux(double m, double lambda);

/// Oracle route: evaluates the flux on level sets s = s0 + eps and
/// Richardson-extrapolates eps -> 0.
double horizon_flux_extrapolated(double m, double lambda,
                                 const ParameterGrid& grid);

}  // namespace gpen
