#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "gpen/surface.hpp"

namespace gpen {

/// Orthonormal normal pair and the null normals built from it:
/// e0 future timelike, nu outward spacelike (nu^r > 0), L = e0 + nu,
/// Lbar = -e0 + nu, so <L, Lbar> = 2 and L is future / Lbar past directed.
struct NormalFrame {
  VectorField e0, nu, L, Lbar;
};

/// Per-node extrinsic geometry of a SurfaceSample.
struct ExtrinsicField {
  NormalFrame frame;
  VectorField H;             // mean curvature vector (inward on round spheres)
  VectorField J;             // dual mean curvature vector
  ScalarField H_dot_L;       // <H, L>
  ScalarField H_dot_Lbar;    // <H, Lbar>
  ScalarField theta_plus;    // -<H,L><Lbar, dt>: future outward expansion in
                             // the <Lbar, dt> = 1 gauge
  ScalarField theta_minus;   // -<H, Lbar> in the constructed frame
  std::vector<Sym2> II_e0;   // <D_a d_b F, e0>
  std::vector<Sym2> II_nu;   // <D_a d_b F, nu>
  double max_null_residual = 0.0;     // frame nullity / orthogonality check
  double max_identity_residual = 0.0; // <J,H> and <J,J>+<H,H> residuals
};

/// Observer direction for the Minkowski-case inequality: a constant future
/// unit timelike vector, boosted along the z-axis by rapidity chi.
struct Observer {
  double chi = 0.0;

  /// Components of T0 in the spherical coordinate basis at p (m = 0 only
  /// makes <T0,T0> = -1 exact, but the components are defined everywhere).
  Vec4 at(const SpacetimePoint& p) const {
    const double ch = std::cosh(chi), sh = std::sinh(chi);
    return {{ch, sh * std::cos(p.theta), -sh * std::sin(p.theta) / p.r, 0.0}};
  }
};

/// Full per-node pipeline: induced metric comes from the sample; H, frame,
/// J, expansions, and the algebraic invariants are assembled in one pass.
ExtrinsicField compute_extrinsic(const SurfaceSample& s);

/// Mean curvature vector H = g^{ab} (D_a d_b F)^perp.
VectorField mean_curvature_vector(const SurfaceSample& s);

NormalFrame null_frame(const SurfaceSample& s);

VectorField dual_mean_curvature(const SurfaceSample& s,
                                const NormalFrame& frame);

/// Future outward null expansion with Lbar rescaled so <Lbar, gauge> = 1
/// (and L compensated to keep <L,Lbar> = 2). The gauge field must be future
/// timelike at every node.
ScalarField null_expansion(const SurfaceSample& s, const NormalFrame& frame,
                           const std::function<Vec4(const SpacetimePoint&)>& gauge);

/// int <H, dt> dmu — vanishes for the Killing field; returned as a
/// discretization-quality diagnostic.
double killing_flux(const SurfaceSample& s);
double killing_flux(const SurfaceSample& s, const ExtrinsicField& ext);

/// int <H, T0> dmu for a constant observer in Minkowski (m = 0).
double killing_flux_observer(const SurfaceSample& s, const Observer& obs);

/// Hook for fault-injection tests: optional override of the connection used
/// by hypersurface_second_form.
using ConnectionFn =
    std::function<Christoffel4(const SpacetimePoint&, double)>;

/// Second fundamental form diagonal (p11, p22, p33) of the umbilical slice
/// t = rho_lambda(r) in the adapted orthonormal frame, computed from the
/// covariant derivative of its unit normal. Proportionality to the identity
/// with factor lambda is the umbilicity property under test.
std::array<double, 3> hypersurface_second_form(double m, double lambda,
                                               double s,
                                               const ConnectionFn& conn = {});

}  // namespace gpen
