#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gpen/slices.hpp"

namespace gpen {

/// Tolerance ladder; one decade of headroom between numerical layers.
struct Tolerances {
  double identity = 1e-9;
  double inequality = 1e-8;
  double ode = 1e-12;
  double root = 1e-13;

  bool operator==(const Tolerances&) const = default;
};

/// -int <J, dt> dmu + 16 pi m, the mass-shifted dual-mean-curvature flux.
double penrose_lhs(const SurfaceSample& s);
double penrose_lhs(const SurfaceSample& s, const ExtrinsicField& ext);

/// sqrt(16 pi |Sigma|).
double penrose_rhs(const SurfaceSample& s);

/// -int <H,L><Lbar, dt> dmu + 16 pi m; agrees with penrose_lhs up to the
/// Killing-flux discretization error.
double penrose_lhs_frame_form(const SurfaceSample& s);
double penrose_lhs_frame_form(const SurfaceSample& s,
                              const ExtrinsicField& ext);

/// Minkowski-case report: the dual-curvature form and the null-expansion
/// form (gauge <Lbar, T0> = 1) of the inequality, both against the same RHS.
struct MinkowskiReport {
  double j_form = 0.0;
  double expansion_form = 0.0;
  double rhs = 0.0;
  double j_gap = 0.0;
  double expansion_gap = 0.0;
  double form_agreement = 0.0;  // |j_form - expansion_form|
  double killing_flux = 0.0;    // int <H, T0> dmu
};

MinkowskiReport minkowski_penrose(const SurfaceSample& s, const Observer& obs);

/// Static-slice reduction: (intrinsic form int H sqrt(1-2m/r) dmu + 16 pi m,
/// general spacetime LHS); the two must agree.
std::pair<double, double> static_slice_reduction(const SurfaceSample& s);

/// Split of -int <J, dt> dmu for umbilical-slice surfaces into the intrinsic
/// surface term, the bulk term, and the horizon term.
struct UmbilicalDecomposition {
  double surface_term = 0.0;   // int H f dmu on Sigma in (M, gbar)
  double bulk_term = 0.0;      // 6 lambda^2 int_Omega f dvol
  double horizon_term = 0.0;   // 8 pi lambda^2 s0^3
  double j_integral = 0.0;     // -int <J, dt> dmu, extrinsic
  double residual = 0.0;       // |j_integral - (surface - bulk - horizon)|
};

UmbilicalDecomposition umbilical_decomposition(const SurfaceSample& s);

/// Minkowski-type inequality in the AdS-Schwarzschild 3-manifold (lambda = 1):
/// gap = int f H dmu - 6 int_Omega f dvol - (sqrt(16 pi |Sigma|) - 8 pi s0).
struct BhwResult {
  double gap = 0.0;
  double min_mean_curvature = 0.0;
  bool mean_convex = false;
};

BhwResult bhw_check(const ParameterGrid& grid, double m, const Profile& u);
BhwResult bhw_check(const ParameterGrid& grid, double m,
                    const ProfileFields& u);

/// Closure of the umbilical proof chain at lambda = 1: the spacetime gap
/// equals the intrinsic BHW gap because 16 pi m - 8 pi s0^3 - 8 pi s0 = 0.
struct AssemblyCheck {
  double penrose_gap = 0.0;
  double bhw_gap = 0.0;
  double mass_identity = 0.0;  // 16 pi m - 8 pi s0^3 - 8 pi s0
  double residual = 0.0;       // |penrose_gap - bhw_gap|
};

AssemblyCheck final_assembly_check(const SurfaceSample& s);

/// lambda-sweep of umbilical-slice surfaces sharing the radial profile of a
/// null-cone surface; the gaps and the embeddings approach the null-cone
/// limit monotonically.
struct SweepReport {
  std::vector<double> lambdas;
  std::vector<double> gaps;
  std::vector<double> min_mean_curvature;  // of Sigma_lambda in M-hat_lambda
  std::vector<double> sup_embedding_distance;
  double null_cone_gap = 0.0;
  bool gap_monotone = false;
  bool embedding_monotone = false;
};

SweepReport null_cone_limit_study(const Profile& u, double m,
                                  const std::vector<double>& lambdas,
                                  const ParameterGrid& grid);

/// The three links of the convex-static chain plus the end-to-end gap.
struct ChainReport {
  GateResult gate;
  double j_integral = 0.0;     // -int_Sigma <J, dt> dmu
  double projected_flux = 0.0; // int_Sigmahat Hhat f dmu-hat
  double link1 = 0.0;          // j_integral - projected_flux
  double link2 = 0.0;          // projected_flux - (sqrt(16pi|Sigmahat|) - 16pi m)
  double link3 = 0.0;          // |Sigmahat| - |Sigma|
  double end_gap = 0.0;        // penrose_lhs - penrose_rhs
};

ChainReport convex_static_chain(const SurfaceSample& s);

/// Deterministic family of randomized star-shaped surface specs.
struct FamilySpec {
  SurfaceFamily family = SurfaceFamily::StaticSlice;
  double m = 1.0;
  double lambda = 1.0;
  double base_radius = 3.0;
  int l_max = 4;
  double amplitude = 0.1;      // sup-norm of the relative radial perturbation
  double tau_amplitude = -1.0; // ConvexStatic time profile; < 0 means
                               // 0.15 * amplitude * base_radius
  int count = 100;
  std::uint64_t seed = 0;
};

std::vector<SurfaceSpec> generate_family(const FamilySpec& fs,
                                         const ParameterGrid& grid,
                                         std::vector<std::string>* rejections);

/// Per-resolution values with Richardson-style observed orders.
struct ConvergenceStudy {
  std::vector<std::pair<int, int>> resolutions;
  std::vector<double> area, lhs, kflux;
  std::vector<double> area_orders, lhs_orders, kflux_orders;
  std::string area_flag, lhs_flag, kflux_flag;  // "", "exact",
                                                // "inconclusive",
                                                // "under-resolved"
};

ConvergenceStudy convergence_study(
    const SurfaceSpec& spec, const std::vector<std::pair<int, int>>& res);

/// One verified surface: both sides, the gap, and the diagnostics.
struct InequalityReport {
  std::string family;
  double m = 0.0, lambda = 0.0;
  int n_theta = 0, n_phi = 0;
  double lhs = 0.0, rhs = 0.0, gap = 0.0;
  double frame_form_lhs = 0.0;
  double area = 0.0;
  double killing_flux = 0.0;
  double min_expansion = 0.0;       // min future outward expansion
  double min_past_expansion = 0.0;  // diagnostic for the unchecked
                                    // past-null-smoothness hypothesis
  double identity_residual = 0.0;
  double gate_margin = 0.0;
  bool equality_case = false;
  bool inequality_ok = false;
  std::vector<std::pair<std::string, double>> extras;
};

InequalityReport verify_surface(const SurfaceSpec& spec,
                                const ParameterGrid& grid,
                                const Tolerances& tol);

/// Gate-free evaluation of an arbitrary spacelike radial graph
/// (t, r) = (tau, u) over S^2. No family hypothesis is checked, so the
/// result certifies nothing; exploratory probing only.
InequalityReport probe_general_graph(const Profile& u, const Profile& tau,
                                     double m, const ParameterGrid& grid,
                                     const Tolerances& tol);

}  // namespace gpen
