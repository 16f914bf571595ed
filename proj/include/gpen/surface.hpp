#pragma once

#include <optional>
#include <string>

#include "gpen/geometry.hpp"
#include "gpen/grid.hpp"
#include "gpen/profile.hpp"

namespace gpen {

enum class SurfaceFamily { StaticSlice, UmbilicalSlice, NullCone, ConvexStatic };

std::string family_name(SurfaceFamily f);
SurfaceFamily family_from_name(const std::string& name);

/// Declarative description of a surface in one of the four families.
/// `radial` is the star-shaped graph profile u (sigma_hat for ConvexStatic);
/// `time` is the tau profile and only meaningful for ConvexStatic.
struct SurfaceSpec {
  SurfaceFamily family = SurfaceFamily::StaticSlice;
  double m = 1.0;
  double lambda = 1.0;  // UmbilicalSlice slice parameter
  Profile radial;
  Profile time;
};

/// Radial-to-time map T = G(r) with two derivatives, used to place a radial
/// graph on a slice (umbilical: G = rho_lambda; null cone: tortoise time).
class TimeMap {
 public:
  virtual ~TimeMap() = default;
  virtual double g(double r) const = 0;
  virtual double dg(double r) const = 0;
  virtual double d2g(double r) const = 0;
};

/// A discretized spacelike 2-surface: embedding F, chart derivatives, induced
/// metric data, and the profile fields it was built from.
struct SurfaceSample {
  ParameterGrid grid;
  SurfaceFamily family = SurfaceFamily::StaticSlice;
  double m = 0.0;
  double lambda = 0.0;

  VectorField F;        // (t, r, theta, phi) per node
  VectorField dF_th, dF_ph;
  VectorField d2F_thth, d2F_thph, d2F_phph;

  ProfileFields radial;  // u and chart partials
  ProfileFields time;    // tau and chart partials (ConvexStatic; else zeros)
  std::string radial_source;  // spec provenance (expression or file)
  std::string time_source;

  std::vector<Sym2> g;      // induced metric
  std::vector<Sym2> g_inv;
  ScalarField sqrt_det_g;
  double spacelike_margin = 0.0;  // min over nodes of min eigenvalue of g

  SpacetimePoint point(int k) const {
    return {F[k][0], F[k][1], F[k][2], F[k][3]};
  }
  int nodes() const { return grid.nodes(); }
};

/// Assembles a SurfaceSample from evaluated profiles. The time profile is
/// T = G(u) + tau with either part optional. Throws std::domain_error when
/// the radial profile violates r > 2m or any node fails the spacelike check.
SurfaceSample embed_graph(const ParameterGrid& grid, SurfaceFamily family,
                          double m, double lambda, const ProfileFields& radial,
                          const TimeMap* map, const ProfileFields* tau);

/// Non-throwing variant; returns std::nullopt and a reason instead.
std::optional<SurfaceSample> try_embed_graph(
    const ParameterGrid& grid, SurfaceFamily family, double m, double lambda,
    const ProfileFields& radial, const TimeMap* map, const ProfileFields* tau,
    std::string* reason);

/// Family dispatch (builders live with the slice constructions).
SurfaceSample embed_surface(const SurfaceSpec& spec, const ParameterGrid& grid);

/// Integral of a per-node field against the induced area measure.
double integrate_scalar(const SurfaceSample& s, const ScalarField& f);

double surface_area(const SurfaceSample& s);

}  // namespace gpen
