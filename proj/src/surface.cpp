#include "gpen/surface.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gpen {

std::string family_name(SurfaceFamily f) {
  switch (f) {
    case SurfaceFamily::StaticSlice: return "static_slice";
    case SurfaceFamily::UmbilicalSlice: return "umbilical_slice";
    case SurfaceFamily::NullCone: return "null_cone";
    case SurfaceFamily::ConvexStatic: return "convex_static";
  }
  return "unknown";
}

SurfaceFamily family_from_name(const std::string& name) {
  if (name == "static_slice") return SurfaceFamily::StaticSlice;
  if (name == "umbilical_slice") return SurfaceFamily::UmbilicalSlice;
  if (name == "null_cone") return SurfaceFamily::NullCone;
  if (name == "convex_static") return SurfaceFamily::ConvexStatic;
  throw std::invalid_argument("unknown surface family: " + name);
}

namespace {

std::optional<SurfaceSample> embed_impl(const ParameterGrid& grid,
                                        SurfaceFamily family, double m,
                                        double lambda,
                                        const ProfileFields& radial,
                                        const TimeMap* map,
                                        const ProfileFields* tau,
                                        std::string* reason) {
  const int n = grid.nodes();
  SurfaceSample s;
  s.grid = grid;
  s.family = family;
  s.m = m;
  s.lambda = (family == SurfaceFamily::UmbilicalSlice) ? lambda : 0.0;
  s.radial = radial;
  s.time = (tau != nullptr) ? *tau : ProfileFields::zeros(n);

  s.F.resize(n);
  s.dF_th.resize(n);
  s.dF_ph.resize(n);
  s.d2F_thth.resize(n);
  s.d2F_thph.resize(n);
  s.d2F_phph.resize(n);
  s.g.resize(n);
  s.g_inv.resize(n);
  s.sqrt_det_g.resize(n);

  // Anything within a relative 1e-12 of the horizon is numerically on it.
  for (int k = 0; k < n; ++k) {
    if (!(radial.v[k] > 2.0 * m * (1.0 + 1e-12))) {
      if (reason != nullptr) {
        *reason = "radial profile reaches r = " + format_g17(radial.v[k]) +
                  " <= 2m = " + format_g17(2.0 * m);
      }
      return std::nullopt;
    }
  }

  for (int i = 0; i < grid.n_theta; ++i) {
    for (int j = 0; j < grid.n_phi; ++j) {
      const int k = grid.idx(i, j);
      const double u = radial.v[k];
      const double uth = radial.dth[k], uph = radial.dph[k];
      const double uthth = radial.dthth[k], uthph = radial.dthph[k],
                   uphph = radial.dphph[k];

      double T = s.time.v[k];
      double Tth = s.time.dth[k], Tph = s.time.dph[k];
      double Tthth = s.time.dthth[k], Tthph = s.time.dthph[k],
             Tphph = s.time.dphph[k];
      if (map != nullptr) {
        const double G = map->g(u), G1 = map->dg(u), G2 = map->d2g(u);
        T += G;
        Tth += G1 * uth;
        Tph += G1 * uph;
        Tthth += G2 * uth * uth + G1 * uthth;
        Tthph += G2 * uth * uph + G1 * uthph;
        Tphph += G2 * uph * uph + G1 * uphph;
      }

      s.F[k] = {{T, u, grid.theta[i], grid.phi[j]}};
      s.dF_th[k] = {{Tth, uth, 1.0, 0.0}};
      s.dF_ph[k] = {{Tph, uph, 0.0, 1.0}};
      s.d2F_thth[k] = {{Tthth, uthth, 0.0, 0.0}};
      s.d2F_thph[k] = {{Tthph, uthph, 0.0, 0.0}};
      s.d2F_phph[k] = {{Tphph, uphph, 0.0, 0.0}};
    }
  }

  double margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const SpacetimePoint p = s.point(k);
    Sym2 g;
    g.a11 = inner_product(p, m, s.dF_th[k], s.dF_th[k]);
    g.a12 = inner_product(p, m, s.dF_th[k], s.dF_ph[k]);
    g.a22 = inner_product(p, m, s.dF_ph[k], s.dF_ph[k]);
    const double e = g.min_eigenvalue();
    margin = std::fmin(margin, e);
    if (!(e > 0.0)) {
      if (reason != nullptr) {
        *reason = "surface is not spacelike at node " + std::to_string(k) +
                  ": induced-metric eigenvalues (" +
                  format_g17(g.min_eigenvalue()) + ", " +
                  format_g17(g.a11 + g.a22 - g.min_eigenvalue()) + ")";
      }
      return std::nullopt;
    }
    s.g[k] = g;
    s.g_inv[k] = g.inverse();
    s.sqrt_det_g[k] = std::sqrt(g.det());
  }
  s.spacelike_margin = margin;
  return s;
}

}  // namespace

SurfaceSample embed_graph(const ParameterGrid& grid, SurfaceFamily family,
                          double m, double lambda, const ProfileFields& radial,
                          const TimeMap* map, const ProfileFields* tau) {
  std::string reason;
  auto s = embed_impl(grid, family, m, lambda, radial, map, tau, &reason);
  if (!s) throw std::domain_error(reason);
  return std::move(*s);
}

std::optional<SurfaceSample> try_embed_graph(
    const ParameterGrid& grid, SurfaceFamily family, double m, double lambda,
    const ProfileFields& radial, const TimeMap* map, const ProfileFields* tau,
    std::string* reason) {
  return embed_impl(grid, family, m, lambda, radial, map, tau, reason);
}

double integrate_scalar(const SurfaceSample& s, const ScalarField& f) {
  if (f.size() != s.sqrt_det_g.size()) {
    throw std::invalid_argument("integrate_scalar: field size mismatch");
  }
  // sqrt(det g) carries the chart's sin(theta); the quadrature weights
  // integrate the round measure, so divide it back out.
  KahanSum acc;
  for (int i = 0; i < s.grid.n_theta; ++i) {
    const double w = s.grid.weight(i) / s.grid.sin_theta[i];
    for (int j = 0; j < s.grid.n_phi; ++j) {
      const int k = s.grid.idx(i, j);
      acc.add(w * f[k] * s.sqrt_det_g[k]);
    }
  }
  return acc.value();
}

double surface_area(const SurfaceSample& s) {
  ScalarField ones(s.nodes(), 1.0);
  return integrate_scalar(s, ones);
}

}  // namespace gpen
