#include "gpen/extrinsic.hpp"

#include <cmath>
#include <stdexcept>

namespace gpen {

namespace {

/// (D_a d_b F)^mu = d2F^mu + Gamma^mu_{alpha beta} dFa^alpha dFb^beta.
Vec4 second_covariant(const Christoffel4& c, const Vec4& d2F, const Vec4& dFa,
                      const Vec4& dFb) {
  Vec4 out = d2F;
  for (int mu = 0; mu < 4; ++mu) {
    double acc = 0.0;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const double gam = c.G[mu][a][b];
        if (gam != 0.0) acc += gam * dFa[a] * dFb[b];
      }
    }
    out[mu] += acc;
  }
  return out;
}

/// Tangential projection with respect to the (possibly non-orthogonal)
/// tangent pair: P(W) = g^{ab} <W, dF_a> dF_b.
Vec4 tangential_part(const std::array<double, 4>& gdiag, const Sym2& ginv,
                     const Vec4& W, const Vec4& t1, const Vec4& t2) {
  auto ip = [&gdiag](const Vec4& a, const Vec4& b) {
    return gdiag[0] * a[0] * b[0] + gdiag[1] * a[1] * b[1] +
           gdiag[2] * a[2] * b[2] + gdiag[3] * a[3] * b[3];
  };
  const double c1 = ip(W, t1);
  const double c2 = ip(W, t2);
  const double a1 = ginv.a11 * c1 + ginv.a12 * c2;
  const double a2 = ginv.a12 * c1 + ginv.a22 * c2;
  return a1 * t1 + a2 * t2;
}

}  // namespace

ExtrinsicField compute_extrinsic(const SurfaceSample& s) {
  const int n = s.nodes();
  ExtrinsicField out;
  out.frame.e0.resize(n);
  out.frame.nu.resize(n);
  out.frame.L.resize(n);
  out.frame.Lbar.resize(n);
  out.H.resize(n);
  out.J.resize(n);
  out.H_dot_L.resize(n);
  out.H_dot_Lbar.resize(n);
  out.theta_plus.resize(n);
  out.theta_minus.resize(n);
  out.II_e0.resize(n);
  out.II_nu.resize(n);

  double max_null = 0.0;
  double max_ident = 0.0;

  for (int k = 0; k < n; ++k) {
    const SpacetimePoint p = s.point(k);
    const auto gd = metric_diag(p, s.m);
    const Christoffel4 chr = christoffel(p, s.m);
    auto ip = [&gd](const Vec4& a, const Vec4& b) {
      return gd[0] * a[0] * b[0] + gd[1] * a[1] * b[1] + gd[2] * a[2] * b[2] +
             gd[3] * a[3] * b[3];
    };

    const Vec4& t1 = s.dF_th[k];
    const Vec4& t2 = s.dF_ph[k];
    const Sym2& gi = s.g_inv[k];

    const Vec4 Dthth = second_covariant(chr, s.d2F_thth[k], t1, t1);
    const Vec4 Dthph = second_covariant(chr, s.d2F_thph[k], t1, t2);
    const Vec4 Dphph = second_covariant(chr, s.d2F_phph[k], t2, t2);

    // Trace against the inverse induced metric, then project off tangents.
    Vec4 W = gi.a11 * Dthth + (2.0 * gi.a12) * Dthph + gi.a22 * Dphph;
    const Vec4 H = W - tangential_part(gd, gi, W, t1, t2);
    out.H[k] = H;

    // Orthonormal normal pair. Surfaces in the umbilical slice are seeded
    // with the slice's own unit normal so the frame matches the adapted one;
    // everywhere else dt is the natural seed.
    Vec4 seed0 = basis_t();
    if (s.family == SurfaceFamily::UmbilicalSlice) {
      const double u = p.r;
      const double b = 1.0 - 2.0 * s.m / u;
      const double f = static_potential(u, s.m, s.lambda);
      seed0 = {{f / b, s.lambda * u, 0.0, 0.0}};
    }
    Vec4 w0 = seed0 - tangential_part(gd, gi, seed0, t1, t2);
    const double q0 = ip(w0, w0);
    if (!(q0 < 0.0)) {
      throw std::domain_error(
          "null_frame: degenerate normal space at node " + std::to_string(k));
    }
    Vec4 e0 = (1.0 / std::sqrt(-q0)) * w0;
    if (e0[0] < 0.0) e0 = -1.0 * e0;

    Vec4 v = basis_r();
    v = v - tangential_part(gd, gi, v, t1, t2);
    v += ip(v, e0) * e0;
    const double qv = ip(v, v);
    if (!(qv > 0.0)) {
      throw std::domain_error(
          "null_frame: degenerate normal space at node " + std::to_string(k));
    }
    Vec4 nu = (1.0 / std::sqrt(qv)) * v;
    if (nu[1] < 0.0) nu = -1.0 * nu;  // outward: <nu, dr> > 0

    const Vec4 L = e0 + nu;
    const Vec4 Lbar = -1.0 * e0 + nu;
    out.frame.e0[k] = e0;
    out.frame.nu[k] = nu;
    out.frame.L[k] = L;
    out.frame.Lbar[k] = Lbar;

    const double HL = ip(H, L);
    const double HLbar = ip(H, Lbar);
    out.H_dot_L[k] = HL;
    out.H_dot_Lbar[k] = HLbar;
    const Vec4 J = 0.5 * (HL * Lbar - HLbar * L);
    out.J[k] = J;

    const double Lbar_dt = ip(Lbar, basis_t());
    out.theta_plus[k] = -HL * Lbar_dt;
    out.theta_minus[k] = -HLbar;

    out.II_e0[k] = {ip(Dthth, e0), ip(Dthph, e0), ip(Dphph, e0)};
    out.II_nu[k] = {ip(Dthth, nu), ip(Dthph, nu), ip(Dphph, nu)};

    // Frame and algebraic invariants.
    double r = std::fabs(ip(L, L));
    r = std::fmax(r, std::fabs(ip(Lbar, Lbar)));
    r = std::fmax(r, std::fabs(ip(L, Lbar) - 2.0));
    r = std::fmax(r, std::fabs(ip(e0, t1)));
    r = std::fmax(r, std::fabs(ip(e0, t2)));
    r = std::fmax(r, std::fabs(ip(nu, t1)));
    r = std::fmax(r, std::fabs(ip(nu, t2)));
    max_null = std::fmax(max_null, r);

    const double HH = ip(H, H);
    const double scale = 1.0 + std::fabs(HH);
    double id = std::fabs(ip(J, H)) / scale;
    id = std::fmax(id, std::fabs(ip(J, J) + HH) / scale);
    id = std::fmax(id, std::fabs(ip(H, t1)) / scale);
    id = std::fmax(id, std::fabs(ip(H, t2)) / scale);
    id = std::fmax(id, std::fabs(ip(J, t1)) / scale);
    id = std::fmax(id, std::fabs(ip(J, t2)) / scale);
    max_ident = std::fmax(max_ident, id);
  }

  out.max_null_residual = max_null;
  out.max_identity_residual = max_ident;
  return out;
}

VectorField mean_curvature_vector(const SurfaceSample& s) {
  return compute_extrinsic(s).H;
}

NormalFrame null_frame(const SurfaceSample& s) {
  return compute_extrinsic(s).frame;
}

VectorField dual_mean_curvature(const SurfaceSample& s,
                                const NormalFrame& frame) {
  const int n = s.nodes();
  VectorField H = mean_curvature_vector(s);
  VectorField J(n);
  for (int k = 0; k < n; ++k) {
    const SpacetimePoint p = s.point(k);
    const double prod = inner_product(p, s.m, frame.L[k], frame.Lbar[k]);
    if (std::fabs(prod - 2.0) > 1e-8) {
      throw std::invalid_argument(
          "dual_mean_curvature: frame normalization <L,Lbar> = 2 violated");
    }
    const double HL = inner_product(p, s.m, H[k], frame.L[k]);
    const double HLbar = inner_product(p, s.m, H[k], frame.Lbar[k]);
    J[k] = 0.5 * (HL * frame.Lbar[k] - HLbar * frame.L[k]);
  }
  return J;
}

ScalarField null_expansion(
    const SurfaceSample& s, const NormalFrame& frame,
    const std::function<Vec4(const SpacetimePoint&)>& gauge) {
  const int n = s.nodes();
  VectorField H = mean_curvature_vector(s);
  ScalarField theta(n);
  for (int k = 0; k < n; ++k) {
    const SpacetimePoint p = s.point(k);
    const Vec4 G = gauge(p);
    const double g2 = inner_product(p, s.m, G, G);
    if (!(g2 < 0.0) || !(G[0] > 0.0)) {
      throw std::domain_error(
          "null_expansion: gauge vector is not future timelike at node " +
          std::to_string(k));
    }
    const double HL = inner_product(p, s.m, H[k], frame.L[k]);
    const double LbarG = inner_product(p, s.m, frame.Lbar[k], G);
    // Rescaling Lbar -> Lbar/<Lbar,G> and L -> <Lbar,G> L keeps <L,Lbar> = 2
    // and fixes the gauge <Lbar, G> = 1.
    theta[k] = -HL * LbarG;
  }
  return theta;
}

double killing_flux(const SurfaceSample& s, const ExtrinsicField& ext) {
  ScalarField f(s.nodes());
  for (int k = 0; k < s.nodes(); ++k) {
    f[k] = inner_product(s.point(k), s.m, ext.H[k], basis_t());
  }
  return integrate_scalar(s, f);
}

double killing_flux(const SurfaceSample& s) {
  return killing_flux(s, compute_extrinsic(s));
}

double killing_flux_observer(const SurfaceSample& s, const Observer& obs) {
  VectorField H = mean_curvature_vector(s);
  ScalarField f(s.nodes());
  for (int k = 0; k < s.nodes(); ++k) {
    const SpacetimePoint p = s.point(k);
    f[k] = inner_product(p, s.m, H[k], obs.at(p));
  }
  return integrate_scalar(s, f);
}

std::array<double, 3> hypersurface_second_form(double m, double lambda,
                                               double s,
                                               const ConnectionFn& conn) {
  if (!(s > 2.0 * m)) {
    throw std::domain_error("hypersurface_second_form: require s > 2m");
  }
  const SpacetimePoint p{0.0, s, 1.0, 0.0};
  const auto gd = metric_diag(p, m);
  const Christoffel4 chr = conn ? conn(p, m) : christoffel(p, m);

  const double b = 1.0 - 2.0 * m / s;
  const double f = static_potential(s, m, lambda);
  const double bp = 2.0 * m / (s * s);
  const double fp = potential_squared_prime(s, m, lambda) / (2.0 * f);

  // Unit normal of the slice t = rho_lambda(r) and its radial derivative.
  const Vec4 e0{{f / b, lambda * s, 0.0, 0.0}};
  const Vec4 de0_dr{{(fp * b - f * bp) / (b * b), lambda, 0.0, 0.0}};

  // Adapted orthonormal tangent frame.
  const Vec4 e1{{lambda * s / b, f, 0.0, 0.0}};
  const Vec4 e2{{0.0, 0.0, 1.0 / s, 0.0}};
  const Vec4 e3{{0.0, 0.0, 0.0, 1.0 / (s * std::sin(p.theta))}};

  // (nabla_alpha e0)^mu = d_alpha e0^mu + Gamma^mu_{alpha beta} e0^beta.
  double grad[4][4] = {};
  for (int alpha = 0; alpha < 4; ++alpha) {
    for (int mu = 0; mu < 4; ++mu) {
      double v = (alpha == 1) ? de0_dr[mu] : 0.0;
      for (int beta = 0; beta < 4; ++beta) {
        v += chr.G[mu][alpha][beta] * e0[beta];
      }
      grad[alpha][mu] = v;
    }
  }

  auto second_form = [&](const Vec4& ei) {
    Vec4 cov{};
    for (int mu = 0; mu < 4; ++mu) {
      double v = 0.0;
      for (int alpha = 0; alpha < 4; ++alpha) v += ei[alpha] * grad[alpha][mu];
      cov[mu] = v;
    }
    double out = 0.0;
    for (int mu = 0; mu < 4; ++mu) out += gd[mu] * cov[mu] * ei[mu];
    return out;
  };

  return {second_form(e1), second_form(e2), second_form(e3)};
}

}  // namespace gpen
