#include "gpen/slices.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gpen {

double s0_root(double m, double lambda) {
  if (!(m > 0.0) || !(lambda > 0.0)) {
    throw std::domain_error("s0_root: require m > 0 and lambda > 0");
  }
  auto A = [&](double s) { return potential_squared(s, m, lambda); };
  double lo = 2.0 * m * 1e-12;
  double hi = 2.0 * m;
  if (!(A(lo) < 0.0) || !(A(hi) > 0.0)) {
    throw std::runtime_error("s0_root: bracket failure");
  }
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (A(mid) < 0.0 ? lo : hi) = mid;
  }
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    const double f = A(s);
    const double fp = potential_squared_prime(s, m, lambda);
    const double step = f / fp;
    s -= step;
    if (std::fabs(step) < 1e-15 * s) break;
  }
  return s;
}

double RhoTable::rhs(double s, double m, double lambda) {
  const double b = 1.0 - 2.0 * m / s;
  const double A = potential_squared(s, m, lambda);
  return lambda * s / (b * std::sqrt(A));
}

double RhoTable::rhs_prime(double s, double m, double lambda) {
  const double b = 1.0 - 2.0 * m / s;
  const double bp = 2.0 * m / (s * s);
  const double A = potential_squared(s, m, lambda);
  const double Ap = potential_squared_prime(s, m, lambda);
  return rhs(s, m, lambda) * (1.0 / s - bp / b - Ap / (2.0 * A));
}

RhoTable::RhoTable(double m, double lambda, std::vector<double> s,
                   std::vector<double> rho)
    : m_(m), lambda_(lambda), s_(std::move(s)), rho_(std::move(rho)) {
  if (s_.size() != rho_.size() || s_.size() < 2) {
    throw std::invalid_argument("RhoTable: malformed knot data");
  }
}

int RhoTable::segment(double s) const {
  if (s < s_.front() - 1e-12 || s > s_.back() + 1e-12) {
    throw std::domain_error("RhoTable: query s = " + format_g17(s) +
                            " outside table range [" + format_g17(s_.front()) +
                            ", " + format_g17(s_.back()) + "]");
  }
  const auto it = std::upper_bound(s_.begin(), s_.end(), s);
  int k = static_cast<int>(it - s_.begin()) - 1;
  k = std::clamp(k, 0, static_cast<int>(s_.size()) - 2);
  return k;
}

namespace {

struct Quintic {
  double a0, a1, a2, a3, a4, a5, h;
  double value(double tau) const {
    return a0 + tau * (a1 + tau * (a2 + tau * (a3 + tau * (a4 + tau * a5))));
  }
  double derivative(double tau) const {
    return (a1 +
            tau * (2.0 * a2 +
                   tau * (3.0 * a3 + tau * (4.0 * a4 + tau * 5.0 * a5)))) /
           h;
  }
};

Quintic hermite_quintic(double h, double y0, double d0, double dd0, double y1,
                        double d1, double dd1) {
  Quintic q;
  q.h = h;
  q.a0 = y0;
  q.a1 = d0 * h;
  q.a2 = 0.5 * dd0 * h * h;
  const double r0 = y1 - (q.a0 + q.a1 + q.a2);
  const double r1 = d1 * h - (q.a1 + 2.0 * q.a2);
  const double r2 = dd1 * h * h - 2.0 * q.a2;
  q.a3 = 10.0 * r0 - 4.0 * r1 + 0.5 * r2;
  q.a4 = -15.0 * r0 + 7.0 * r1 - r2;
  q.a5 = 6.0 * r0 - 3.0 * r1 + 0.5 * r2;
  return q;
}

}  // namespace

double RhoTable::value(double s) const {
  const int k = segment(s);
  const double h = s_[k + 1] - s_[k];
  const Quintic q = hermite_quintic(
      h, rho_[k], rhs(s_[k], m_, lambda_), rhs_prime(s_[k], m_, lambda_),
      rho_[k + 1], rhs(s_[k + 1], m_, lambda_),
      rhs_prime(s_[k + 1], m_, lambda_));
  return q.value((s - s_[k]) / h);
}

double RhoTable::derivative(double s) const {
  const int k = segment(s);
  const double h = s_[k + 1] - s_[k];
  const Quintic q = hermite_quintic(
      h, rho_[k], rhs(s_[k], m_, lambda_), rhs_prime(s_[k], m_, lambda_),
      rho_[k + 1], rhs(s_[k + 1], m_, lambda_),
      rhs_prime(s_[k + 1], m_, lambda_));
  return q.derivative((s - s_[k]) / h);
}

RhoTable solve_rho_lambda(double m, double lambda, double s_min,
                          double s_max) {
  if (!(m > 0.0) || !(lambda > 0.0)) {
    throw std::domain_error("solve_rho_lambda: require m > 0, lambda > 0");
  }
  const double guard = 2.0 * m * (1.0 + 1e-6);
  if (!(s_min > 2.0 * m)) {
    throw std::domain_error("solve_rho_lambda: require s_min > 2m");
  }
  if (s_min < guard) {
    throw std::domain_error(
        "solve_rho_lambda: s_min inside the near-horizon guard 2m(1+1e-6)");
  }
  if (!(s_min <= 4.0 * m) || !(s_max >= 4.0 * m)) {
    throw std::domain_error(
        "solve_rho_lambda: require s_min <= 4m <= s_max");
  }
  const double anchor = 4.0 * m;
  auto f = [&](double s, double) { return RhoTable::rhs(s, m, lambda); };
  const double h_max = 0.05 * m;

  std::vector<double> s_knots{anchor};
  std::vector<double> rho_knots{anchor};

  if (s_min < anchor) {
    OdeSolution down =
        integrate_dopri5(f, anchor, anchor, s_min, 1e-12, 1e-12, h_max);
    for (size_t i = 1; i < down.t.size(); ++i) {
      s_knots.insert(s_knots.begin(), down.t[i]);
      rho_knots.insert(rho_knots.begin(), down.y[i]);
    }
  }
  if (s_max > anchor) {
    OdeSolution up =
        integrate_dopri5(f, anchor, anchor, s_max, 1e-12, 1e-12, h_max);
    for (size_t i = 1; i < up.t.size(); ++i) {
      s_knots.push_back(up.t[i]);
      rho_knots.push_back(up.y[i]);
    }
  }
  return RhoTable(m, lambda, std::move(s_knots), std::move(rho_knots));
}

double TortoiseMap::g(double r) const {
  if (m_ == 0.0) return r;
  return r + 2.0 * m_ * std::log(r / (2.0 * m_) - 1.0);
}

double TortoiseMap::dg(double r) const {
  return 1.0 / (1.0 - 2.0 * m_ / r);
}

double TortoiseMap::d2g(double r) const {
  const double b = 1.0 - 2.0 * m_ / r;
  return -(2.0 * m_ / (r * r)) / (b * b);
}

SurfaceSample build_static_slice(const Profile& u, double m,
                                 const ParameterGrid& grid) {
  const ProfileFields fields = eval_profile(u, grid);
  SurfaceSample s = embed_graph(grid, SurfaceFamily::StaticSlice, m, 0.0,
                                fields, nullptr, nullptr);
  s.radial_source = u.source;
  return s;
}

SurfaceSample build_umbilical_slice(const Profile& u, double m, double lambda,
                                    const ParameterGrid& grid) {
  if (!(m > 0.0)) {
    throw std::domain_error(
        "build_umbilical_slice: requires m > 0 (the rho anchor sits at 4m)");
  }
  const ProfileFields fields = eval_profile(u, grid);
  double u_min = fields.v[0], u_max = fields.v[0];
  for (double v : fields.v) {
    u_min = std::fmin(u_min, v);
    u_max = std::fmax(u_max, v);
  }
  if (!(u_min > 2.0 * m * (1.0 + 1e-6))) {
    throw std::domain_error(
        "build_umbilical_slice: profile reaches the near-horizon guard "
        "2m(1+1e-6)");
  }
  auto table = std::make_shared<RhoTable>(solve_rho_lambda(
      m, lambda, std::fmin(u_min, 4.0 * m), std::fmax(u_max, 4.0 * m)));
  RhoMap map(table);
  SurfaceSample s = embed_graph(grid, SurfaceFamily::UmbilicalSlice, m, lambda,
                                fields, &map, nullptr);
  s.radial_source = u.source;
  return s;
}

SurfaceSample build_null_cone(const Profile& u, double m,
                              const ParameterGrid& grid) {
  const ProfileFields fields = eval_profile(u, grid);
  TortoiseMap map(m);
  SurfaceSample s = embed_graph(grid, SurfaceFamily::NullCone, m, 0.0, fields,
                                &map, nullptr);
  s.radial_source = u.source;
  return s;
}

GateResult convex_static_check(const Profile& sigma_hat, double m,
                               const ParameterGrid& grid) {
  return convex_static_check(eval_profile(sigma_hat, grid), m, grid);
}

GateResult convex_static_check(const ProfileFields& sigma_hat, double m,
                               const ParameterGrid& grid) {
  GateResult res;
  for (double v : sigma_hat.v) {
    if (!(v > 2.0 * m)) {
      res.ok = false;
      res.reason = "base surface reaches r <= 2m";
      return res;
    }
  }
  const Surface3 base = build_surface3(grid, m, 0.0, sigma_hat);

  double margin = std::numeric_limits<double>::infinity();
  double lower = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid.nodes(); ++k) {
    const double r = sigma_hat.v[k];
    const double b = 1.0 - 2.0 * m / r;
    // c = Omega^{-1} nu(Omega) with Omega = sqrt(b):
    // nu(Omega) = n^s Omega'(r), Omega' = m / (r^2 sqrt(b)).
    const double c = base.normal[k][0] * m / (r * r * b);
    const Sym2 gauge_tensor = base.second_form[k] - c * base.h[k];
    margin =
        std::fmin(margin, generalized_min_eigenvalue(gauge_tensor, base.h[k]));
    if (m > 0.0) {
      lower = std::fmin(lower, c);
    } else {
      lower = std::fmin(lower, generalized_min_eigenvalue(base.second_form[k],
                                                          base.h[k]));
    }
  }
  res.margin = margin;
  res.lower_bound = lower;
  res.ok = (margin >= -1e-10) && (lower > 0.0);
  if (!res.ok) {
    res.reason = "convex-static condition fails: margin = " +
                 format_g17(margin) +
                 ", lower bound = " + format_g17(lower);
  }
  return res;
}

SurfaceSample build_convex_static(const Profile& sigma_hat, const Profile& tau,
                                  double m, const ParameterGrid& grid) {
  const ProfileFields radial = eval_profile(sigma_hat, grid);
  const GateResult gate = convex_static_check(radial, m, grid);
  if (!gate.ok) throw GateRejected(gate.reason);
  const ProfileFields tau_fields = eval_profile(tau, grid);
  SurfaceSample s = embed_graph(grid, SurfaceFamily::ConvexStatic, m, 0.0,
                                radial, nullptr, &tau_fields);
  s.radial_source = sigma_hat.source;
  s.time_source = tau.source;
  return s;
}

ProjectionReport project_surface(const SurfaceSample& s) {
  if (s.family != SurfaceFamily::ConvexStatic) {
    throw std::invalid_argument(
        "project_surface: surface is not in the convex-static family");
  }
  ProjectionReport rep;
  rep.sigma_hat = build_surface3(s.grid, s.m, 0.0, s.radial);
  rep.area_sigma = surface_area(s);
  rep.area_sigma_hat = area3(rep.sigma_hat);

  double r_metric = 0.0, r_inverse = 0.0, r_volume = 0.0;
  for (int k = 0; k < s.nodes(); ++k) {
    const double r = s.radial.v[k];
    const double f2 = 1.0 - 2.0 * s.m / r;
    const double tth = s.time.dth[k], tph = s.time.dph[k];
    const Sym2& g = s.g[k];
    const Sym2& gi = s.g_inv[k];
    const Sym2& gh = rep.sigma_hat.h[k];
    const Sym2& ghi = rep.sigma_hat.h_inv[k];
    const double scale = gh.max_abs();

    const Sym2 predicted{g.a11 + f2 * tth * tth, g.a12 + f2 * tth * tph,
                         g.a22 + f2 * tph * tph};
    r_metric = std::fmax(r_metric, (gh - predicted).max_abs() / scale);

    // Raised gradient and |grad tau|^2 in the Sigma metric.
    const double tu1 = gi.a11 * tth + gi.a12 * tph;
    const double tu2 = gi.a12 * tth + gi.a22 * tph;
    const double grad2 = tu1 * tth + tu2 * tph;
    const double denom = 1.0 + f2 * grad2;
    const Sym2 predicted_inv{gi.a11 - f2 * tu1 * tu1 / denom,
                             gi.a12 - f2 * tu1 * tu2 / denom,
                             gi.a22 - f2 * tu2 * tu2 / denom};
    r_inverse = std::fmax(
        r_inverse, (ghi - predicted_inv).max_abs() / ghi.max_abs());

    const double dmu_hat = rep.sigma_hat.sqrt_det_h[k];
    const double dmu = s.sqrt_det_g[k];
    r_volume = std::fmax(
        r_volume, std::fabs(dmu_hat - dmu * std::sqrt(denom)) / dmu_hat);
  }
  rep.metric_residual = r_metric;
  rep.inverse_metric_residual = r_inverse;
  rep.volume_element_residual = r_volume;
  return rep;
}

PointwiseIdentityReport projection_pointwise_identity(const SurfaceSample& s) {
  if (s.family != SurfaceFamily::ConvexStatic) {
    throw std::invalid_argument(
        "projection_pointwise_identity: surface is not convex-static");
  }
  const ExtrinsicField ext = compute_extrinsic(s);
  const Surface3 base = build_surface3(s.grid, s.m, 0.0, s.radial);

  PointwiseIdentityReport rep;
  const int n = s.nodes();
  rep.j_identity_residual.resize(n);
  rep.projection_residual.resize(n);
  rep.mean_curvature_excess.resize(n);
  double max_j = 0.0, max_p = 0.0;
  double min_excess = std::numeric_limits<double>::infinity();

  for (int k = 0; k < n; ++k) {
    const SpacetimePoint p = s.point(k);
    const double r = s.radial.v[k];
    const double f2 = 1.0 - 2.0 * s.m / r;
    const double f = std::sqrt(f2);
    const double tth = s.time.dth[k], tph = s.time.dph[k];
    const Sym2& gi = s.g_inv[k];

    const double tu1 = gi.a11 * tth + gi.a12 * tph;
    const double tu2 = gi.a12 * tth + gi.a22 * tph;
    const double grad2 = tu1 * tth + tu2 * tph;
    const double stretch = std::sqrt(1.0 + f2 * grad2);

    const double minus_J_dt =
        -inner_product(p, s.m, ext.J[k], basis_t());
    const double minus_H_nu =
        -inner_product(p, s.m, ext.H[k], ext.frame.nu[k]);

    const double lhs_scale = 1.0 + std::fabs(minus_J_dt);
    const double jr =
        std::fabs(minus_J_dt - minus_H_nu * f * stretch) / lhs_scale;
    rep.j_identity_residual[k] = jr;
    max_j = std::fmax(max_j, jr);

    // -<H, nu> = Hhat + W^{ab} (hhat_ab - f^{-1} nu(f) ghat_ab),
    // W^{ab} = f^2 tau^a tau^b / (1 + f^2 |grad tau|^2).
    const double c = base.normal[k][0] * s.m / (r * r * f2);
    const Sym2 T = base.second_form[k] - c * base.h[k];
    const double WT = f2 / (1.0 + f2 * grad2) *
                      (tu1 * tu1 * T.a11 + 2.0 * tu1 * tu2 * T.a12 +
                       tu2 * tu2 * T.a22);
    const double Hhat = base.mean_curvature[k];
    const double pr =
        std::fabs(minus_H_nu - Hhat - WT) / (1.0 + std::fabs(Hhat));
    rep.projection_residual[k] = pr;
    max_p = std::fmax(max_p, pr);

    const double excess = minus_H_nu - Hhat;
    rep.mean_curvature_excess[k] = excess;
    min_excess = std::fmin(min_excess, excess);
  }
  rep.max_j_residual = max_j;
  rep.max_projection_residual = max_p;
  rep.min_excess = min_excess;
  return rep;
}

SurfaceSample embed_surface(const SurfaceSpec& spec, const ParameterGrid& grid) {
  switch (spec.family) {
    case SurfaceFamily::StaticSlice:
      return build_static_slice(spec.radial, spec.m, grid);
    case SurfaceFamily::UmbilicalSlice:
      return build_umbilical_slice(spec.radial, spec.m, spec.lambda, grid);
    case SurfaceFamily::NullCone:
      return build_null_cone(spec.radial, spec.m, grid);
    case SurfaceFamily::ConvexStatic:
      return build_convex_static(spec.radial, spec.time, spec.m, grid);
  }
  throw std::invalid_argument("embed_surface: unknown family");
}

double conformal_killing_divergence(double s, double m, double lambda) {
  const double A = potential_squared(s, m, lambda);
  if (!(A > 0.0)) {
    throw std::domain_error("conformal_killing_divergence: require A(s) > 0");
  }
  const double f = std::sqrt(A);
  const double fp = potential_squared_prime(s, m, lambda) / (2.0 * f);
  const Christoffel3 c = christoffel3(s, kPi / 2.0, m, lambda);
  const double trace_gamma = c.G[0][0][0] + c.G[1][1][0] + c.G[2][2][0];
  const double div = (f + s * fp) + trace_gamma * s * f;
  return div - 3.0 * f;
}

double conformal_flux(const Surface3& s) {
  ScalarField integrand(s.grid.nodes());
  for (int k = 0; k < s.grid.nodes(); ++k) {
    const double r = s.u.v[k];
    const double A = potential_squared(r, s.m, s.lambda);
    // <n, s f d/ds> with metric g_ss = 1/A and f = sqrt(A).
    integrand[k] = s.normal[k][0] * r * std::sqrt(A) / A;
  }
  return integrate3(s, integrand);
}

double horizon_flux(double m, double lambda) {
  const double s0 = s0_root(m, lambda);
  return kFourPi * s0 * s0 * s0;
}

double horizon_flux_extrapolated(double m, double lambda,
                                 const ParameterGrid& grid) {
  const double s0 = s0_root(m, lambda);
  const int levels = 5;
  std::vector<double> eps(levels), val(levels);
  for (int k = 0; k < levels; ++k) {
    eps[k] = 0.2 * s0 / std::pow(2.0, k);
    const ProfileFields level =
        eval_profile(constant_profile(s0 + eps[k]), grid);
    val[k] = conformal_flux(build_surface3(grid, m, lambda, level));
  }
  // Neville extrapolation to eps = 0.
  for (int j = 1; j < levels; ++j) {
    for (int i = levels - 1; i >= j; --i) {
      val[i] = val[i] + (val[i] - val[i - 1]) * eps[i] / (eps[i - j] - eps[i]);
    }
  }
  return val[levels - 1];
}

}  // namespace gpen
