#include "gpen/intrinsic3.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gpen {

Surface3 build_surface3(const ParameterGrid& grid, double m, double lambda,
                        const ProfileFields& u) {
  const int n = grid.nodes();
  Surface3 s;
  s.grid = grid;
  s.m = m;
  s.lambda = lambda;
  s.u = u;
  s.h.resize(n);
  s.h_inv.resize(n);
  s.sqrt_det_h.resize(n);
  s.normal.resize(n);
  s.second_form.resize(n);
  s.mean_curvature.resize(n);

  double min_H = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.n_theta; ++i) {
    for (int j = 0; j < grid.n_phi; ++j) {
      const int k = grid.idx(i, j);
      const double r = u.v[k];
      const double A = potential_squared(r, m, lambda);
      if (!(A > 0.0)) {
        throw std::domain_error(
            "build_surface3: graph dips to the horizon, A(s) <= 0 at s = " +
            format_g17(r));
      }
      const double st = grid.sin_theta[i];
      const double uth = u.dth[k], uph = u.dph[k];

      // Tangents X_a = (du_a, delta_a) in (s, theta, phi) components;
      // metric diag(1/A, r^2, r^2 sin^2).
      Sym2 h;
      h.a11 = uth * uth / A + r * r;
      h.a12 = uth * uph / A;
      h.a22 = uph * uph / A + r * r * st * st;
      s.h[k] = h;
      s.h_inv[k] = h.inverse();
      s.sqrt_det_h[k] = std::sqrt(h.det());

      // Outward unit conormal is d(s - u); raise and normalize.
      const double n_s_up = A * 1.0;
      const double n_th_up = -uth / (r * r);
      const double n_ph_up = -uph / (r * r * st * st);
      const double nn = n_s_up * n_s_up / A + r * r * n_th_up * n_th_up +
                        r * r * st * st * n_ph_up * n_ph_up;
      const double inv_norm = 1.0 / std::sqrt(nn);
      Vec3 nml{{n_s_up * inv_norm, n_th_up * inv_norm, n_ph_up * inv_norm}};
      s.normal[k] = nml;

      const Christoffel3 c = christoffel3(r, grid.theta[i], m, lambda);
      const Vec3 t1{{uth, 1.0, 0.0}};
      const Vec3 t2{{uph, 0.0, 1.0}};
      const Vec3 d2[3] = {{{u.dthth[k], 0.0, 0.0}},
                          {{u.dthph[k], 0.0, 0.0}},
                          {{u.dphph[k], 0.0, 0.0}}};
      const Vec3* ta[3] = {&t1, &t1, &t2};
      const Vec3* tb[3] = {&t1, &t2, &t2};

      const double gdiag[3] = {1.0 / A, r * r, r * r * st * st};
      double II[3];
      for (int q = 0; q < 3; ++q) {
        Vec3 cov = d2[q];
        for (int mu = 0; mu < 3; ++mu) {
          double acc = 0.0;
          for (int a = 0; a < 3; ++a) {
            for (int bidx = 0; bidx < 3; ++bidx) {
              const double gam = c.G[mu][a][bidx];
              if (gam != 0.0) acc += gam * (*ta[q])[a] * (*tb[q])[bidx];
            }
          }
          cov[mu] += acc;
        }
        double dn = 0.0;
        for (int mu = 0; mu < 3; ++mu) dn += gdiag[mu] * cov[mu] * nml[mu];
        II[q] = -dn;
      }
      s.second_form[k] = {II[0], II[1], II[2]};
      const Sym2& hi = s.h_inv[k];
      const double H =
          hi.a11 * II[0] + 2.0 * hi.a12 * II[1] + hi.a22 * II[2];
      s.mean_curvature[k] = H;
      min_H = std::fmin(min_H, H);
    }
  }
  s.min_mean_curvature = min_H;
  return s;
}

double integrate3(const Surface3& s, const ScalarField& f) {
  if (f.size() != s.sqrt_det_h.size()) {
    throw std::invalid_argument("integrate3: field size mismatch");
  }
  KahanSum acc;
  for (int i = 0; i < s.grid.n_theta; ++i) {
    const double w = s.grid.weight(i) / s.grid.sin_theta[i];
    for (int j = 0; j < s.grid.n_phi; ++j) {
      const int k = s.grid.idx(i, j);
      acc.add(w * f[k] * s.sqrt_det_h[k]);
    }
  }
  return acc.value();
}

double area3(const Surface3& s) {
  ScalarField ones(s.grid.nodes(), 1.0);
  return integrate3(s, ones);
}

double bulk_integral(const ParameterGrid& grid, double m, double lambda,
                     const ScalarField& u, double s_lo, int n_radial,
                     const std::function<double(double)>& phi) {
  std::vector<double> gx, gw;
  gauss_legendre(n_radial, gx, gw);
  KahanSum acc;
  for (int i = 0; i < grid.n_theta; ++i) {
    const double w = grid.weight(i);
    for (int j = 0; j < grid.n_phi; ++j) {
      const double hi = u[grid.idx(i, j)];
      const double half = 0.5 * (hi - s_lo);
      const double mid = 0.5 * (hi + s_lo);
      double radial = 0.0;
      for (int q = 0; q < n_radial; ++q) {
        const double sq = mid + half * gx[q];
        const double A = potential_squared(sq, m, lambda);
        radial += gw[q] * phi(sq) * sq * sq / std::sqrt(A);
      }
      acc.add(w * half * radial);
    }
  }
  return acc.value();
}

double bulk_potential_integral(const ParameterGrid& grid, double /*m*/,
                               double /*lambda*/, const ScalarField& u,
                               double s_lo, int n_radial) {
  // phi = sqrt(A) cancels the volume element's 1/sqrt(A); integrate s^2.
  std::vector<double> gx, gw;
  gauss_legendre(n_radial, gx, gw);
  KahanSum acc;
  for (int i = 0; i < grid.n_theta; ++i) {
    const double w = grid.weight(i);
    for (int j = 0; j < grid.n_phi; ++j) {
      const double hi = u[grid.idx(i, j)];
      const double half = 0.5 * (hi - s_lo);
      const double mid = 0.5 * (hi + s_lo);
      double radial = 0.0;
      for (int q = 0; q < n_radial; ++q) {
        const double sq = mid + half * gx[q];
        radial += gw[q] * sq * sq;
      }
      acc.add(w * half * radial);
    }
  }
  return acc.value();
}

}  // namespace gpen
