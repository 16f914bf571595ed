#include <cmath>
#include <random>

#include "doctest.h"
#include "gpen/slices.hpp"

using namespace gpen;

namespace {

// Test-local oracle: rho(s) = 4m + integral of the closed-form rho' by
// panel-doubling composite Gauss-Legendre until two refinements agree.
double rho_by_quadrature(double m, double lambda, double s) {
  std::vector<double> gx, gw;
  gauss_legendre(32, gx, gw);
  auto integrate = [&](int panels) {
    const double a = 4.0 * m, b = s;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double lo = a + (b - a) * p / panels;
      const double hi = a + (b - a) * (p + 1) / panels;
      const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
      for (int q = 0; q < 32; ++q) {
        total += gw[q] * half * RhoTable::rhs(mid + half * gx[q], m, lambda);
      }
    }
    return total;
  };
  double prev = integrate(1), cur = integrate(2);
  for (int panels = 4; std::fabs(cur - prev) > 1e-14 && panels < 4096;
       panels *= 2) {
    prev = cur;
    cur = integrate(panels);
  }
  return 4.0 * m + cur;
}

}  // namespace

TEST_CASE("s0 root") {
  CHECK(s0_root(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
  // lambda -> 0: root approaches the horizon 2m.
  CHECK(s0_root(1.0, 1e-7) == doctest::Approx(2.0).epsilon(1e-8));
  // m = 2, lambda = 1: root of s^3 + s = 4 by an independent high-precision
  // Newton solve in long double.
  long double x = 1.3L;
  for (int it = 0; it < 60; ++it) {
    x -= (x * x * x + x - 4.0L) / (3.0L * x * x + 1.0L);
  }
  CHECK(s0_root(2.0, 1.0) ==
        doctest::Approx(static_cast<double>(x)).epsilon(1e-13));
  CHECK(static_cast<double>(x) == doctest::Approx(1.3788).epsilon(1e-4));
  CHECK_THROWS_AS(s0_root(0.0, 1.0), std::domain_error);

  // lambda = 1 identity s0^3 + s0 = 2m, randomized.
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const double m = uniform_from_bits(rng(), 0.2, 3.0);
    const double s0 = s0_root(m, 1.0);
    CHECK(std::fabs(s0 * s0 * s0 + s0 - 2.0 * m) < 1e-12 * m);
  }

  // The potential vanishes at the root: A(s0) = f(s0)^2 <= 1e-12 (the
  // sqrt itself can only reach ~1e-8 one ulp off the root in doubles).
  for (int i = 0; i < 50; ++i) {
    const double m = uniform_from_bits(rng(), 0.2, 3.0);
    const double lam = uniform_from_bits(rng(), 0.2, 3.0);
    CHECK(std::fabs(potential_squared(s0_root(m, lam), m, lam)) < 1e-12);
  }
}

TEST_CASE("rho table: anchor, derivative, and quadrature oracle") {
  const double m = 1.0, lam = 1.0;
  const RhoTable rho = solve_rho_lambda(m, lam, 2.5, 12.0);

  // Anchor rho(4m) = 4m and the closed-form slope there.
  CHECK(rho.value(4.0) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(RhoTable::rhs(4.0, m, lam) ==
        doctest::Approx(8.0 / std::sqrt(16.5)).epsilon(1e-14));
  CHECK(rho.derivative(4.0) ==
        doctest::Approx(8.0 / std::sqrt(16.5)).epsilon(1e-12));

  // Interpolant derivative equals the ODE right-hand side everywhere.
  std::mt19937_64 rng(37);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double s = uniform_from_bits(rng(), 2.5, 12.0);
    worst = std::fmax(worst,
                      std::fabs(rho.derivative(s) - RhoTable::rhs(s, m, lam)));
  }
  CHECK(worst < 1e-10);

  // Monotone increasing.
  double prev = rho.value(2.5);
  for (double s = 2.6; s <= 12.0; s += 0.1) {
    const double cur = rho.value(s);
    CHECK(cur > prev);
    prev = cur;
  }

  // Independent quadrature oracle for the values.
  for (double s : {2.7, 3.0, 5.0, 8.0, 11.5}) {
    CHECK(rho.value(s) ==
          doctest::Approx(rho_by_quadrature(m, lam, s)).epsilon(1e-11));
  }

  CHECK_THROWS_AS(rho.value(1.5), std::domain_error);
  CHECK_THROWS_AS(solve_rho_lambda(1.0, 1.0, 5.0, 12.0), std::domain_error);
  CHECK_THROWS_AS(solve_rho_lambda(1.0, 1.0, 2.0, 12.0), std::domain_error);
}

TEST_CASE("rho_lambda sweeps toward the tortoise profile") {
  const double m = 1.0;
  const TortoiseMap tortoise(m);
  // Pointwise approach at s = 6: limit 6 + 2 log 2.
  CHECK(tortoise.g(6.0) ==
        doctest::Approx(6.0 + 2.0 * std::log(2.0)).epsilon(1e-15));
  double prev_gap = 1e300;
  for (double lam : {1.0, 3.0, 10.0, 30.0, 100.0}) {
    const RhoTable rho = solve_rho_lambda(m, lam, 3.0, 10.0);
    const double gap = std::fabs(rho.value(6.0) - tortoise.g(6.0));
    CHECK(gap < prev_gap);
    prev_gap = gap;
    // Sup over [3m, 10m] is also monotone along the sweep.
  }
  // Sup-norm distance on [3m, 10m] decreasing along the lambda ladder.
  double prev_sup = 1e300;
  for (double lam : {1.0, 3.0, 10.0, 30.0, 100.0}) {
    const RhoTable rho = solve_rho_lambda(m, lam, 3.0, 10.0);
    double sup = 0.0;
    for (double s = 3.0; s <= 10.0; s += 0.05) {
      sup = std::fmax(sup, std::fabs(rho.value(s) - tortoise.g(s)));
    }
    CHECK(sup < prev_sup);
    prev_sup = sup;
  }
}

TEST_CASE("umbilical slice is isometric to AdS-Schwarzschild") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const double m = uniform_from_bits(rng(), 0.3, 2.0);
    const double lam = uniform_from_bits(rng(), 0.3, 3.0);
    const double s = uniform_from_bits(rng(), 2.0 * m * 1.05, 10.0 * m);
    const double b = 1.0 - 2.0 * m / s;
    const double rp = RhoTable::rhs(s, m, lam);
    // Pull back the spacetime metric along Psi(s, omega) = (rho(s), s, omega).
    const double pullback_ss = -b * rp * rp + 1.0 / b;
    const auto g3 = ads_sch_metric3({s, 1.1, 0.0}, m, lam);
    CHECK(std::fabs(pullback_ss - g3[0][0]) / g3[0][0] < 1e-10);
  }
}

TEST_CASE("static slice builder") {
  const ParameterGrid grid = build_grid(8, 16);
  const SurfaceSample s = build_static_slice(constant_profile(3.0), 1.0, grid);
  for (int k = 0; k < s.nodes(); ++k) {
    CHECK(s.F[k][0] == 0.0);
    CHECK(s.F[k][1] == doctest::Approx(3.0).epsilon(1e-14));
  }
  CHECK(build_static_slice(parse_profile("3 + 0.2*Y(2,2)"), 1.0, grid)
            .spacelike_margin > 0.0);
  CHECK_THROWS_AS(build_static_slice(constant_profile(2.0), 1.0, grid),
                  std::domain_error);
}

TEST_CASE("null cone builder") {
  const ParameterGrid grid = build_grid(12, 24);
  const double m = 1.0;
  const SurfaceSample s = build_null_cone(constant_profile(4.0), m, grid);
  for (int k = 0; k < s.nodes(); ++k) {
    CHECK(s.F[k][0] == doctest::Approx(4.0).epsilon(1e-14));  // 2m log 1 = 0
  }

  // The radial generator of the cone is null: V = t'(s) dt + dr.
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    const double r = uniform_from_bits(rng(), 2.2, 9.0);
    const SpacetimePoint p{0.0, r, 1.0, 0.0};
    const TortoiseMap map(m);
    const Vec4 V{{map.dg(r), 1.0, 0.0, 0.0}};
    CHECK(std::fabs(inner_product(p, m, V, V)) < 1e-12);
  }

  // m = 0: the light cone t = r.
  const SurfaceSample cone0 =
      build_null_cone(parse_profile("2 + 0.1*Y(2,0)"), 0.0, grid);
  for (int k = 0; k < cone0.nodes(); ++k) {
    CHECK(cone0.F[k][0] == doctest::Approx(cone0.F[k][1]).epsilon(1e-14));
  }

  // On the cone the induced metric is the round one scaled by u^2, whatever
  // the graph: the null direction drops out.
  const SurfaceSample wavy =
      build_null_cone(parse_profile("4 + 0.5*Y(3,2)"), m, grid);
  for (int i = 0; i < grid.n_theta; ++i) {
    for (int j = 0; j < grid.n_phi; ++j) {
      const int k = grid.idx(i, j);
      const double u = wavy.F[k][1];
      CHECK(wavy.g[k].a11 == doctest::Approx(u * u).epsilon(1e-11));
      CHECK(std::fabs(wavy.g[k].a12) < 1e-10);
    }
  }
}

TEST_CASE("convex-static gate: the photon-sphere threshold") {
  const ParameterGrid grid = build_grid(12, 24);
  const GateResult ok = convex_static_check(constant_profile(4.0), 1.0, grid);
  CHECK(ok.ok);
  CHECK(ok.margin > 0.0);

  const GateResult bad =
      convex_static_check(constant_profile(2.5), 1.0, grid);
  CHECK_FALSE(bad.ok);
  CHECK(bad.margin < 0.0);

  // Analytic threshold: for spheres the margin crosses zero at R = 3m.
  const GateResult at =
      convex_static_check(constant_profile(3.0), 1.0, grid);
  CHECK(std::fabs(at.margin) < 1e-11);

  // m = 0 reduces to plain convexity.
  const GateResult flat_ok =
      convex_static_check(parse_profile("2 + 0.05*Y(2,1)"), 0.0, grid);
  CHECK(flat_ok.ok);
  const GateResult flat_bad =
      convex_static_check(parse_profile("2 + 1.4*Y(4,3)"), 0.0, grid);
  CHECK_FALSE(flat_bad.ok);
}

TEST_CASE("convex-static builder and projection relations") {
  const ParameterGrid grid = build_grid(16, 32);
  const double m = 1.0;

  // tau == 0: the projection is the identity.
  const SurfaceSample flat = build_convex_static(
      constant_profile(4.0), constant_profile(0.0), m, grid);
  const ProjectionReport rep0 = project_surface(flat);
  CHECK(rep0.metric_residual < 1e-13);
  CHECK(rep0.volume_element_residual < 1e-13);
  CHECK(rep0.area_sigma_hat ==
        doctest::Approx(rep0.area_sigma).epsilon(1e-13));

  // tau == const shifts the cylinder without changing anything.
  const SurfaceSample shifted = build_convex_static(
      constant_profile(4.0), constant_profile(0.7), m, grid);
  CHECK(project_surface(shifted).metric_residual < 1e-13);

  // Sub-photon-sphere base is rejected.
  CHECK_THROWS_AS(build_convex_static(constant_profile(2.5),
                                      constant_profile(0.0), m, grid),
                  GateRejected);

  // Generic accepted pair.
  const SurfaceSample s = build_convex_static(
      parse_profile("4 + 0.1*Y(2,1)"),
      parse_profile("0.1*Y(1,0) + 0.1*Y(2,2)"), m, grid);
  CHECK(s.spacelike_margin > 0.0);
  const ProjectionReport rep = project_surface(s);
  CHECK(rep.metric_residual < 1e-10);
  CHECK(rep.inverse_metric_residual < 1e-10);
  CHECK(rep.volume_element_residual < 1e-10);
  CHECK(rep.area_sigma_hat >= rep.area_sigma);

  const PointwiseIdentityReport pw = projection_pointwise_identity(s);
  CHECK(pw.max_j_residual < 1e-9);
  CHECK(pw.max_projection_residual < 1e-9);
  CHECK(pw.min_excess > -1e-9);

  // With a genuine tau gradient the area inequality is strict.
  CHECK(rep.area_sigma_hat > rep.area_sigma + 1e-6);
}

TEST_CASE("projection metric relation at 64x128") {
  const ParameterGrid grid = build_grid(64, 128);
  const SurfaceSample s = build_convex_static(
      constant_profile(4.0), parse_profile("0.1*Y(1,0) + 0.1*Y(2,2)"), 1.0,
      grid);
  const ProjectionReport rep = project_surface(s);
  CHECK(rep.metric_residual < 1e-10);
  CHECK(rep.area_sigma_hat >= rep.area_sigma);
}

TEST_CASE("m = 0 projection scheme") {
  const ParameterGrid grid = build_grid(16, 32);
  const SurfaceSample s = build_convex_static(
      parse_profile("2 + 0.05*Y(2,0)"), parse_profile("0.08*Y(1,1)"), 0.0,
      grid);
  const PointwiseIdentityReport pw = projection_pointwise_identity(s);
  CHECK(pw.max_j_residual < 1e-9);
  CHECK(pw.max_projection_residual < 1e-9);
}

TEST_CASE("conformal Killing divergence identity") {
  CHECK(std::fabs(conformal_killing_divergence(2.0, 1.0, 1.0)) < 1e-14);
  CHECK(std::fabs(conformal_killing_divergence(10.0, 1.0, 3.0)) < 1e-12);
  CHECK(std::fabs(conformal_killing_divergence(5.0, 0.0, 1.0)) < 1e-14);

  std::mt19937_64 rng(47);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double m = uniform_from_bits(rng(), 0.2, 2.0);
    const double lam = uniform_from_bits(rng(), 0.2, 3.0);
    const double s0 = s0_root(m, lam);
    const double s = uniform_from_bits(rng(), s0 * 1.0001, s0 + 10.0 * m);
    worst = std::fmax(worst,
                      std::fabs(conformal_killing_divergence(s, m, lam)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("horizon flux and its extrapolation oracle") {
  CHECK(horizon_flux(1.0, 1.0) == doctest::Approx(kFourPi).epsilon(1e-13));
  // lambda -> 0 limit: 4 pi (2m)^3.
  CHECK(horizon_flux(1.0, 1e-6) ==
        doctest::Approx(kFourPi * 8.0).epsilon(1e-9));

  const ParameterGrid grid = build_grid(8, 16);
  const double extr = horizon_flux_extrapolated(1.0, 1.0, grid);
  CHECK(std::fabs(extr - kFourPi) < 1e-8);

  const double extr2 = horizon_flux_extrapolated(0.7, 2.0, grid);
  CHECK(std::fabs(extr2 - horizon_flux(0.7, 2.0)) < 1e-8);
}

TEST_CASE("umbilical builder rejects profiles at the horizon guard") {
  const ParameterGrid grid = build_grid(8, 16);
  CHECK_THROWS_AS(
      build_umbilical_slice(constant_profile(2.0000001), 1.0, 1.0, grid),
      std::domain_error);
  CHECK_THROWS_AS(
      build_umbilical_slice(constant_profile(3.0), 0.0, 1.0, grid),
      std::domain_error);
}
