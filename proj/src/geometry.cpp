#include "gpen/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gpen {

namespace {

void require_exterior(double r, double m) {
  if (!(r > 2.0 * m)) {
    throw std::domain_error("spacetime point at r = " + std::to_string(r) +
                            " is not outside the horizon r = 2m = " +
                            std::to_string(2.0 * m));
  }
}

}  // namespace

std::array<double, 4> metric_diag(const SpacetimePoint& p, double m) {
  require_exterior(p.r, m);
  const double b = 1.0 - 2.0 * m / p.r;
  const double s = std::sin(p.theta);
  return {-b, 1.0 / b, p.r * p.r, p.r * p.r * s * s};
}

std::array<std::array<double, 4>, 4> metric_components(const SpacetimePoint& p,
                                                       double m) {
  const auto d = metric_diag(p, m);
  std::array<std::array<double, 4>, 4> g{};
  for (int i = 0; i < 4; ++i) g[i][i] = d[i];
  return g;
}

double inner_product(const SpacetimePoint& p, double m, const Vec4& a,
                     const Vec4& b) {
  const auto d = metric_diag(p, m);
  return d[0] * a[0] * b[0] + d[1] * a[1] * b[1] + d[2] * a[2] * b[2] +
         d[3] * a[3] * b[3];
}

double inner_product(const SpacetimePoint& p, double m, const TangentVector& a,
                     const TangentVector& b) {
  const auto same = [](const SpacetimePoint& x, const SpacetimePoint& y) {
    return x.t == y.t && x.r == y.r && x.theta == y.theta && x.phi == y.phi;
  };
  if (!same(a.base, p) || !same(b.base, p)) {
    throw std::invalid_argument("inner_product: base-point mismatch");
  }
  return inner_product(p, m, a.v, b.v);
}

Christoffel4 christoffel(const SpacetimePoint& p, double m) {
  require_exterior(p.r, m);
  const double r = p.r;
  const double b = 1.0 - 2.0 * m / r;
  const double st = std::sin(p.theta);
  const double ct = std::cos(p.theta);

  Christoffel4 c;
  const int T = 0, R = 1, TH = 2, PH = 3;
  const double g_t_tr = m / (r * r * b);
  c.G[T][T][R] = g_t_tr;
  c.G[T][R][T] = g_t_tr;
  c.G[R][T][T] = m * b / (r * r);
  c.G[R][R][R] = -m / (r * r * b);
  c.G[R][TH][TH] = -r * b;
  c.G[R][PH][PH] = -r * b * st * st;
  c.G[TH][R][TH] = 1.0 / r;
  c.G[TH][TH][R] = 1.0 / r;
  c.G[TH][PH][PH] = -st * ct;
  c.G[PH][R][PH] = 1.0 / r;
  c.G[PH][PH][R] = 1.0 / r;
  c.G[PH][TH][PH] = ct / st;
  c.G[PH][PH][TH] = ct / st;
  return c;
}

double potential_squared(double s, double m, double lambda) {
  return 1.0 - 2.0 * m / s + lambda * lambda * s * s;
}

double potential_squared_prime(double s, double m, double lambda) {
  return 2.0 * m / (s * s) + 2.0 * lambda * lambda * s;
}

double static_potential(double s, double m, double lambda) {
  const double a = potential_squared(s, m, lambda);
  if (a < 0.0) {
    throw std::domain_error(
        "static_potential: negative radicand at s = " + std::to_string(s));
  }
  return std::sqrt(a);
}

CausalClass causal_class(const SpacetimePoint& p, double m,
                         const TangentVector& v, double tol) {
  const auto d = metric_diag(p, m);
  double ref = 0.0;
  for (int i = 0; i < 4; ++i) ref += std::fabs(d[i]) * v.v[i] * v.v[i];
  if (ref == 0.0) throw std::invalid_argument("causal_class: zero vector");
  const double q = inner_product(p, m, v.v, v.v);
  if (q < -tol * ref) return CausalClass::Timelike;
  if (q > tol * ref) return CausalClass::Spacelike;
  return CausalClass::Null;
}

std::array<std::array<double, 3>, 3> ads_sch_metric3(const RiemannianPoint3& q,
                                                     double m, double lambda) {
  const double a = potential_squared(q.s, m, lambda);
  if (a <= 0.0) {
    throw std::domain_error(
        "ads_sch_metric3: point at or inside the horizon, A(s) <= 0 at s = " +
        std::to_string(q.s));
  }
  const double st = std::sin(q.theta);
  std::array<std::array<double, 3>, 3> g{};
  g[0][0] = 1.0 / a;
  g[1][1] = q.s * q.s;
  g[2][2] = q.s * q.s * st * st;
  return g;
}

Christoffel3 christoffel3(double s, double theta, double m, double lambda) {
  const double a = potential_squared(s, m, lambda);
  if (a <= 0.0) {
    throw std::domain_error(
        "christoffel3: point at or inside the horizon, A(s) <= 0 at s = " +
        std::to_string(s));
  }
  const double ap = potential_squared_prime(s, m, lambda);
  const double st = std::sin(theta);
  const double ct = std::cos(theta);

  Christoffel3 c;
  const int S = 0, TH = 1, PH = 2;
  c.G[S][S][S] = -ap / (2.0 * a);
  c.G[S][TH][TH] = -s * a;
  c.G[S][PH][PH] = -s * a * st * st;
  c.G[TH][S][TH] = 1.0 / s;
  c.G[TH][TH][S] = 1.0 / s;
  c.G[TH][PH][PH] = -st * ct;
  c.G[PH][S][PH] = 1.0 / s;
  c.G[PH][PH][S] = 1.0 / s;
  c.G[PH][TH][PH] = ct / st;
  c.G[PH][PH][TH] = ct / st;
  return c;
}

}  // namespace gpen
