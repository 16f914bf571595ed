#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpen {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kFourPi = 4.0 * kPi;

/// 4-component object in the coordinate basis (t, r, theta, phi).
struct Vec4 {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};
  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }
};

inline Vec4 operator+(const Vec4& a, const Vec4& b) {
  return {{a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}};
}
inline Vec4 operator-(const Vec4& a, const Vec4& b) {
  return {{a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]}};
}
inline Vec4 operator*(double s, const Vec4& a) {
  return {{s * a[0], s * a[1], s * a[2], s * a[3]}};
}
inline Vec4& operator+=(Vec4& a, const Vec4& b) {
  for (int i = 0; i < 4; ++i) a[i] += b[i];
  return a;
}

struct Vec3 {
  std::array<double, 3> c{0.0, 0.0, 0.0};
  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }
};

/// 2x2 symmetric matrix over the surface chart (x1 = theta, x2 = phi).
struct Sym2 {
  double a11 = 0.0, a12 = 0.0, a22 = 0.0;

  double det() const { return a11 * a22 - a12 * a12; }
  Sym2 inverse() const {
    const double d = det();
    return {a22 / d, -a12 / d, a11 / d};
  }
  double min_eigenvalue() const {
    const double tr = a11 + a22;
    const double disc = std::sqrt(std::fmax(0.0, tr * tr - 4.0 * det()));
    return 0.5 * (tr - disc);
  }
  double max_abs() const {
    return std::fmax(std::fabs(a11), std::fmax(std::fabs(a12), std::fabs(a22)));
  }
};

inline Sym2 operator-(const Sym2& a, const Sym2& b) {
  return {a.a11 - b.a11, a.a12 - b.a12, a.a22 - b.a22};
}
inline Sym2 operator*(double s, const Sym2& a) {
  return {s * a.a11, s * a.a12, s * a.a22};
}

/// Smallest generalized eigenvalue of A relative to SPD metric G,
/// i.e. min eig of G^{-1} A (both symmetric, G positive definite).
inline double generalized_min_eigenvalue(const Sym2& A, const Sym2& G) {
  // Eigenvalues of G^{-1}A solve det(A - x G) = 0:
  //   det(G) x^2 - (a11*g22 + a22*g11 - 2 a12*g12) x + det(A) = 0.
  const double p = G.det();
  const double q = A.a11 * G.a22 + A.a22 * G.a11 - 2.0 * A.a12 * G.a12;
  const double r = A.det();
  const double disc = std::sqrt(std::fmax(0.0, q * q - 4.0 * p * r));
  return (q - disc) / (2.0 * p);
}

using ScalarField = std::vector<double>;
using VectorField = std::vector<Vec4>;

/// Thrown when a surface fails an admissibility gate (convex-static
/// condition, mean convexity, positive expansion); distinct from domain
/// errors so the CLI can map it to its own exit status.
struct GateRejected : std::runtime_error {
  explicit GateRejected(const std::string& what) : std::runtime_error(what) {}
};

/// Compensated (Kahan) accumulator; fixed order of accumulation keeps
/// reductions reproducible run to run.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Full-precision, locale-independent double formatting for reports.
inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// Uniform double in [lo, hi) from a 64-bit generator word; avoids
/// std::uniform_real_distribution, whose output is implementation-defined.
inline double uniform_from_bits(std::uint64_t bits, double lo, double hi) {
  const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace gpen
