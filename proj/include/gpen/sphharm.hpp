#pragma once

#include <vector>

#include "gpen/core.hpp"

namespace gpen {

struct ParameterGrid;

/// Normalized associated Legendre functions Pbar_{l,m}(x), orthonormal in
/// the sense  int_{-1}^{1} Pbar_{l,m} Pbar_{l',m} dx = delta_{l,l'},
/// without the Condon-Shortley phase. Evaluates the whole column
/// l = m..l_max at one x = cos(theta) together with first and second
/// theta-derivatives. Output arrays have length l_max - m + 1.
void alf_column(int l_max, int m, double x, double* val, double* dth,
                double* d2th);

/// One real spherical-harmonic term a * Y_{l,m}. Sign of m selects the
/// azimuthal factor: m > 0 -> cos(m phi), m < 0 -> sin(|m| phi), with the
/// orthonormal normalization (so Y_{0,0} = 1/sqrt(4 pi)).
struct HarmonicTerm {
  int l = 0;
  int m = 0;
  double coeff = 0.0;
};

/// Value and chart derivatives of a scalar on S^2 at one node.
struct SphJet {
  double v = 0.0;
  double dth = 0.0, dph = 0.0;
  double dthth = 0.0, dthph = 0.0, dphph = 0.0;
};

/// A finite real spherical-harmonic sum with analytic derivatives.
class SphExpansion {
 public:
  SphExpansion() = default;
  explicit SphExpansion(std::vector<HarmonicTerm> terms);

  const std::vector<HarmonicTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int max_degree() const { return l_max_; }

  SphJet eval(double theta, double phi) const;
  double value(double theta, double phi) const { return eval(theta, phi).v; }

  /// L2 norm squared of the coefficient vector.
  double energy() const;

 private:
  std::vector<HarmonicTerm> terms_;
  int l_max_ = 0;
};

/// Projects a gridded field onto the real harmonic basis, exactly for fields
/// band-limited to l <= n_theta - 1, |m| <= n_phi/2 - 1. Coefficients with
/// |a| <= drop_tol * max|a| are dropped.
SphExpansion analyze_field(const ParameterGrid& grid, const ScalarField& f,
                           double drop_tol = 1e-14);

/// Fraction of coefficient energy above degree l_cut (aliasing heuristic).
double spectral_tail_fraction(const SphExpansion& e, int l_cut);

/// Batch evaluation of values and chart derivatives at every grid node.
std::vector<SphJet> synthesize_jets(const ParameterGrid& grid,
                                    const SphExpansion& e);

}  // namespace gpen
