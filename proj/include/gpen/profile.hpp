#pragma once

#include <string>

#include "gpen/grid.hpp"
#include "gpen/sphharm.hpp"

namespace gpen {

/// Scalar profile on S^2 given as a real spherical-harmonic sum; constants
/// are the l = 0 term. This is the only surface-profile representation:
/// closed-form catalog expressions parse into it and tabulated node values
/// are projected onto it, so chart derivatives are always analytic.
struct Profile {
  SphExpansion expansion;
  std::string source;  // expression text or file path, for provenance

  bool empty() const { return expansion.empty(); }
};

/// Constant profile.
Profile constant_profile(double c);

/// Parses catalog expressions of the form
///   "3", "3 + 0.2*Y(2,2)", "4 - 0.1*Y(1,0) + 0.05*Y(3,-2)"
/// where Y(l,m) are real orthonormal spherical harmonics (m >= 0 cosine,
/// m < 0 sine). Throws std::invalid_argument on malformed input.
Profile parse_profile(const std::string& expr);

/// Projects tabulated per-node values (matching the grid) onto the harmonic
/// basis. Rejects under-resolved input whose top-octave coefficient energy
/// exceeds tail_tol of the total.
Profile profile_from_values(const ParameterGrid& grid, const ScalarField& v,
                            double tail_tol = 1e-6);

/// Loads a tabulated profile file: a header line "n_theta n_phi" followed by
/// node values in grid order (theta-major). The header must match the grid.
Profile load_profile_file(const std::string& path, const ParameterGrid& grid,
                          double tail_tol = 1e-6);

/// Values and first/second chart derivatives of a profile on a grid.
struct ProfileFields {
  ScalarField v, dth, dph, dthth, dthph, dphph;

  bool empty() const { return v.empty(); }
  static ProfileFields zeros(int n);
};

ProfileFields eval_profile(const Profile& p, const ParameterGrid& grid);

}  // namespace gpen
