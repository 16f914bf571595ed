#include "gpen/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>

namespace gpen {

namespace {

ScalarField j_dot_t_field(const SurfaceSample& s, const ExtrinsicField& ext) {
  ScalarField f(s.nodes());
  for (int k = 0; k < s.nodes(); ++k) {
    f[k] = inner_product(s.point(k), s.m, ext.J[k], basis_t());
  }
  return f;
}

}  // namespace

double penrose_lhs(const SurfaceSample& s, const ExtrinsicField& ext) {
  return -integrate_scalar(s, j_dot_t_field(s, ext)) + 16.0 * kPi * s.m;
}

double penrose_lhs(const SurfaceSample& s) {
  const ExtrinsicField ext = compute_extrinsic(s);
  return penrose_lhs(s, ext);
}

double penrose_rhs(const SurfaceSample& s) {
  return std::sqrt(16.0 * kPi * surface_area(s));
}

double penrose_lhs_frame_form(const SurfaceSample& s,
                              const ExtrinsicField& ext) {
  ScalarField f(s.nodes());
  for (int k = 0; k < s.nodes(); ++k) {
    const SpacetimePoint p = s.point(k);
    const double lbar_dt = inner_product(p, s.m, ext.frame.Lbar[k], basis_t());
    f[k] = ext.H_dot_L[k] * lbar_dt;
  }
  return -integrate_scalar(s, f) + 16.0 * kPi * s.m;
}

double penrose_lhs_frame_form(const SurfaceSample& s) {
  const ExtrinsicField ext = compute_extrinsic(s);
  return penrose_lhs_frame_form(s, ext);
}

MinkowskiReport minkowski_penrose(const SurfaceSample& s,
                                  const Observer& obs) {
  if (s.m != 0.0) {
    throw std::invalid_argument(
        "minkowski_penrose: requires an m = 0 surface");
  }
  const ExtrinsicField ext = compute_extrinsic(s);
  MinkowskiReport rep;

  ScalarField jf(s.nodes()), tf(s.nodes());
  for (int k = 0; k < s.nodes(); ++k) {
    const SpacetimePoint p = s.point(k);
    const Vec4 T0 = obs.at(p);
    jf[k] = inner_product(p, 0.0, ext.J[k], T0);
    const double lbar_T0 = inner_product(p, 0.0, ext.frame.Lbar[k], T0);
    tf[k] = -ext.H_dot_L[k] * lbar_T0;
  }
  rep.j_form = -integrate_scalar(s, jf);
  rep.expansion_form = integrate_scalar(s, tf);
  rep.rhs = penrose_rhs(s);
  rep.j_gap = rep.j_form - rep.rhs;
  rep.expansion_gap = rep.expansion_form - rep.rhs;
  rep.form_agreement = std::fabs(rep.j_form - rep.expansion_form);
  rep.killing_flux = killing_flux_observer(s, obs);
  return rep;
}

std::pair<double, double> static_slice_reduction(const SurfaceSample& s) {
  if (s.family != SurfaceFamily::StaticSlice) {
    throw std::invalid_argument(
        "static_slice_reduction: surface is not in the static-slice family");
  }
  const Surface3 base = build_surface3(s.grid, s.m, 0.0, s.radial);
  ScalarField f(s.nodes());
  for (int k = 0; k < s.nodes(); ++k) {
    f[k] = base.mean_curvature[k] *
           std::sqrt(1.0 - 2.0 * s.m / s.radial.v[k]);
  }
  const double reduced = integrate3(base, f) + 16.0 * kPi * s.m;
  return {reduced, penrose_lhs(s)};
}

UmbilicalDecomposition umbilical_decomposition(const SurfaceSample& s) {
  if (s.family != SurfaceFamily::UmbilicalSlice) {
    throw std::invalid_argument(
        "umbilical_decomposition: surface is not in the umbilical family");
  }
  UmbilicalDecomposition d;
  const Surface3 base = build_surface3(s.grid, s.m, s.lambda, s.radial);
  ScalarField Hf(s.nodes());
  for (int k = 0; k < s.nodes(); ++k) {
    Hf[k] = base.mean_curvature[k] *
            static_potential(s.radial.v[k], s.m, s.lambda);
  }
  d.surface_term = integrate3(base, Hf);

  // The tangential part of dt along the slice is -lambda s f d/ds and
  // <H, e0> = -2 lambda, so the divergence-theorem terms carry lambda^2.
  const double lam2 = s.lambda * s.lambda;
  const double s0 = s0_root(s.m, s.lambda);
  d.bulk_term = 6.0 * lam2 *
                bulk_potential_integral(s.grid, s.m, s.lambda, s.radial.v, s0,
                                        64);
  d.horizon_term = 8.0 * kPi * lam2 * s0 * s0 * s0;

  const ExtrinsicField ext = compute_extrinsic(s);
  d.j_integral = -integrate_scalar(s, j_dot_t_field(s, ext));
  d.residual = std::fabs(d.j_integral -
                         (d.surface_term - d.bulk_term - d.horizon_term));
  return d;
}

BhwResult bhw_check(const ParameterGrid& grid, double m,
                    const ProfileFields& u) {
  BhwResult res;
  const Surface3 base = build_surface3(grid, m, 1.0, u);
  res.min_mean_curvature = base.min_mean_curvature;
  res.mean_convex = base.min_mean_curvature > 0.0;

  ScalarField Hf(grid.nodes());
  for (int k = 0; k < grid.nodes(); ++k) {
    Hf[k] = base.mean_curvature[k] * static_potential(u.v[k], m, 1.0);
  }
  const double s0 = s0_root(m, 1.0);
  const double surface_term = integrate3(base, Hf);
  const double bulk = 6.0 * bulk_potential_integral(grid, m, 1.0, u.v, s0, 64);
  const double rhs = std::sqrt(16.0 * kPi * area3(base)) - 8.0 * kPi * s0;
  res.gap = surface_term - bulk - rhs;
  return res;
}

BhwResult bhw_check(const ParameterGrid& grid, double m, const Profile& u) {
  return bhw_check(grid, m, eval_profile(u, grid));
}

AssemblyCheck final_assembly_check(const SurfaceSample& s) {
  if (s.family != SurfaceFamily::UmbilicalSlice || s.lambda != 1.0) {
    throw std::invalid_argument(
        "final_assembly_check: requires an umbilical surface with lambda = 1");
  }
  AssemblyCheck a;
  a.penrose_gap = penrose_lhs(s) - penrose_rhs(s);
  a.bhw_gap = bhw_check(s.grid, s.m, s.radial).gap;
  const double s0 = s0_root(s.m, 1.0);
  a.mass_identity = 16.0 * kPi * s.m - 8.0 * kPi * s0 * s0 * s0 -
                    8.0 * kPi * s0;
  a.residual = std::fabs(a.penrose_gap - a.bhw_gap);
  return a;
}

SweepReport null_cone_limit_study(const Profile& u, double m,
                                  const std::vector<double>& lambdas,
                                  const ParameterGrid& grid) {
  SweepReport rep;
  const SurfaceSample cone = build_null_cone(u, m, grid);
  const ExtrinsicField cone_ext = compute_extrinsic(cone);
  double min_theta = std::numeric_limits<double>::infinity();
  for (double th : cone_ext.theta_plus) min_theta = std::fmin(min_theta, th);
  if (!(min_theta > 0.0)) {
    throw GateRejected(
        "null_cone_limit_study: future outward expansion is not strictly "
        "positive (min = " +
        format_g17(min_theta) + ")");
  }
  rep.null_cone_gap = penrose_lhs(cone, cone_ext) - penrose_rhs(cone);

  rep.lambdas = lambdas;
  for (double lam : lambdas) {
    const SurfaceSample sl = build_umbilical_slice(u, m, lam, grid);
    rep.gaps.push_back(penrose_lhs(sl) - penrose_rhs(sl));
    const Surface3 base = build_surface3(grid, m, lam, sl.radial);
    rep.min_mean_curvature.push_back(base.min_mean_curvature);
    double sup = 0.0;
    for (int k = 0; k < grid.nodes(); ++k) {
      sup = std::fmax(sup, std::fabs(sl.F[k][0] - cone.F[k][0]));
    }
    rep.sup_embedding_distance.push_back(sup);
  }
  rep.gap_monotone = true;
  rep.embedding_monotone = true;
  for (size_t i = 1; i < lambdas.size(); ++i) {
    if (std::fabs(rep.gaps[i] - rep.null_cone_gap) >
        std::fabs(rep.gaps[i - 1] - rep.null_cone_gap)) {
      rep.gap_monotone = false;
    }
    if (rep.sup_embedding_distance[i] > rep.sup_embedding_distance[i - 1]) {
      rep.embedding_monotone = false;
    }
  }
  return rep;
}

ChainReport convex_static_chain(const SurfaceSample& s) {
  if (s.family != SurfaceFamily::ConvexStatic) {
    throw std::invalid_argument(
        "convex_static_chain: surface is not in the convex-static family");
  }
  ChainReport rep;
  rep.gate = convex_static_check(s.radial, s.m, s.grid);
  if (!rep.gate.ok) throw GateRejected(rep.gate.reason);

  const ExtrinsicField ext = compute_extrinsic(s);
  rep.j_integral = -integrate_scalar(s, j_dot_t_field(s, ext));

  const Surface3 base = build_surface3(s.grid, s.m, 0.0, s.radial);
  ScalarField Hf(s.nodes());
  for (int k = 0; k < s.nodes(); ++k) {
    Hf[k] = base.mean_curvature[k] *
            std::sqrt(1.0 - 2.0 * s.m / s.radial.v[k]);
  }
  rep.projected_flux = integrate3(base, Hf);

  const double area_hat = area3(base);
  const double area = surface_area(s);
  rep.link1 = rep.j_integral - rep.projected_flux;
  rep.link2 = rep.projected_flux -
              (std::sqrt(16.0 * kPi * area_hat) - 16.0 * kPi * s.m);
  rep.link3 = area_hat - area;
  rep.end_gap = (rep.j_integral + 16.0 * kPi * s.m) -
                std::sqrt(16.0 * kPi * area);
  return rep;
}

std::vector<SurfaceSpec> generate_family(const FamilySpec& fs,
                                         const ParameterGrid& grid,
                                         std::vector<std::string>* rejections) {
  if (fs.count <= 0) {
    throw std::invalid_argument("generate_family: count must be positive");
  }
  std::mt19937_64 rng(fs.seed);
  const double tau_amp = fs.tau_amplitude >= 0.0
                             ? fs.tau_amplitude
                             : 0.15 * fs.amplitude * fs.base_radius;

  auto draw_bandlimited = [&](double amplitude) {
    std::vector<HarmonicTerm> terms;
    for (int l = 1; l <= fs.l_max; ++l) {
      for (int m = -l; m <= l; ++m) {
        // The 1/(1+l(l+1)) weight keeps the curvature perturbation of the
        // draw proportional to `amplitude` uniformly in the band limit.
        const double w = 1.0 / (1.0 + l * (l + 1.0));
        terms.push_back({l, m, w * uniform_from_bits(rng(), -1.0, 1.0)});
      }
    }
    // Sup-normalize so the field's grid maximum equals `amplitude`.
    SphExpansion raw(terms);
    const auto jets = synthesize_jets(grid, raw);
    double sup = 0.0;
    for (const auto& j : jets) sup = std::fmax(sup, std::fabs(j.v));
    const double scale = sup > 0.0 ? amplitude / sup : 0.0;
    for (auto& t : terms) t.coeff *= scale;
    return SphExpansion(terms);
  };

  std::vector<SurfaceSpec> accepted;
  const int max_attempts = 50 * fs.count;
  for (int attempt = 0; attempt < max_attempts &&
                        static_cast<int>(accepted.size()) < fs.count;
       ++attempt) {
    SphExpansion bump = draw_bandlimited(fs.amplitude);
    std::vector<HarmonicTerm> radial_terms = bump.terms();
    radial_terms.push_back({0, 0, fs.base_radius * std::sqrt(kFourPi)});
    for (auto& t : radial_terms) {
      if (t.l > 0) t.coeff *= fs.base_radius;
    }

    SurfaceSpec spec;
    spec.family = fs.family;
    spec.m = fs.m;
    spec.lambda = fs.lambda;
    spec.radial = Profile{SphExpansion(radial_terms), "(family draw)"};
    if (fs.family == SurfaceFamily::ConvexStatic) {
      spec.time = Profile{draw_bandlimited(tau_amp), "(family draw)"};
    } else {
      spec.time = constant_profile(0.0);
    }

    std::string reason;
    const ProfileFields radial = eval_profile(spec.radial, grid);

    if (fs.family == SurfaceFamily::ConvexStatic) {
      const GateResult gate = convex_static_check(radial, fs.m, grid);
      if (!gate.ok) {
        if (rejections != nullptr) rejections->push_back(gate.reason);
        continue;
      }
    }

    const TimeMap* map = nullptr;
    TortoiseMap tortoise(fs.m);
    std::shared_ptr<RhoTable> table;
    RhoMap* rho_map = nullptr;
    RhoMap rho_map_storage{nullptr};
    if (fs.family == SurfaceFamily::NullCone) {
      map = &tortoise;
    } else if (fs.family == SurfaceFamily::UmbilicalSlice) {
      double umin = radial.v[0], umax = radial.v[0];
      for (double v : radial.v) {
        umin = std::fmin(umin, v);
        umax = std::fmax(umax, v);
      }
      if (!(umin > 2.0 * fs.m * (1.0 + 1e-6))) {
        if (rejections != nullptr) {
          rejections->push_back("radial profile reaches the horizon guard");
        }
        continue;
      }
      table = std::make_shared<RhoTable>(
          solve_rho_lambda(fs.m, fs.lambda, std::fmin(umin, 4.0 * fs.m),
                           std::fmax(umax, 4.0 * fs.m)));
      rho_map_storage = RhoMap(table);
      rho_map = &rho_map_storage;
      map = rho_map;
    }

    ProfileFields tau_fields;
    const ProfileFields* tau = nullptr;
    if (fs.family == SurfaceFamily::ConvexStatic) {
      tau_fields = eval_profile(spec.time, grid);
      tau = &tau_fields;
    }

    auto sample = try_embed_graph(grid, fs.family, fs.m, fs.lambda, radial,
                                  map, tau, &reason);
    if (!sample) {
      if (rejections != nullptr) rejections->push_back(reason);
      continue;
    }

    // Family-specific admissibility gates.
    if (fs.family == SurfaceFamily::StaticSlice ||
        fs.family == SurfaceFamily::UmbilicalSlice) {
      const double lam3 =
          fs.family == SurfaceFamily::UmbilicalSlice ? fs.lambda : 0.0;
      const Surface3 base = build_surface3(grid, fs.m, lam3, radial);
      if (!(base.min_mean_curvature > 0.0)) {
        if (rejections != nullptr) {
          rejections->push_back("not mean-convex: min H = " +
                                format_g17(base.min_mean_curvature));
        }
        continue;
      }
    } else if (fs.family == SurfaceFamily::NullCone) {
      const ExtrinsicField ext = compute_extrinsic(*sample);
      double min_theta = std::numeric_limits<double>::infinity();
      for (double th : ext.theta_plus) min_theta = std::fmin(min_theta, th);
      if (!(min_theta > 0.0)) {
        if (rejections != nullptr) {
          rejections->push_back("outward expansion not positive: min = " +
                                format_g17(min_theta));
        }
        continue;
      }
    }
    accepted.push_back(std::move(spec));
  }
  if (static_cast<int>(accepted.size()) < fs.count) {
    throw GateRejected("generate_family: only " +
                       std::to_string(accepted.size()) + " of " +
                       std::to_string(fs.count) +
                       " candidates passed the gates (amplitude too large?)");
  }
  return accepted;
}

ConvergenceStudy convergence_study(
    const SurfaceSpec& spec, const std::vector<std::pair<int, int>>& res) {
  if (res.size() < 3) {
    throw std::invalid_argument(
        "convergence_study: need at least three resolutions");
  }
  ConvergenceStudy st;
  st.resolutions = res;
  for (const auto& [nt, np] : res) {
    const ParameterGrid grid = build_grid(nt, np);
    const SurfaceSample s = embed_surface(spec, grid);
    const ExtrinsicField ext = compute_extrinsic(s);
    st.area.push_back(surface_area(s));
    st.lhs.push_back(penrose_lhs(s, ext));
    st.kflux.push_back(killing_flux(s));
  }

  auto analyze = [&](const std::vector<double>& v, bool to_zero,
                     std::vector<double>& orders, std::string& flag) {
    const double scale = std::fmax(1.0, std::fabs(v.back()));
    std::vector<double> err;
    if (to_zero) {
      for (double x : v) err.push_back(std::fabs(x));
    } else {
      for (size_t i = 0; i + 1 < v.size(); ++i) {
        err.push_back(std::fabs(v[i] - v[i + 1]));
      }
    }
    bool floor = true;
    for (double e : err) floor = floor && e < 1e-13 * scale;
    if (floor) {
      flag = "exact";
      return;
    }
    for (size_t i = 0; i + 1 < err.size(); ++i) {
      const double ratio = static_cast<double>(res[i + 1].first) /
                           static_cast<double>(res[i].first);
      if (err[i + 1] == 0.0) {
        orders.push_back(std::numeric_limits<double>::infinity());
      } else {
        orders.push_back(std::log(err[i] / err[i + 1]) / std::log(ratio));
      }
    }
    bool monotone = true;
    for (size_t i = 0; i + 1 < err.size(); ++i) {
      if (err[i + 1] > err[i] && err[i + 1] > 1e-13 * scale) monotone = false;
    }
    if (!monotone) {
      flag = "inconclusive";
    } else if (!orders.empty() && orders.back() < 1.5) {
      flag = "under-resolved";
    }
  };

  analyze(st.area, false, st.area_orders, st.area_flag);
  analyze(st.lhs, false, st.lhs_orders, st.lhs_flag);
  analyze(st.kflux, true, st.kflux_orders, st.kflux_flag);
  return st;
}

namespace {

InequalityReport core_report(const SurfaceSample& s, const ExtrinsicField& ext,
                             const Tolerances& tol) {
  InequalityReport rep;
  rep.family = family_name(s.family);
  rep.m = s.m;
  rep.lambda = s.lambda;
  rep.n_theta = s.grid.n_theta;
  rep.n_phi = s.grid.n_phi;
  rep.area = surface_area(s);
  rep.lhs = penrose_lhs(s, ext);
  rep.rhs = std::sqrt(16.0 * kPi * rep.area);
  rep.gap = rep.lhs - rep.rhs;
  rep.frame_form_lhs = penrose_lhs_frame_form(s, ext);
  rep.killing_flux = killing_flux(s, ext);
  rep.identity_residual = ext.max_identity_residual;

  double min_theta = std::numeric_limits<double>::infinity();
  double min_past = std::numeric_limits<double>::infinity();
  for (int k = 0; k < s.nodes(); ++k) {
    min_theta = std::fmin(min_theta, ext.theta_plus[k]);
    min_past = std::fmin(min_past, ext.theta_minus[k]);
  }
  rep.min_expansion = min_theta;
  rep.min_past_expansion = min_past;

  const double slack =
      std::fmax(tol.inequality, 10.0 * std::fabs(rep.killing_flux));
  rep.inequality_ok = rep.gap >= -slack;
  rep.equality_case = std::fabs(rep.gap) <= 1e-7 * std::fmax(1.0, rep.rhs);
  return rep;
}

}  // namespace

InequalityReport verify_surface(const SurfaceSpec& spec,
                                const ParameterGrid& grid,
                                const Tolerances& tol) {
  const SurfaceSample s = embed_surface(spec, grid);
  const ExtrinsicField ext = compute_extrinsic(s);
  InequalityReport rep = core_report(s, ext, tol);

  switch (spec.family) {
    case SurfaceFamily::StaticSlice: {
      const auto [reduced, general] = static_slice_reduction(s);
      rep.extras.emplace_back("static_reduction_residual",
                              std::fabs(reduced - general));
      const Surface3 base = build_surface3(grid, s.m, 0.0, s.radial);
      rep.gate_margin = base.min_mean_curvature;
      break;
    }
    case SurfaceFamily::UmbilicalSlice: {
      const UmbilicalDecomposition d = umbilical_decomposition(s);
      rep.extras.emplace_back("decomposition_residual", d.residual);
      if (s.lambda == 1.0) {
        const AssemblyCheck a = final_assembly_check(s);
        rep.extras.emplace_back("bhw_gap", a.bhw_gap);
        rep.extras.emplace_back("assembly_residual", a.residual);
      }
      const Surface3 base = build_surface3(grid, s.m, s.lambda, s.radial);
      rep.gate_margin = base.min_mean_curvature;
      break;
    }
    case SurfaceFamily::NullCone: {
      rep.gate_margin = rep.min_expansion;
      if (!(rep.min_expansion > 0.0)) {
        throw GateRejected(
            "null-cone surface fails the positive-expansion hypothesis");
      }
      break;
    }
    case SurfaceFamily::ConvexStatic: {
      const ChainReport chain = convex_static_chain(s);
      rep.gate_margin = chain.gate.margin;
      rep.extras.emplace_back("chain_link1", chain.link1);
      rep.extras.emplace_back("chain_link2", chain.link2);
      rep.extras.emplace_back("chain_link3", chain.link3);
      const ProjectionReport proj = project_surface(s);
      rep.extras.emplace_back("projection_metric_residual",
                              proj.metric_residual);
      rep.extras.emplace_back("projection_volume_residual",
                              proj.volume_element_residual);
      const PointwiseIdentityReport pw = projection_pointwise_identity(s);
      rep.extras.emplace_back("pointwise_j_residual", pw.max_j_residual);
      break;
    }
  }
  return rep;
}

InequalityReport probe_general_graph(const Profile& u, const Profile& tau,
                                     double m, const ParameterGrid& grid,
                                     const Tolerances& tol) {
  const ProfileFields radial = eval_profile(u, grid);
  const ProfileFields time = eval_profile(tau, grid);
  const SurfaceSample s = embed_graph(grid, SurfaceFamily::ConvexStatic, m,
                                      0.0, radial, nullptr, &time);
  const ExtrinsicField ext = compute_extrinsic(s);
  InequalityReport rep = core_report(s, ext, tol);
  rep.family = "general_graph";
  rep.gate_margin = s.spacelike_margin;
  return rep;
}

}  // namespace gpen
