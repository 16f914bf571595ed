#include "gpen/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "gpen/report.hpp"

namespace gpen {

namespace {

namespace fs = std::filesystem;

void ensure_out_dir(const RunConfig& c) {
  fs::create_directories(c.out_dir);
}

std::string out_path(const RunConfig& c, const std::string& name) {
  return (fs::path(c.out_dir) / name).string();
}

}  // namespace

int cmd_verify(const RunConfig& config) {
  ensure_out_dir(config);
  const auto [nt, np] = config.resolutions.front();
  const ParameterGrid grid = build_grid(nt, np);
  const SurfaceSpec spec = surface_spec_from_config(config, grid);

  if (config.exploratory) {
    // No admissibility gates; anything spacelike goes through, and the
    // outcome certifies nothing either way.
    InequalityReport rep =
        probe_general_graph(spec.radial, spec.time, config.m, grid,
                            config.tol);
    rep.extras.emplace_back("exploratory_non_certifying", 1.0);
    write_text_file(out_path(config, "report.json"),
                    report_json(rep, config));
    write_text_file(out_path(config, "summary.txt"),
                    report_summary(rep, config));
    std::cout << "exploratory (non-certifying) probe:\n"
              << report_summary(rep, config);
    return kExitOk;
  }

  InequalityReport rep = verify_surface(spec, grid, config.tol);
  if (config.m == 0.0) {
    const MinkowskiReport mk =
        minkowski_penrose(embed_surface(spec, grid),
                          Observer{config.observer_boost});
    rep.extras.emplace_back("minkowski_j_gap", mk.j_gap);
    rep.extras.emplace_back("minkowski_expansion_gap", mk.expansion_gap);
    rep.extras.emplace_back("minkowski_form_agreement", mk.form_agreement);
  }
  if (spec.family == SurfaceFamily::NullCone && config.m > 0.0 &&
      !config.lambda_sweep.empty()) {
    const SweepReport sweep = null_cone_limit_study(
        spec.radial, config.m, config.lambda_sweep, grid);
    rep.extras.emplace_back("sweep_gap_monotone",
                            sweep.gap_monotone ? 1.0 : 0.0);
    rep.extras.emplace_back(
        "sweep_final_gap_distance",
        std::fabs(sweep.gaps.back() - sweep.null_cone_gap));
    rep.extras.emplace_back("sweep_final_min_mean_curvature",
                            sweep.min_mean_curvature.back());
  }

  write_text_file(out_path(config, "report.json"), report_json(rep, config));
  write_text_file(out_path(config, "summary.txt"),
                  report_summary(rep, config));
  std::cout << report_summary(rep, config);
  return rep.inequality_ok ? kExitOk : kExitViolation;
}

int cmd_family(const RunConfig& config) {
  ensure_out_dir(config);
  const auto [nt, np] = config.resolutions.front();
  const ParameterGrid grid = build_grid(nt, np);
  const FamilySpec fs_spec = family_spec_from_config(config);

  std::vector<std::string> rejections;
  std::vector<SurfaceSpec> specs;
  try {
    specs = generate_family(fs_spec, grid, &rejections);
  } catch (const GateRejected& e) {
    std::cerr << "family generation failed: " << e.what() << "\n";
    for (const auto& r : rejections) std::cerr << "  rejected: " << r << "\n";
    return kExitGate;
  }
  if (specs.empty()) return kExitGate;

  std::vector<InequalityReport> reports(specs.size());
  const int n_threads =
      std::max(1, std::min<int>(config.threads,
                                static_cast<int>(specs.size())));
  // Surfaces are independent jobs in contiguous index chunks; the merge
  // below is by index, so output is identical for any thread count.
  std::vector<std::thread> pool;
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex err_mutex;
  const size_t chunk = (specs.size() + n_threads - 1) / n_threads;
  for (int t = 0; t < n_threads; ++t) {
    const size_t lo = t * chunk;
    const size_t hi = std::min(specs.size(), lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi]() {
      for (size_t i = lo; i < hi && !failed.load(); ++i) {
        try {
          reports[i] = verify_surface(specs[i], grid, config.tol);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!failed.exchange(true)) first_error = e.what();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failed.load()) {
    std::cerr << "family verification failed: " << first_error << "\n";
    return kExitUsage;
  }

  std::ostringstream csv;
  csv << kFamilyCsvHeader << "\r\n";
  double min_gap = std::numeric_limits<double>::infinity();
  double max_kflux = 0.0;
  bool all_ok = true;
  for (size_t i = 0; i < reports.size(); ++i) {
    csv << family_csv_row(static_cast<int>(i), reports[i], config.seed)
        << "\r\n";
    min_gap = std::fmin(min_gap, reports[i].gap);
    max_kflux = std::fmax(max_kflux, std::fabs(reports[i].killing_flux));
    all_ok = all_ok && reports[i].inequality_ok;
  }
  write_text_file(out_path(config, "family.csv"), csv.str());

  std::ostringstream summary;
  summary << "family=" << family_name(fs_spec.family) << " accepted="
          << reports.size() << " rejected=" << rejections.size()
          << " min_gap=" << format_g17(min_gap) << " max_killing_flux="
          << format_g17(max_kflux) << "\n";
  write_text_file(out_path(config, "family_summary.txt"), summary.str());
  std::cout << summary.str();
  return all_ok ? kExitOk : kExitViolation;
}

int cmd_converge(const RunConfig& config) {
  ensure_out_dir(config);
  if (config.resolutions.size() < 3) {
    std::cerr << "converge: need at least three resolutions\n";
    return kExitUsage;
  }
  const ParameterGrid probe = build_grid(config.resolutions.front().first,
                                         config.resolutions.front().second);
  const SurfaceSpec spec = surface_spec_from_config(config, probe);
  const ConvergenceStudy st = convergence_study(spec, config.resolutions);

  std::ostringstream csv;
  csv << "n_theta,n_phi,area,lhs,killing_flux,area_order,lhs_order,"
         "kflux_order,area_flag,lhs_flag,kflux_flag\r\n";
  for (size_t i = 0; i < st.resolutions.size(); ++i) {
    auto order_at = [&](const std::vector<double>& o) {
      // Orders attach to the last resolution of each consecutive triple.
      return (i >= 2 && i - 2 < o.size()) ? format_g17(o[i - 2])
                                          : std::string();
    };
    csv << st.resolutions[i].first << ',' << st.resolutions[i].second << ','
        << format_g17(st.area[i]) << ',' << format_g17(st.lhs[i]) << ','
        << format_g17(st.kflux[i]) << ',' << order_at(st.area_orders) << ','
        << order_at(st.lhs_orders) << ',' << order_at(st.kflux_orders) << ','
        << csv_quote(st.area_flag) << ',' << csv_quote(st.lhs_flag) << ','
        << csv_quote(st.kflux_flag) << "\r\n";
  }
  write_text_file(out_path(config, "converge.csv"), csv.str());

  // Plot data: x = n_theta, y = |consecutive difference| (area, lhs) or
  // |value| (flux).
  std::vector<double> xs, ea, el, ek;
  for (size_t i = 0; i + 1 < st.resolutions.size(); ++i) {
    xs.push_back(st.resolutions[i].first);
    ea.push_back(std::fabs(st.area[i] - st.area[i + 1]));
    el.push_back(std::fabs(st.lhs[i] - st.lhs[i + 1]));
    ek.push_back(std::fabs(st.kflux[i]));
  }
  write_text_file(out_path(config, "converge_area.dat"), plot_data(xs, ea));
  write_text_file(out_path(config, "converge_lhs.dat"), plot_data(xs, el));
  write_text_file(out_path(config, "converge_kflux.dat"), plot_data(xs, ek));

  std::cout << "converge: area flag '" << st.area_flag << "', lhs flag '"
            << st.lhs_flag << "', killing-flux flag '" << st.kflux_flag
            << "'\n";
  if (!st.area_flag.empty() && st.area_flag != "exact") {
    std::cout << "warning: area sequence " << st.area_flag << "\n";
  }
  return kExitOk;
}

namespace {

struct IdentityLine {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass() const { return residual <= tol; }
};

}  // namespace

int cmd_identities(const RunConfig& config) {
  ensure_out_dir(config);
  const double m = config.m > 0.0 ? config.m : 1.0;
  const double lambda = config.lambda;
  const auto [nt, np] = config.resolutions.front();
  const ParameterGrid grid = build_grid(nt, np);
  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<IdentityLine> lines;

  // Umbilicity of the rho_lambda slices (optionally fault-injected).
  {
    ConnectionFn conn;
    if (config.fault_injection == "christoffel") {
      conn = [](const SpacetimePoint& p, double mm) {
        Christoffel4 c = christoffel(p, mm);
        c.G[1][0][0] += 1e-3;  // corrupt Gamma^r_tt
        return c;
      };
    }
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double s =
          uniform_from_bits(rng(), 2.0 * m * 1.05, 2.0 * m * 6.0);
      const auto p = hypersurface_second_form(m, lambda, s, conn);
      for (double pii : p) worst = std::fmax(worst, std::fabs(pii - lambda));
    }
    lines.push_back({"umbilicity p_ij = lambda delta_ij", worst, 1e-8});
  }

  // Conformal Killing divergence identity.
  {
    const double s0 = (lambda > 0.0) ? s0_root(m, lambda) : 2.0 * m;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double s = uniform_from_bits(rng(), s0 * 1.001, s0 + 10.0 * m);
      worst = std::fmax(
          worst, std::fabs(conformal_killing_divergence(s, m, lambda)));
    }
    lines.push_back({"div(s f d/ds) = 3 f", worst, config.tol.ode});
  }

  // Horizon flux against the level-set extrapolation oracle.
  if (lambda > 0.0) {
    const double exact = horizon_flux(m, lambda);
    const double extr = horizon_flux_extrapolated(m, lambda, grid);
    lines.push_back({"horizon flux 4 pi s0^3", std::fabs(extr - exact),
                     1e-8 * std::fmax(1.0, exact)});
  }

  // s0 root identity (lambda = 1): s0^3 + s0 = 2m.
  {
    const double s0 = s0_root(m, 1.0);
    lines.push_back({"root identity s0^3 + s0 = 2m",
                     std::fabs(s0 * s0 * s0 + s0 - 2.0 * m), config.tol.root});
  }

  // Isometry: pull back the spacetime metric along the umbilical embedding.
  if (lambda > 0.0) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double s =
          uniform_from_bits(rng(), 2.0 * m * 1.05, 2.0 * m * 6.0);
      const double b = 1.0 - 2.0 * m / s;
      const double rp = RhoTable::rhs(s, m, lambda);
      const double pullback_ss = -b * rp * rp + 1.0 / b;
      const double target = 1.0 / potential_squared(s, m, lambda);
      worst = std::fmax(worst, std::fabs(pullback_ss - target) /
                                   std::fabs(target));
    }
    lines.push_back({"umbilical slice isometric to AdS-Schwarzschild", worst,
                     1e-10});
  }

  // Projection relations on a convex-static test surface.
  {
    const double R = 4.0 * std::fmax(m, 0.5);
    const Profile sigma = constant_profile(R);
    const Profile tau = parse_profile(format_g17(0.05 * R) + "*Y(1,0) + " +
                                      format_g17(0.05 * R) + "*Y(2,2)");
    const SurfaceSample s = build_convex_static(sigma, tau, m, grid);
    const ProjectionReport proj = project_surface(s);
    const PointwiseIdentityReport pw = projection_pointwise_identity(s);
    double worst = std::fmax(proj.metric_residual,
                             proj.inverse_metric_residual);
    worst = std::fmax(worst, proj.volume_element_residual);
    worst = std::fmax(worst, pw.max_j_residual);
    worst = std::fmax(worst, pw.max_projection_residual);
    lines.push_back({"projection relations (metric, volume, J)", worst,
                     config.tol.identity});
  }

  // Killing flux on a generic time-profiled surface (on static-slice
  // surfaces <H, dt> vanishes pointwise, which checks nothing).
  {
    const double R = 3.0 * std::fmax(m, 0.5);
    const Profile u = parse_profile(
        format_g17(R) + " + " + format_g17(0.05 * R) + "*Y(2,1) + " +
        format_g17(0.04 * R) + "*Y(3,-2)");
    const SurfaceSample s = build_null_cone(u, m, grid);
    const VectorField H = mean_curvature_vector(s);
    ScalarField absH(s.nodes());
    for (int k = 0; k < s.nodes(); ++k) {
      const SpacetimePoint p = s.point(k);
      absH[k] = std::sqrt(std::fabs(inner_product(p, m, H[k], H[k])));
    }
    const double scale = integrate_scalar(s, absH);
    lines.push_back({"killing flux int <H, dt> dmu = 0",
                     std::fabs(killing_flux(s)) / scale, 1e-8});
  }

  // Algebraic J identities on the same surface.
  {
    const double R = 3.0 * std::fmax(m, 0.5);
    const Profile u = parse_profile(
        format_g17(R) + " + " + format_g17(0.06 * R) + "*Y(2,2) + " +
        format_g17(0.05 * R) + "*Y(4,1)");
    const SurfaceSample s = build_static_slice(u, m, grid);
    const ExtrinsicField ext = compute_extrinsic(s);
    lines.push_back({"dual curvature identities <J,H> = 0, <J,J> = -<H,H>",
                     ext.max_identity_residual, config.tol.identity});
  }

  std::ostringstream out;
  bool all_pass = true;
  for (const auto& l : lines) {
    all_pass = all_pass && l.pass();
    out << (l.pass() ? "PASS" : "FAIL") << "  " << l.name
        << "  max_residual=" << format_g17(l.residual)
        << "  tol=" << format_g17(l.tol) << "\n";
  }
  std::cout << out.str();
  write_text_file(out_path(config, "identities.txt"), out.str());
  return all_pass ? kExitOk : kExitViolation;
}

int run_command(const std::string& command, const RunConfig& config) {
  try {
    if (command == "verify") return cmd_verify(config);
    if (command == "family") return cmd_family(config);
    if (command == "converge") return cmd_converge(config);
    if (command == "identities") return cmd_identities(config);
    std::cerr << "unknown command: " << command << "\n";
    return kExitUsage;
  } catch (const GateRejected& e) {
    std::cerr << "gate rejection: " << e.what() << "\n";
    return kExitGate;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace gpen
