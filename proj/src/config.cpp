#include "gpen/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace gpen {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (known.find(it.key()) == known.end()) {
      throw std::invalid_argument("config: unknown key '" + it.key() +
                                  "' in " + where);
    }
  }
}

std::pair<int, int> parse_resolution(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument(
        "config: a resolution must be a [n_theta, n_phi] pair");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") +
                                e.what());
  }
  if (!j.is_object()) {
    throw std::invalid_argument("config: top level must be an object");
  }
  reject_unknown(j,
                 {"m", "lambda", "lambda_sweep", "resolution", "resolutions",
                  "seed", "threads", "out_dir", "observer_boost", "tolerances",
                  "fault_injection", "exploratory", "surface", "family"},
                 "top level");

  RunConfig c;
  if (j.contains("m")) c.m = j["m"].get<double>();
  if (j.contains("lambda")) c.lambda = j["lambda"].get<double>();
  if (j.contains("lambda_sweep")) {
    c.lambda_sweep = j["lambda_sweep"].get<std::vector<double>>();
  }
  if (j.contains("resolution") && j.contains("resolutions")) {
    throw std::invalid_argument(
        "config: give either 'resolution' or 'resolutions', not both");
  }
  if (j.contains("resolution")) {
    c.resolutions = {parse_resolution(j["resolution"])};
  }
  if (j.contains("resolutions")) {
    c.resolutions.clear();
    for (const auto& r : j["resolutions"]) {
      c.resolutions.push_back(parse_resolution(r));
    }
  }
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("threads")) c.threads = j["threads"].get<int>();
  if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("observer_boost")) {
    c.observer_boost = j["observer_boost"].get<double>();
  }
  if (j.contains("fault_injection")) {
    c.fault_injection = j["fault_injection"].get<std::string>();
    if (!c.fault_injection.empty() && c.fault_injection != "christoffel") {
      throw std::invalid_argument("config: unsupported fault_injection '" +
                                  c.fault_injection + "'");
    }
  }
  if (j.contains("exploratory")) c.exploratory = j["exploratory"].get<bool>();
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    reject_unknown(t, {"identity", "inequality", "ode", "root"}, "tolerances");
    if (t.contains("identity")) c.tol.identity = t["identity"].get<double>();
    if (t.contains("inequality")) {
      c.tol.inequality = t["inequality"].get<double>();
    }
    if (t.contains("ode")) c.tol.ode = t["ode"].get<double>();
    if (t.contains("root")) c.tol.root = t["root"].get<double>();
  }
  if (j.contains("surface")) {
    const json& s = j["surface"];
    reject_unknown(s, {"family", "u", "tau", "sigma_hat", "values_file"},
                   "surface");
    c.has_surface = true;
    if (s.contains("family")) {
      c.surface_family = s["family"].get<std::string>();
      family_from_name(c.surface_family);  // validate
    }
    if (s.contains("u")) c.surface_u = s["u"].get<std::string>();
    if (s.contains("tau")) c.surface_tau = s["tau"].get<std::string>();
    if (s.contains("sigma_hat")) {
      c.surface_sigma_hat = s["sigma_hat"].get<std::string>();
    }
    if (s.contains("values_file")) {
      c.surface_values_file = s["values_file"].get<std::string>();
    }
    const bool is_convex = c.surface_family == "convex_static";
    if (is_convex && c.surface_sigma_hat.empty() &&
        c.surface_values_file.empty()) {
      throw std::invalid_argument(
          "config: convex_static surface needs 'sigma_hat'");
    }
    if (!is_convex && c.surface_u.empty() && c.surface_values_file.empty()) {
      throw std::invalid_argument("config: surface needs 'u'");
    }
  }
  if (j.contains("family")) {
    const json& f = j["family"];
    reject_unknown(f,
                   {"family", "base_radius", "l_max", "amplitude",
                    "tau_amplitude", "count"},
                   "family");
    c.has_family = true;
    if (f.contains("family")) {
      c.family_family = f["family"].get<std::string>();
      family_from_name(c.family_family);  // validate
    }
    if (f.contains("base_radius")) {
      c.family_base_radius = f["base_radius"].get<double>();
    }
    if (f.contains("l_max")) c.family_l_max = f["l_max"].get<int>();
    if (f.contains("amplitude")) {
      c.family_amplitude = f["amplitude"].get<double>();
    }
    if (f.contains("tau_amplitude")) {
      c.family_tau_amplitude = f["tau_amplitude"].get<double>();
    }
    if (f.contains("count")) c.family_count = f["count"].get<int>();
  }

  for (const auto& [nt, np] : c.resolutions) {
    if (nt < 8 || np < 16 || np % 2 != 0) {
      throw std::invalid_argument(
          "config: resolution below minimum 8x16 (n_phi even)");
    }
  }
  if (c.threads < 1) {
    throw std::invalid_argument("config: threads must be >= 1");
  }
  if (!(c.m >= 0.0)) {
    throw std::invalid_argument("config: m must be nonnegative");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  json j;
  j["m"] = c.m;
  j["lambda"] = c.lambda;
  j["lambda_sweep"] = c.lambda_sweep;
  json rs = json::array();
  for (const auto& [nt, np] : c.resolutions) rs.push_back({nt, np});
  j["resolutions"] = rs;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["out_dir"] = c.out_dir;
  j["observer_boost"] = c.observer_boost;
  j["tolerances"] = {{"identity", c.tol.identity},
                     {"inequality", c.tol.inequality},
                     {"ode", c.tol.ode},
                     {"root", c.tol.root}};
  if (!c.fault_injection.empty()) j["fault_injection"] = c.fault_injection;
  if (c.exploratory) j["exploratory"] = true;
  if (c.has_surface) {
    json s;
    s["family"] = c.surface_family;
    if (!c.surface_u.empty()) s["u"] = c.surface_u;
    if (!c.surface_tau.empty()) s["tau"] = c.surface_tau;
    if (!c.surface_sigma_hat.empty()) s["sigma_hat"] = c.surface_sigma_hat;
    if (!c.surface_values_file.empty()) {
      s["values_file"] = c.surface_values_file;
    }
    j["surface"] = s;
  }
  if (c.has_family) {
    j["family"] = {{"family", c.family_family},
                   {"base_radius", c.family_base_radius},
                   {"l_max", c.family_l_max},
                   {"amplitude", c.family_amplitude},
                   {"tau_amplitude", c.family_tau_amplitude},
                   {"count", c.family_count}};
  }
  return j.dump(2);
}

SurfaceSpec surface_spec_from_config(const RunConfig& c,
                                     const ParameterGrid& grid) {
  if (!c.has_surface) {
    throw std::invalid_argument("config: no 'surface' section present");
  }
  SurfaceSpec spec;
  spec.family = family_from_name(c.surface_family);
  spec.m = c.m;
  spec.lambda = c.lambda;

  const bool is_convex = spec.family == SurfaceFamily::ConvexStatic;
  const std::string& radial_expr =
      is_convex ? c.surface_sigma_hat : c.surface_u;
  if (!c.surface_values_file.empty()) {
    spec.radial = load_profile_file(c.surface_values_file, grid);
  } else {
    spec.radial = parse_profile(radial_expr);
  }
  spec.time = c.surface_tau.empty() ? constant_profile(0.0)
                                    : parse_profile(c.surface_tau);
  return spec;
}

FamilySpec family_spec_from_config(const RunConfig& c) {
  if (!c.has_family) {
    throw std::invalid_argument("config: no 'family' section present");
  }
  FamilySpec fs;
  fs.family = family_from_name(c.family_family);
  fs.m = c.m;
  fs.lambda = c.lambda;
  fs.base_radius = c.family_base_radius;
  fs.l_max = c.family_l_max;
  fs.amplitude = c.family_amplitude;
  fs.tau_amplitude = c.family_tau_amplitude;
  fs.count = c.family_count;
  fs.seed = c.seed;
  return fs;
}

}  // namespace gpen
