#include "gpen/report.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gpen {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

const char* kFamilyCsvHeader =
    "index,family,m,lambda,seed,n_theta,n_phi,lhs,rhs,gap,killing_flux,"
    "min_expansion,min_past_expansion,gate_margin,area,equality_case";

std::string family_csv_row(int index, const InequalityReport& r,
                           std::uint64_t seed) {
  std::ostringstream os;
  os << index << ',' << csv_quote(r.family) << ',' << format_g17(r.m) << ','
     << format_g17(r.lambda) << ',' << seed << ',' << r.n_theta << ','
     << r.n_phi << ',' << format_g17(r.lhs) << ',' << format_g17(r.rhs) << ','
     << format_g17(r.gap) << ',' << format_g17(r.killing_flux) << ','
     << format_g17(r.min_expansion) << ','
     << format_g17(r.min_past_expansion) << ',' << format_g17(r.gate_margin)
     << ',' << format_g17(r.area) << ',' << (r.equality_case ? 1 : 0);
  return os.str();
}

std::string report_json(const InequalityReport& r, const RunConfig& c) {
  nlohmann::json j;
  j["header"] = nlohmann::json::parse(serialize_config(c));
  j["family"] = r.family;
  j["m"] = r.m;
  j["lambda"] = r.lambda;
  j["resolution"] = {r.n_theta, r.n_phi};
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["gap"] = r.gap;
  j["frame_form_lhs"] = r.frame_form_lhs;
  j["area"] = r.area;
  j["killing_flux"] = r.killing_flux;
  j["min_expansion"] = r.min_expansion;
  j["min_past_expansion"] = r.min_past_expansion;
  j["identity_residual"] = r.identity_residual;
  j["gate_margin"] = r.gate_margin;
  j["equality_case"] = r.equality_case;
  j["inequality_ok"] = r.inequality_ok;
  for (const auto& [k, v] : r.extras) j["checks"][k] = v;
  return j.dump(2) + "\n";
}

std::string report_summary(const InequalityReport& r, const RunConfig& c) {
  std::ostringstream os;
  os << "surface family:      " << r.family << "\n"
     << "mass m:              " << format_g17(r.m) << "\n"
     << "lambda:              " << format_g17(r.lambda) << "\n"
     << "resolution:          " << r.n_theta << " x " << r.n_phi << "\n"
     << "seed:                " << c.seed << "\n"
     << "lhs  (-<J,dt> flux + 16 pi m): " << format_g17(r.lhs) << "\n"
     << "rhs  (sqrt(16 pi |Sigma|)):    " << format_g17(r.rhs) << "\n"
     << "gap:                 " << format_g17(r.gap) << "\n"
     << "killing flux:        " << format_g17(r.killing_flux) << "\n"
     << "min outward expansion:      " << format_g17(r.min_expansion) << "\n"
     << "min past outward expansion: " << format_g17(r.min_past_expansion)
     << "\n"
     << "gate margin:         " << format_g17(r.gate_margin) << "\n"
     << "equality case:       " << (r.equality_case ? "yes" : "no") << "\n"
     << "inequality holds:    " << (r.inequality_ok ? "yes" : "NO") << "\n";
  for (const auto& [k, v] : r.extras) {
    os << k << ": " << format_g17(v) << "\n";
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

std::string plot_data(const std::vector<double>& x,
                      const std::vector<double>& y) {
  std::ostringstream os;
  for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
    os << format_g17(x[i]) << ' ' << format_g17(y[i]) << '\n';
  }
  return os.str();
}

}  // namespace gpen
