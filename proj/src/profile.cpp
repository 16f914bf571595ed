#include "gpen/profile.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gpen {

Profile constant_profile(double c) {
  return {SphExpansion({{0, 0, c * std::sqrt(kFourPi)}}), format_g17(c)};
}

namespace {

struct Lexer {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool consume(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  double number() {
    skip_ws();
    const char* begin = s.c_str() + pos;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) {
      throw std::invalid_argument("profile expression: expected a number at '" +
                                  s.substr(pos) + "'");
    }
    pos += static_cast<size_t>(end - begin);
    return v;
  }
  long integer() {
    skip_ws();
    const char* begin = s.c_str() + pos;
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin) {
      throw std::invalid_argument(
          "profile expression: expected an integer at '" + s.substr(pos) +
          "'");
    }
    pos += static_cast<size_t>(end - begin);
    return v;
  }
};

}  // namespace

Profile parse_profile(const std::string& expr) {
  Lexer lex{expr};
  std::vector<HarmonicTerm> terms;
  double constant = 0.0;
  bool first = true;

  while (!lex.eof()) {
    double sign = 1.0;
    if (lex.consume('+')) {
      sign = 1.0;
    } else if (lex.consume('-')) {
      sign = -1.0;
    } else if (!first) {
      throw std::invalid_argument("profile expression: expected '+' or '-' at '" +
                                  expr.substr(lex.pos) + "'");
    }
    first = false;

    double coeff = 1.0;
    bool have_coeff = false;
    if (lex.peek() != 'Y') {
      coeff = lex.number();
      have_coeff = true;
    }
    const bool has_star = have_coeff && lex.consume('*');
    if (lex.peek() == 'Y') {
      if (have_coeff && !has_star) {
        throw std::invalid_argument(
            "profile expression: expected '*' before Y(l,m)");
      }
      lex.skip_ws();
      ++lex.pos;  // 'Y'
      if (!lex.consume('(')) {
        throw std::invalid_argument("profile expression: expected 'Y('");
      }
      const long l = lex.integer();
      if (!lex.consume(',')) {
        throw std::invalid_argument("profile expression: expected ',' in Y(l,m)");
      }
      const long m = lex.integer();
      if (!lex.consume(')')) {
        throw std::invalid_argument("profile expression: expected ')' in Y(l,m)");
      }
      if (l < 0 || std::labs(m) > l) {
        throw std::invalid_argument("profile expression: invalid (l,m) = (" +
                                    std::to_string(l) + "," +
                                    std::to_string(m) + ")");
      }
      terms.push_back(
          {static_cast<int>(l), static_cast<int>(m), sign * coeff});
    } else if (has_star) {
      throw std::invalid_argument(
          "profile expression: expected Y(l,m) after '*'");
    } else {
      constant += sign * coeff;
    }
  }

  if (constant != 0.0) {
    terms.push_back({0, 0, constant * std::sqrt(kFourPi)});
  }
  return {SphExpansion(std::move(terms)), expr};
}

Profile profile_from_values(const ParameterGrid& grid, const ScalarField& v,
                            double tail_tol) {
  SphExpansion e = analyze_field(grid, v);
  const int l_cut = (grid.n_theta - 1) / 2;
  const double tail = spectral_tail_fraction(e, l_cut);
  if (tail > tail_tol) {
    throw std::invalid_argument(
        "tabulated profile is under-resolved: top-octave energy fraction " +
        format_g17(tail) + " exceeds " + format_g17(tail_tol));
  }
  return {std::move(e), "(tabulated)"};
}

Profile load_profile_file(const std::string& path, const ParameterGrid& grid,
                          double tail_tol) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open profile file: " + path);
  }
  int nt = 0, np = 0;
  in >> nt >> np;
  if (nt != grid.n_theta || np != grid.n_phi) {
    throw std::invalid_argument(
        "profile file grid header " + std::to_string(nt) + "x" +
        std::to_string(np) + " does not match requested resolution " +
        std::to_string(grid.n_theta) + "x" + std::to_string(grid.n_phi));
  }
  ScalarField v(grid.nodes());
  for (int k = 0; k < grid.nodes(); ++k) {
    if (!(in >> v[k])) {
      throw std::invalid_argument("profile file truncated: " + path);
    }
  }
  Profile p = profile_from_values(grid, v, tail_tol);
  p.source = path;
  return p;
}

ProfileFields ProfileFields::zeros(int n) {
  ProfileFields f;
  f.v.assign(n, 0.0);
  f.dth.assign(n, 0.0);
  f.dph.assign(n, 0.0);
  f.dthth.assign(n, 0.0);
  f.dthph.assign(n, 0.0);
  f.dphph.assign(n, 0.0);
  return f;
}

ProfileFields eval_profile(const Profile& p, const ParameterGrid& grid) {
  ProfileFields f = ProfileFields::zeros(grid.nodes());
  if (p.empty()) return f;
  const auto jets = synthesize_jets(grid, p.expansion);
  for (int k = 0; k < grid.nodes(); ++k) {
    f.v[k] = jets[k].v;
    f.dth[k] = jets[k].dth;
    f.dph[k] = jets[k].dph;
    f.dthth[k] = jets[k].dthth;
    f.dthph[k] = jets[k].dthph;
    f.dphph[k] = jets[k].dphph;
  }
  return f;
}

}  // namespace gpen
