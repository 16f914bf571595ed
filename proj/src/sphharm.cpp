#include "gpen/sphharm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gpen/grid.hpp"

namespace gpen {

void alf_column(int l_max, int m, double x, double* val, double* dth,
                double* d2th) {
  if (m < 0 || l_max < m) throw std::invalid_argument("alf_column: bad (l,m)");
  const double st2 = 1.0 - x * x;
  const double st = std::sqrt(st2);

  // Diagonal start Pbar_{m,m}, then raise l.
  double pmm = std::sqrt(0.5);
  for (int k = 1; k <= m; ++k) {
    pmm *= std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * st;
  }
  const int n = l_max - m + 1;
  val[0] = pmm;
  if (n > 1) val[1] = std::sqrt(2.0 * m + 3.0) * x * pmm;
  for (int l = m + 2; l <= l_max; ++l) {
    const double a =
        std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
    const double b = std::sqrt(
        ((l - 1.0) * (l - 1.0) - m * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
    val[l - m] = a * (x * val[l - m - 1] - b * val[l - m - 2]);
  }

  if (dth == nullptr && d2th == nullptr) return;

  for (int l = m; l <= l_max; ++l) {
    const int k = l - m;
    double c = 0.0;
    if (l > m) {
      c = std::sqrt((2.0 * l + 1.0) / (2.0 * l - 1.0) *
                    (static_cast<double>(l) * l - m * m));
    }
    const double prev = (l > m) ? val[k - 1] : 0.0;
    const double d1 = (l * x * val[k] - c * prev) / st;
    if (dth != nullptr) dth[k] = d1;
    if (d2th != nullptr) {
      // Associated Legendre equation in theta form.
      d2th[k] = -(x / st) * d1 -
                (l * (l + 1.0) - static_cast<double>(m) * m / st2) * val[k];
    }
  }
}

namespace {

struct AzimuthalFactor {
  double f = 0.0;   // cos(m phi) or sin(|m| phi), scaled
  double df = 0.0;  // d/dphi
};

inline void azimuthal(int m, double phi, double& f, double& df) {
  if (m == 0) {
    f = 1.0 / std::sqrt(2.0 * kPi);
    df = 0.0;
  } else if (m > 0) {
    const double c = 1.0 / std::sqrt(kPi);
    f = c * std::cos(m * phi);
    df = -m * c * std::sin(m * phi);
  } else {
    const int ma = -m;
    const double c = 1.0 / std::sqrt(kPi);
    f = c * std::sin(ma * phi);
    df = ma * c * std::cos(ma * phi);
  }
}

}  // namespace

SphExpansion::SphExpansion(std::vector<HarmonicTerm> terms)
    : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.l < 0 || std::abs(t.m) > t.l) {
      throw std::invalid_argument("SphExpansion: invalid (l, m) term");
    }
    l_max_ = std::max(l_max_, t.l);
  }
}

SphJet SphExpansion::eval(double theta, double phi) const {
  SphJet out;
  const double x = std::cos(theta);
  std::vector<double> val(l_max_ + 1), dth(l_max_ + 1), d2th(l_max_ + 1);
  for (const auto& t : terms_) {
    const int ma = std::abs(t.m);
    alf_column(t.l, ma, x, val.data(), dth.data(), d2th.data());
    const int k = t.l - ma;
    double f = 0.0, df = 0.0;
    azimuthal(t.m, phi, f, df);
    const double a = t.coeff;
    out.v += a * val[k] * f;
    out.dth += a * dth[k] * f;
    out.dph += a * val[k] * df;
    out.dthth += a * d2th[k] * f;
    out.dthph += a * dth[k] * df;
    out.dphph += a * val[k] * (-static_cast<double>(t.m) * t.m) * f;
  }
  return out;
}

double SphExpansion::energy() const {
  double e = 0.0;
  for (const auto& t : terms_) e += t.coeff * t.coeff;
  return e;
}

SphExpansion analyze_field(const ParameterGrid& grid, const ScalarField& f,
                           double drop_tol) {
  if (static_cast<int>(f.size()) != grid.nodes()) {
    throw std::invalid_argument("analyze_field: field size != node count");
  }
  const int l_max = grid.n_theta - 1;
  const int m_max = std::min(l_max, grid.n_phi / 2 - 1);

  std::vector<double> col(l_max + 1);
  std::vector<HarmonicTerm> terms;
  std::vector<double> fc(grid.n_theta), fs(grid.n_theta);
  std::vector<double> ac(l_max + 1), as(l_max + 1);

  for (int m = 0; m <= m_max; ++m) {
    // Azimuthal projection at each latitude.
    for (int i = 0; i < grid.n_theta; ++i) {
      double sc = 0.0, ss = 0.0;
      for (int j = 0; j < grid.n_phi; ++j) {
        const double v = f[grid.idx(i, j)];
        sc += v * std::cos(m * grid.phi[j]);
        if (m > 0) ss += v * std::sin(m * grid.phi[j]);
      }
      fc[i] = sc;
      fs[i] = ss;
    }
    // Latitudinal projection, all degrees of this order in one sweep.
    std::fill(ac.begin(), ac.end(), 0.0);
    std::fill(as.begin(), as.end(), 0.0);
    for (int i = 0; i < grid.n_theta; ++i) {
      alf_column(l_max, m, grid.x[i], col.data(), nullptr, nullptr);
      for (int l = m; l <= l_max; ++l) {
        ac[l] += grid.w_x[i] * col[l - m] * fc[i];
        if (m > 0) as[l] += grid.w_x[i] * col[l - m] * fs[i];
      }
    }
    const double norm =
        grid.w_phi / (m == 0 ? std::sqrt(2.0 * kPi) : std::sqrt(kPi));
    for (int l = m; l <= l_max; ++l) {
      terms.push_back({l, m, norm * ac[l]});
      if (m > 0) terms.push_back({l, -m, norm * as[l]});
    }
  }

  double amax = 0.0;
  for (const auto& t : terms) amax = std::max(amax, std::fabs(t.coeff));
  std::vector<HarmonicTerm> kept;
  for (const auto& t : terms) {
    if (std::fabs(t.coeff) > drop_tol * amax) kept.push_back(t);
  }
  return SphExpansion(std::move(kept));
}

std::vector<SphJet> synthesize_jets(const ParameterGrid& grid,
                                    const SphExpansion& e) {
  std::vector<SphJet> out(grid.nodes());
  if (e.empty()) return out;
  const int l_max = e.max_degree();

  // Coefficients regrouped by azimuthal order.
  std::vector<std::vector<double>> cc(l_max + 1), cs(l_max + 1);
  for (const auto& t : e.terms()) {
    const int ma = std::abs(t.m);
    auto& bank = (t.m >= 0) ? cc[ma] : cs[ma];
    if (bank.empty()) bank.assign(l_max + 1 - ma, 0.0);
    bank[t.l - ma] += t.coeff;
  }

  std::vector<double> val(l_max + 1), dth(l_max + 1), d2th(l_max + 1);
  for (int i = 0; i < grid.n_theta; ++i) {
    for (int m = 0; m <= l_max; ++m) {
      const auto& bc = cc[m];
      const auto& bs = cs[m];
      if (bc.empty() && bs.empty()) continue;
      alf_column(l_max, m, grid.x[i], val.data(), dth.data(), d2th.data());
      // Latitudinal sums for this order.
      double pc = 0.0, pc_d = 0.0, pc_dd = 0.0;
      double ps = 0.0, ps_d = 0.0, ps_dd = 0.0;
      for (int l = m; l <= l_max; ++l) {
        const int k = l - m;
        if (!bc.empty()) {
          pc += bc[k] * val[k];
          pc_d += bc[k] * dth[k];
          pc_dd += bc[k] * d2th[k];
        }
        if (!bs.empty()) {
          ps += bs[k] * val[k];
          ps_d += bs[k] * dth[k];
          ps_dd += bs[k] * d2th[k];
        }
      }
      const double cnorm = (m == 0) ? 1.0 / std::sqrt(2.0 * kPi)
                                    : 1.0 / std::sqrt(kPi);
      for (int j = 0; j < grid.n_phi; ++j) {
        const double cphi = cnorm * std::cos(m * grid.phi[j]);
        const double sphi = cnorm * std::sin(m * grid.phi[j]);
        SphJet& jet = out[grid.idx(i, j)];
        // cos-branch (m >= 0): azimuthal factor cphi, derivative -m*sphi.
        jet.v += pc * cphi + ps * sphi;
        jet.dth += pc_d * cphi + ps_d * sphi;
        jet.dthth += pc_dd * cphi + ps_dd * sphi;
        jet.dph += -m * pc * sphi + m * ps * cphi;
        jet.dthph += -m * pc_d * sphi + m * ps_d * cphi;
        jet.dphph += -static_cast<double>(m) * m * (pc * cphi + ps * sphi);
      }
    }
  }
  return out;
}

double spectral_tail_fraction(const SphExpansion& e, int l_cut) {
  double total = 0.0, tail = 0.0;
  for (const auto& t : e.terms()) {
    total += t.coeff * t.coeff;
    if (t.l > l_cut) tail += t.coeff * t.coeff;
  }
  return total > 0.0 ? tail / total : 0.0;
}

}  // namespace gpen
