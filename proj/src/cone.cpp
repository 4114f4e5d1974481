#include "latcub/cone.hpp"

#include <cmath>
#include <stdexcept>

namespace latcub {

ConeSpec ConeSpec::default_cone() { return geometric(5.0, 2.0, 6, 4); }

ConeSpec ConeSpec::geometric(double scale, double decay, int ell_star, int lag) {
  if (scale <= 0 || decay <= 1.0) throw std::invalid_argument("ConeSpec: need scale > 0 and decay > 1");
  if (ell_star < 1 || lag < 1) throw std::invalid_argument("ConeSpec: need ell_star >= 1 and lag >= 1");
  ConeSpec cone;
  cone.ell_star = ell_star;
  cone.lag = lag;
  cone.inflation = [scale, decay](int m) { return scale * std::pow(decay, -m); };
  return cone;
}

ConeSpec ConeSpec::from_decomposition(int ell_star, int lag, std::function<double(int)> omega_hat,
                                      std::function<double(int)> omega_ring) {
  if (ell_star < 1 || lag < 1) throw std::invalid_argument("ConeSpec: need ell_star >= 1 and lag >= 1");
  const double prod = omega_hat(lag) * omega_ring(lag);
  if (!(prod < 1.0)) throw std::invalid_argument("ConeSpec: omega_hat(r) * omega_ring(r) must be < 1");
  ConeSpec cone;
  cone.ell_star = ell_star;
  cone.lag = lag;
  cone.omega_hat = omega_hat;
  cone.omega_ring = omega_ring;
  const double ring_r = omega_ring(lag);
  cone.inflation = [omega_hat, ring_r, prod](int m) { return omega_hat(m) * ring_r / (1.0 - prod); };
  return cone;
}

ErrorBoundReport error_bound(const ConeSpec& cone, const SpectralArray& spec, const KappaNuMap& map,
                             int m, double tolerance) {
  if (m < cone.initial_level())
    throw std::invalid_argument("error_bound: level below ell_star + lag (premature check)");
  if (spec.level != m || map.level() != m)
    throw std::invalid_argument("error_bound: spectrum/map level mismatch");
  ErrorBoundReport report;
  report.m = m;
  report.ell = m - cone.lag;
  report.s_tilde = s_tilde(spec, map, report.ell);
  report.bound = cone.inflation(m) * report.s_tilde;
  report.tolerance = tolerance;
  report.satisfied = report.bound <= tolerance;
  return report;
}

ConeAuditReport coefficient_block_sums(const FourierPolynomial& f, const GeneratingVector& gv,
                                       int m_max, const oracles::ExplicitKappaMap& kmap) {
  ConeAuditReport report;
  report.m_max = m_max;
  if (kmap.level < m_max) {
    report.message = "explicit kappa map shallower than requested audit depth";
    return report;
  }
  const std::int64_t b = gv.base();
  const Index bm_max = ipow(b, m_max);

  // For each support wavenumber: the exact kappa when it is assigned within
  // the map prefix, plus its kappa residue mod b^m for every m (determined
  // by the dual-coset chain even when the exact kappa is unknown).
  struct Entry {
    double magnitude;
    Index kappa = -1;                  // exact position, -1 when >= b^m_max
    std::vector<Index> kappa_mod;      // kappa mod b^m, m = 0..m_max
    std::vector<bool> assigned_below;  // kappa < b^m ?
  };
  std::vector<Entry> entries;

  // residue -> prefix index at the deepest level
  std::vector<Index> residue_to_kappa(bm_max, -1);
  for (Index kappa = 0; kappa < bm_max; ++kappa)
    residue_to_kappa[gv.nu_tilde(kmap.wavenumbers[kappa], m_max)] = kappa;

  // coalesce duplicate wavenumbers before measuring magnitudes
  std::vector<std::pair<IntVec, std::complex<double>>> support;
  for (const auto& [k, c] : f.terms) {
    bool found = false;
    for (auto& [k2, c2] : support) {
      if ((k2 == k).all()) {
        c2 += c;
        found = true;
        break;
      }
    }
    if (!found) support.emplace_back(k, c);
  }

  for (const auto& [k, c] : support) {
    if (std::abs(c) == 0.0) continue;
    Entry e;
    e.magnitude = std::abs(c);
    const Index deep_kappa = residue_to_kappa[gv.nu_tilde(k, m_max)];
    e.kappa_mod.resize(m_max + 1);
    e.assigned_below.resize(m_max + 1);
    for (int m = 0; m <= m_max; ++m) {
      const Index bm = ipow(b, m);
      e.kappa_mod[m] = deep_kappa % bm;
      e.assigned_below[m] = (kmap.wavenumbers[e.kappa_mod[m]] == k).all();
    }
    if (e.assigned_below[m_max]) e.kappa = deep_kappa;
    entries.push_back(std::move(e));
  }

  report.S.assign(m_max + 1, 0.0);
  report.S_check.assign(m_max + 1, 0.0);
  report.S_hat = Eigen::MatrixXd::Zero(m_max + 1, m_max + 1);

  auto block_of = [b](Index kappa) {
    // smallest l with kappa < b^l (block [b^{l-1}, b^l) containing kappa; 0 for kappa = 0)
    int l = 0;
    Index bl = 1;
    while (kappa >= bl) {
      ++l;
      bl *= b;
    }
    return l;
  };

  for (const Entry& e : entries) {
    if (e.kappa >= 0) report.S[block_of(e.kappa)] += e.magnitude;
    for (int m = 0; m <= m_max; ++m) {
      if (e.assigned_below[m]) continue;  // kappa < b^m: not an aliasing term at level m
      report.S_check[m] += e.magnitude;
      report.S_hat(block_of(e.kappa_mod[m]), m) += e.magnitude;
    }
  }

  report.conclusive = true;
  report.message = "block sums only; no cone checked";
  return report;
}

ConeAuditReport cone_membership_audit(const FourierPolynomial& f, const GeneratingVector& gv,
                                      const ConeSpec& cone, int m_max,
                                      const oracles::ExplicitKappaMap& kmap) {
  if (!cone.has_decomposition()) {
    ConeAuditReport report;
    report.m_max = m_max;
    report.message = "audit requires the decomposed (omega_hat, omega_ring) cone form";
    return report;
  }
  ConeAuditReport report = coefficient_block_sums(f, gv, m_max, kmap);
  if (!report.conclusive) return report;
  report.message.clear();
  report.in_cone = true;
  for (int m = 0; m <= m_max && report.in_cone; ++m) {
    for (int l = 0; l <= m; ++l) {
      if (report.S_hat(l, m) > cone.omega_hat(m - l) * report.S_check[m] + 1e-14) {
        report.in_cone = false;
        report.message = "first cone inequality fails at (l=" + std::to_string(l) +
                         ", m=" + std::to_string(m) + ")";
        break;
      }
      if (l >= cone.ell_star && report.S_check[m] > cone.omega_ring(m - l) * report.S[l] + 1e-14) {
        report.in_cone = false;
        report.message = "second cone inequality fails at (l=" + std::to_string(l) +
                         ", m=" + std::to_string(m) + ")";
        break;
      }
    }
  }
  return report;
}

int a_priori_stopping_level(const ConeAuditReport& audit, const ConeSpec& cone, double eps) {
  if (!cone.has_decomposition()) throw std::invalid_argument("a_priori_stopping_level: decomposed cone required");
  const double slack = 1.0 + cone.omega_hat(cone.lag) * cone.omega_ring(cone.lag);
  for (int m = cone.initial_level(); m - cone.lag < static_cast<int>(audit.S.size()) && m <= audit.m_max; ++m) {
    if (cone.inflation(m) * slack * audit.S[m - cone.lag] <= eps) return m;
  }
  return -1;
}

}  // namespace latcub
