#pragma once

#include "latcub/integrands.hpp"
#include "latcub/kappa_map.hpp"
#include "latcub/oracles.hpp"

#include <Eigen/Core>

#include <functional>
#include <string>
#include <vector>

namespace latcub {

/// Parameters of the cone of integrands and the stopping rule: minimum
/// reliable level ell_star, lag r, and inflation factor C(m) multiplying the
/// observable block sum. The decomposed (omega_hat, omega_ring) form is
/// optional and consumed only by audits and the stopping-level bound.
struct ConeSpec {
  int ell_star = 6;
  int lag = 4;
  std::function<double(int)> inflation;
  std::function<double(int)> omega_hat;   // optional
  std::function<double(int)> omega_ring;  // optional

  bool has_decomposition() const { return static_cast<bool>(omega_hat) && static_cast<bool>(omega_ring); }
  int initial_level() const { return ell_star + lag; }

  /// ell_star = 6, r = 4, C(m) = 5 * 2^-m.
  static ConeSpec default_cone();

  /// C(m) = scale * decay^-m.
  static ConeSpec geometric(double scale, double decay, int ell_star, int lag);

  /// C(m) = omega_hat(m) omega_ring(r) / (1 - omega_hat(r) omega_ring(r));
  /// requires omega_hat(r) omega_ring(r) < 1.
  static ConeSpec from_decomposition(int ell_star, int lag, std::function<double(int)> omega_hat,
                                     std::function<double(int)> omega_ring);
};

struct ErrorBoundReport {
  int m = 0;
  int ell = 0;
  double s_tilde = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  bool satisfied = false;
};

/// Data-driven bound C(m) * S~_{m-r,m}; requires m >= ell_star + lag.
ErrorBoundReport error_bound(const ConeSpec& cone, const SpectralArray& spec, const KappaNuMap& map,
                             int m, double tolerance);

/// True-coefficient sums of a finite Fourier polynomial under an explicit
/// wavenumber ordering, and whether the cone inequalities hold for them.
struct ConeAuditReport {
  bool conclusive = false;
  bool in_cone = false;
  int m_max = 0;
  std::string message;
  std::vector<double> S;        // S_l, l = 0..m_max
  std::vector<double> S_check;  // S^v_m, m = 0..m_max
  Eigen::MatrixXd S_hat;        // S^_{l,m}, row l, column m (l <= m)
};

/// The block sums alone (S, S_check, S_hat) without any cone check;
/// in_cone is left false.
ConeAuditReport coefficient_block_sums(const FourierPolynomial& f, const GeneratingVector& gv,
                                       int m_max, const oracles::ExplicitKappaMap& kmap);

ConeAuditReport cone_membership_audit(const FourierPolynomial& f, const GeneratingVector& gv,
                                      const ConeSpec& cone, int m_max,
                                      const oracles::ExplicitKappaMap& kmap);

/// Smallest m' >= ell_star + lag with
/// C(m') (1 + omega_hat(r) omega_ring(r)) S_{m'-r} <= eps, or -1 when none
/// exists within the audited range.
int a_priori_stopping_level(const ConeAuditReport& audit, const ConeSpec& cone, double eps);

}  // namespace latcub
