#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest/doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "cone_fit.hpp"
#include "latcub/cone.hpp"
#include "latcub/kappa_map.hpp"
#include "latcub/lattice.hpp"
#include "latcub/oracles.hpp"
#include "latcub/transform.hpp"

using namespace latcub;

namespace {

GeneratingVector two_dim_gv(int m_max) {
  IntVec g(2);
  g << 1, 27;
  return GeneratingVector(2, m_max, g);
}

// Equal-magnitude spectra keep extend() in pure-append mode, so the map is
// the identity permutation at every level.
KappaNuMap identity_map(int m) {
  KappaNuMap map(2);
  for (int level = 1; level <= m; ++level) {
    SpectralArray spec;
    spec.level = level;
    spec.coeffs = Eigen::ArrayXcd::Ones(ipow(2, level));
    map.extend(spec, 4);
  }
  return map;
}

}  // namespace

TEST_CASE("default cone parameters") {
  ConeSpec cone = ConeSpec::default_cone();
  CHECK(cone.ell_star == 6);
  CHECK(cone.lag == 4);
  CHECK(cone.initial_level() == 10);
  CHECK(cone.inflation(10) == doctest::Approx(5.0 / 1024.0).epsilon(1e-15));
  for (int m = 10; m < 20; ++m)
    CHECK(cone.inflation(m + 1) / cone.inflation(m) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_FALSE(cone.has_decomposition());
}

TEST_CASE("geometric cone rejects bad parameters") {
  CHECK_THROWS_AS(ConeSpec::geometric(0.0, 2.0, 6, 4), std::invalid_argument);
  CHECK_THROWS_AS(ConeSpec::geometric(5.0, 1.0, 6, 4), std::invalid_argument);
  CHECK_THROWS_AS(ConeSpec::geometric(5.0, 2.0, 0, 4), std::invalid_argument);
  CHECK_THROWS_AS(ConeSpec::geometric(5.0, 2.0, 6, 0), std::invalid_argument);
}

TEST_CASE("decomposed cone inflation formula") {
  auto omega_hat = [](int s) { return std::pow(2.0, -s); };
  auto omega_ring = [](int s) { return 2.0 * std::pow(2.0, -s); };
  ConeSpec cone = ConeSpec::from_decomposition(3, 4, omega_hat, omega_ring);
  const double prod = omega_hat(4) * omega_ring(4);
  for (int m = 7; m <= 15; ++m)
    CHECK(cone.inflation(m) ==
          doctest::Approx(omega_hat(m) * omega_ring(4) / (1.0 - prod)).epsilon(1e-14));

  auto big = [](int) { return 1.0; };
  CHECK_THROWS_AS(ConeSpec::from_decomposition(3, 4, big, big), std::invalid_argument);
}

TEST_CASE("error bound reads the lag block") {
  const int m = 6;
  ConeSpec cone = ConeSpec::geometric(3.0, 2.0, 2, 4);
  KappaNuMap map = identity_map(m);
  SpectralArray spec;
  spec.level = m;
  spec.coeffs = Eigen::ArrayXcd::Zero(64);
  for (Index nu = 0; nu < 64; ++nu) spec.coeffs[nu] = Complex(0.1, 0.0) / double(nu + 1);

  ErrorBoundReport report = error_bound(cone, spec, map, m, 1e-3);
  CHECK(report.ell == 2);
  double expected = 0.0;
  for (Index kappa = 2; kappa < 4; ++kappa) expected += std::abs(spec.coeffs[kappa]);
  CHECK(report.s_tilde == doctest::Approx(expected).epsilon(1e-15));
  CHECK(report.bound == doctest::Approx(3.0 / 64.0 * expected).epsilon(1e-14));
  CHECK(report.satisfied == (report.bound <= 1e-3));

  SUBCASE("premature check rejected") {
    CHECK_THROWS_AS(error_bound(ConeSpec::default_cone(), spec, map, m, 1e-3),
                    std::invalid_argument);
  }
  SUBCASE("level mismatch rejected") {
    spec.level = m + 1;
    CHECK_THROWS_AS(error_bound(cone, spec, map, m, 1e-3), std::invalid_argument);
  }
}

TEST_CASE("block sums and cone audit on a lattice-adapted polynomial") {
  const int m_audit = 9;
  GeneratingVector gv = two_dim_gv(m_audit);
  oracles::ExplicitKappaMap kmap = oracles::explicit_kappa_map(gv, m_audit);
  FourierPolynomial f = testing::lattice_adapted_polynomial(kmap, 2.0, 17);

  ConeAuditReport sums = coefficient_block_sums(f, gv, m_audit, kmap);
  REQUIRE(sums.conclusive);
  CHECK_FALSE(sums.in_cone);

  SUBCASE("S_check splits into the S_hat blocks") {
    for (int m = 0; m <= m_audit; ++m) {
      double total = 0.0;
      for (int l = 0; l <= m; ++l) total += sums.S_hat(l, m);
      CHECK(total == doctest::Approx(sums.S_check[m]).epsilon(1e-12));
    }
  }

  SUBCASE("assigned mass plus aliasing mass is the whole polynomial") {
    double all = 0.0;
    for (const auto& [k, c] : f.terms) all += std::abs(c);
    for (int m = 0; m <= m_audit; ++m) {
      double assigned = 0.0;
      for (int l = 0; l <= m; ++l) assigned += sums.S[l];
      // every support wavenumber is either assigned below b^m or aliased;
      // sums.S over l <= m undercounts assigned mass only for wavenumbers
      // assigned above b^m, which S_check[m] still carries
      CHECK(assigned + sums.S_check[m] >= all - 1e-12);
    }
  }

  SUBCASE("fitted envelopes put the polynomial in the cone") {
    ConeSpec cone = testing::fit_cone_from_sums(sums, 4, 3);
    ConeAuditReport audit = cone_membership_audit(f, gv, cone, m_audit, kmap);
    REQUIRE(audit.conclusive);
    CHECK(audit.in_cone);
  }

  SUBCASE("a crushed envelope fails the audit with a located message") {
    auto tiny = [](int) { return 1e-9; };
    ConeSpec cone = ConeSpec::from_decomposition(4, 3, tiny, tiny);
    ConeAuditReport audit = cone_membership_audit(f, gv, cone, m_audit, kmap);
    REQUIRE(audit.conclusive);
    CHECK_FALSE(audit.in_cone);
    CHECK(audit.message.find("cone inequality fails") != std::string::npos);
  }
}

TEST_CASE("true cubature error is dominated by the aliasing block sum") {
  const int m_audit = 9;
  GeneratingVector gv = two_dim_gv(m_audit);
  oracles::ExplicitKappaMap kmap = oracles::explicit_kappa_map(gv, m_audit);
  FourierPolynomial f = testing::lattice_adapted_polynomial(kmap, 2.0, 5);
  ConeAuditReport sums = coefficient_block_sums(f, gv, m_audit, kmap);
  REQUIRE(sums.conclusive);

  Shift shift = Shift::draw(2, 99);
  const double exact = f.integral().real();
  for (int m = 3; m <= m_audit; ++m) {
    const Index n = ipow(2, m);
    double estimate = 0.0;
    for (Index i = 0; i < n; ++i)
      estimate += f.eval_real(shifted_value(gv.node(i), shift.delta));
    estimate /= static_cast<double>(n);
    CHECK(std::abs(estimate - exact) <= sums.S_hat(0, m) + 1e-10);
  }
}

TEST_CASE("chain of cone inequalities links the observable to the truth") {
  const int m_audit = 9;
  const int ell_star = 4;
  const int lag = 3;
  GeneratingVector gv = two_dim_gv(m_audit);
  oracles::ExplicitKappaMap kmap = oracles::explicit_kappa_map(gv, m_audit);
  FourierPolynomial f = testing::lattice_adapted_polynomial(kmap, 2.0, 23);
  ConeAuditReport sums = coefficient_block_sums(f, gv, m_audit, kmap);
  ConeSpec cone = testing::fit_cone_from_sums(sums, ell_star, lag);

  for (int m = ell_star + lag; m <= m_audit; ++m) {
    const int ell = m - lag;
    CHECK(sums.S_hat(0, m) <= cone.omega_hat(m) * sums.S_check[m] + 1e-12);
    CHECK(sums.S_check[m] <= cone.omega_ring(lag) * sums.S[ell] + 1e-12);
    CHECK(cone.inflation(m) ==
          doctest::Approx(cone.omega_hat(m) * cone.omega_ring(lag) /
                          (1.0 - cone.omega_hat(lag) * cone.omega_ring(lag)))
              .epsilon(1e-13));
  }
}

TEST_CASE("stopping-level bound basics") {
  const int m_audit = 9;
  GeneratingVector gv = two_dim_gv(m_audit);
  oracles::ExplicitKappaMap kmap = oracles::explicit_kappa_map(gv, m_audit);
  FourierPolynomial f = testing::lattice_adapted_polynomial(kmap, 2.0, 41);
  ConeAuditReport sums = coefficient_block_sums(f, gv, m_audit, kmap);
  ConeSpec cone = testing::fit_cone_from_sums(sums, 3, 3);

  SUBCASE("monotone in the tolerance") {
    const int loose = a_priori_stopping_level(sums, cone, 1e-1);
    const int tight = a_priori_stopping_level(sums, cone, 1e-5);
    REQUIRE(loose >= cone.initial_level());
    if (tight >= 0) CHECK(tight >= loose);
  }

  SUBCASE("impossible tolerance reports no level") {
    CHECK(a_priori_stopping_level(sums, cone, -1.0) == -1);
  }

  SUBCASE("a constant integrand stops at the first checked level") {
    FourierPolynomial c;
    c.dimension = 2;
    IntVec zero = IntVec::Zero(2);
    c.terms.emplace_back(zero, std::complex<double>(3.5, 0.0));
    ConeAuditReport csums = coefficient_block_sums(c, gv, m_audit, kmap);
    CHECK(a_priori_stopping_level(csums, cone, 1e-12) == cone.initial_level());
  }

  SUBCASE("undecomposed cone is rejected") {
    CHECK_THROWS_AS(a_priori_stopping_level(sums, ConeSpec::default_cone(), 1e-2),
                    std::invalid_argument);
  }
}
