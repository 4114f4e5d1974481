#pragma once

#include "latcub/lattice.hpp"

#include <nlohmann/json_fwd.hpp>

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace latcub {

using Integrand = std::function<double(const Eigen::ArrayXd&)>;

/// Finite trigonometric polynomial sum f(x) = sum_k c_k e^{2 pi i <k,x>};
/// its exact integral over the unit cube is the coefficient at k = 0.
struct FourierPolynomial {
  std::vector<std::pair<IntVec, std::complex<double>>> terms;
  int dimension = 0;

  std::complex<double> eval(const Eigen::ArrayXd& x) const;
  double eval_real(const Eigen::ArrayXd& x) const { return eval(x).real(); }
  std::complex<double> integral() const;
  bool is_real_symmetric(double tol = 1e-12) const;

  /// Expansion of prod_j (1 + alpha_j cos(2 pi x_j)): support {-1,0,1}^d
  /// with coefficient prod (alpha_j/2)^{|k_j|}.
  static FourierPolynomial product_cosine(const std::vector<double>& alpha);
};

/// prod_j (1 + alpha_j cos(2 pi x_j)) evaluated directly (cheap form for the engine).
Integrand product_cosine_integrand(std::vector<double> alpha);

double normal_cdf(double x);

/// Inverse standard normal CDF (rational approximation, ~1e-9 absolute).
double inverse_normal_cdf(double u);

struct AsianOptionParams {
  double spot = 100.0;
  double strike = 100.0;
  double maturity = 1.0;      // years
  double rate = 0.03;         // 1/yr
  double sigma = 0.5;         // 1/sqrt(yr)
  int monitoring_dates = 1;   // = integration dimension
};

/// Discounted geometric-average Asian call payoff mapped from the unit cube
/// by coordinatewise inverse normals and a cumulative Brownian path.
double asian_geometric_payoff(const AsianOptionParams& params, const Eigen::ArrayXd& u);

/// Closed-form price of the discrete geometric-average Asian call.
double exact_geometric_price(const AsianOptionParams& params);

enum class Periodization { none, tent };

Periodization parse_periodization(const std::string& name);

/// kind == tent composes the integral-preserving baker's transform
/// x -> 1 - |2x - 1| coordinatewise before f.
Integrand periodize(Integrand f, Periodization kind);

/// An integrand built from a registry name and JSON parameter block.
struct RegisteredIntegrand {
  Integrand f;
  int dimension = 0;
  std::optional<double> exact;  // known true integral, when available
  std::string description;
};

/// Registry used by the CLI: "constant", "fourier-poly", "product-cosine",
/// "asian-geometric". Throws std::invalid_argument for unknown names or
/// malformed parameter blocks.
RegisteredIntegrand make_integrand(const std::string& name, const nlohmann::json& params);

}  // namespace latcub
