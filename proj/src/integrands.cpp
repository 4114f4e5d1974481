#include "latcub/integrands.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latcub {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::complex<double> FourierPolynomial::eval(const Eigen::ArrayXd& x) const {
  std::complex<double> acc = 0.0;
  for (const auto& [k, c] : terms) {
    double phase = 0.0;
    for (Eigen::Index j = 0; j < k.size(); ++j) phase += static_cast<double>(k[j]) * x[j];
    phase -= std::floor(phase);
    acc += c * std::polar(1.0, kTwoPi * phase);
  }
  return acc;
}

std::complex<double> FourierPolynomial::integral() const {
  std::complex<double> acc = 0.0;
  for (const auto& [k, c] : terms) {
    if ((k == 0).all()) acc += c;
  }
  return acc;
}

bool FourierPolynomial::is_real_symmetric(double tol) const {
  for (const auto& [k, c] : terms) {
    const IntVec neg = -k;
    std::complex<double> mirror = 0.0;
    for (const auto& [k2, c2] : terms) {
      if ((k2 == neg).all()) mirror += c2;
    }
    if (std::abs(mirror - std::conj(c)) > tol) return false;
  }
  return true;
}

FourierPolynomial FourierPolynomial::product_cosine(const std::vector<double>& alpha) {
  const int d = static_cast<int>(alpha.size());
  if (d < 1 || d > 16) throw std::invalid_argument("product_cosine: dimension must be in [1,16]");
  FourierPolynomial p;
  p.dimension = d;
  IntVec k = IntVec::Zero(d);
  // enumerate {-1,0,1}^d
  std::vector<int> digit(d, 0);
  const std::int64_t total = ipow(3, d);
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::int64_t t = idx;
    double coeff = 1.0;
    for (int j = 0; j < d; ++j) {
      const int dj = static_cast<int>(t % 3) - 1;
      t /= 3;
      k[j] = dj;
      if (dj != 0) coeff *= alpha[j] / 2.0;
    }
    p.terms.emplace_back(k, coeff);
  }
  return p;
}

Integrand product_cosine_integrand(std::vector<double> alpha) {
  return [alpha = std::move(alpha)](const Eigen::ArrayXd& x) {
    double prod = 1.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) prod *= 1.0 + alpha[j] * std::cos(kTwoPi * x[static_cast<Eigen::Index>(j)]);
    return prod;
  };
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double inverse_normal_cdf(double u) {
  // Acklam's rational approximation with central/tail split.
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("inverse_normal_cdf: u must be in (0,1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (u < p_low) {
    const double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  } else if (u <= 1.0 - p_low) {
    const double q = u - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - u));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  }
  // one Halley step against the exact CDF
  const double e = normal_cdf(x) - u;
  const double g = e * std::numbers::sqrt2 * std::sqrt(std::numbers::pi) * std::exp(0.5 * x * x);
  x -= g / (1.0 + 0.5 * x * g);
  return x;
}

double asian_geometric_payoff(const AsianOptionParams& params, const Eigen::ArrayXd& u) {
  const int d = params.monitoring_dates;
  if (u.size() != d) throw std::invalid_argument("asian_geometric_payoff: dimension mismatch");
  const double dt = params.maturity / d;
  const double drift = params.rate - 0.5 * params.sigma * params.sigma;
  const double sqrt_dt = std::sqrt(dt);
  constexpr double eps = 0x1p-53;  // lattice nodes include exact 0 coordinates
  double w = 0.0;
  double sum_log_s = 0.0;
  for (int j = 0; j < d; ++j) {
    const double uj = std::min(std::max(u[j], eps), 1.0 - eps);
    w += sqrt_dt * inverse_normal_cdf(uj);
    const double t = (j + 1) * dt;
    sum_log_s += std::log(params.spot) + drift * t + params.sigma * w;
  }
  const double geo_mean = std::exp(sum_log_s / d);
  return std::exp(-params.rate * params.maturity) * std::max(geo_mean - params.strike, 0.0);
}

double exact_geometric_price(const AsianOptionParams& params) {
  const double d = params.monitoring_dates;
  const double t_bar = params.maturity * (d + 1.0) / (2.0 * d);
  const double mu_g = std::log(params.spot) + (params.rate - 0.5 * params.sigma * params.sigma) * t_bar;
  const double var_g =
      params.sigma * params.sigma * params.maturity * (d + 1.0) * (2.0 * d + 1.0) / (6.0 * d * d);
  const double sig_g = std::sqrt(var_g);
  const double d1 = (mu_g + var_g - std::log(params.strike)) / sig_g;
  const double d2 = d1 - sig_g;
  return std::exp(-params.rate * params.maturity) *
         (std::exp(mu_g + 0.5 * var_g) * normal_cdf(d1) - params.strike * normal_cdf(d2));
}

Periodization parse_periodization(const std::string& name) {
  if (name == "none") return Periodization::none;
  if (name == "tent") return Periodization::tent;
  throw std::invalid_argument("unknown periodization kind: " + name);
}

Integrand periodize(Integrand f, Periodization kind) {
  switch (kind) {
    case Periodization::none:
      return f;
    case Periodization::tent:
      return [f = std::move(f)](const Eigen::ArrayXd& x) {
        const Eigen::ArrayXd folded = 1.0 - (2.0 * x - 1.0).abs();
        return f(folded);
      };
  }
  throw std::invalid_argument("periodize: unknown kind");
}

RegisteredIntegrand make_integrand(const std::string& name, const nlohmann::json& params) {
  RegisteredIntegrand reg;
  if (name == "constant") {
    const double c = params.value("value", 1.0);
    const int d = params.value("dimension", 1);
    reg.f = [c](const Eigen::ArrayXd&) { return c; };
    reg.dimension = d;
    reg.exact = c;
    reg.description = "constant " + std::to_string(c);
  } else if (name == "fourier-poly") {
    FourierPolynomial p;
    if (!params.contains("terms") || !params["terms"].is_array() || params["terms"].empty())
      throw std::invalid_argument("fourier-poly: needs a nonempty 'terms' array");
    for (const auto& term : params["terms"]) {
      const auto& kj = term.at("k");
      IntVec k(kj.size());
      for (std::size_t j = 0; j < kj.size(); ++j) k[static_cast<Eigen::Index>(j)] = kj[j].get<std::int64_t>();
      if (p.dimension == 0) p.dimension = static_cast<int>(k.size());
      if (static_cast<int>(k.size()) != p.dimension)
        throw std::invalid_argument("fourier-poly: inconsistent wavenumber dimensions");
      const std::complex<double> c(term.value("re", 0.0), term.value("im", 0.0));
      p.terms.emplace_back(std::move(k), c);
    }
    if (!p.is_real_symmetric(1e-9))
      throw std::invalid_argument("fourier-poly: coefficients must be conjugate-symmetric for a real integrand");
    reg.dimension = p.dimension;
    reg.exact = p.integral().real();
    reg.f = [p = std::move(p)](const Eigen::ArrayXd& x) { return p.eval_real(x); };
    reg.description = "fourier polynomial";
  } else if (name == "product-cosine") {
    std::vector<double> alpha = params.at("alpha").get<std::vector<double>>();
    if (alpha.empty()) throw std::invalid_argument("product-cosine: empty alpha");
    reg.dimension = static_cast<int>(alpha.size());
    reg.exact = 1.0;
    reg.f = product_cosine_integrand(std::move(alpha));
    reg.description = "product cosine";
  } else if (name == "asian-geometric") {
    AsianOptionParams p;
    p.spot = params.value("spot", 100.0);
    p.strike = params.value("strike", 100.0);
    p.maturity = params.value("maturity", 1.0);
    p.rate = params.value("rate", 0.03);
    p.sigma = params.value("sigma", 0.5);
    p.monitoring_dates = params.value("dates", 4);
    if (p.spot <= 0 || p.strike <= 0 || p.maturity <= 0 || p.sigma <= 0 || p.monitoring_dates < 1)
      throw std::invalid_argument("asian-geometric: parameters out of range");
    const Periodization kind = parse_periodization(params.value("periodize", "none"));
    reg.dimension = p.monitoring_dates;
    reg.exact = exact_geometric_price(p);
    reg.f = periodize([p](const Eigen::ArrayXd& u) { return asian_geometric_payoff(p, u); }, kind);
    reg.description = "geometric Asian call";
  } else {
    throw std::invalid_argument("unknown integrand: " + name);
  }
  return reg;
}

}  // namespace latcub
