#include "latcub/cbc.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace latcub {

namespace {

constexpr double kTwoPiSq = 2.0 * std::numbers::pi * std::numbers::pi;

double bernoulli2(double x) { return x * x - x + 1.0 / 6.0; }

// omega[r] = 2 pi^2 B2(r/n)
std::vector<double> omega_table(Index n) {
  std::vector<double> tab(n);
  for (Index r = 0; r < n; ++r) tab[r] = kTwoPiSq * bernoulli2(static_cast<double>(r) / static_cast<double>(n));
  return tab;
}

}  // namespace

WeightSpec WeightSpec::power_weights(int dimension, double power) {
  WeightSpec w;
  w.gamma.resize(dimension);
  for (int j = 0; j < dimension; ++j) w.gamma[j] = std::pow(static_cast<double>(j + 1), -power);
  return w;
}

double p2_criterion(const IntVec& g, Index n, const WeightSpec& weights) {
  if (n < 1) throw std::invalid_argument("p2_criterion: n must be >= 1");
  if (g.size() > weights.gamma.size()) throw std::invalid_argument("p2_criterion: missing weights");
  double sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    double prod = 1.0;
    for (Eigen::Index j = 0; j < g.size(); ++j) {
      const double frac = static_cast<double>((i * g[j]) % n) / static_cast<double>(n);
      prod *= 1.0 + weights.gamma[j] * kTwoPiSq * bernoulli2(frac);
    }
    sum += prod;
  }
  return -1.0 + sum / static_cast<double>(n);
}

nlohmann::json CbcResult::log_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : log) {
    entries.push_back({{"stage", e.stage},
                       {"level", e.level},
                       {"component", e.component},
                       {"g", e.chosen},
                       {"criterion", e.criterion}});
  }
  return {{"base", gv.base()},
          {"max_level", gv.max_level()},
          {"dimension", gv.dimension()},
          {"entries", entries}};
}

CbcResult cbc_construct(std::int64_t base, int m_max, int dimension, const WeightSpec& weights,
                        int full_scan_level) {
  if (!is_prime(base)) throw std::invalid_argument("cbc_construct: base must be prime");
  if (m_max < 1 || dimension < 1) throw std::invalid_argument("cbc_construct: bad sizes");
  if (full_scan_level < 1) throw std::invalid_argument("cbc_construct: bad full_scan_level");
  if (weights.gamma.size() < dimension || (weights.gamma.head(dimension) <= 0.0).any())
    throw std::invalid_argument("cbc_construct: weights must be positive for every component");
  if (m_max > 26 || ipow(base, m_max) > (Index{1} << 26))
    throw std::runtime_error("cbc_construct: capacity exceeded (b^m_max <= 2^26)");

  const int m_scan = std::min(m_max, full_scan_level);
  const Index n_scan = ipow(base, m_scan);
  std::vector<CbcLogEntry> log;
  IntVec g = IntVec::Zero(dimension);
  g[0] = 1;

  // --- full candidate scan at n_scan, one component at a time ---
  {
    const auto omega = omega_table(n_scan);
    std::vector<double> prod(n_scan);
    for (Index i = 0; i < n_scan; ++i) prod[i] = 1.0 + weights.gamma[0] * omega[i % n_scan];
    {
      IntVec g1(1);
      g1[0] = 1;
      log.push_back({"scan", m_scan, 1, 1, p2_criterion(g1, n_scan, weights)});
    }
    for (int j = 1; j < dimension; ++j) {
      const double gamma = weights.gamma[j];
      double best_val = 0.0;
      std::int64_t best_g = -1;
      for (std::int64_t cand = 1; cand < n_scan; ++cand) {
        if (cand % base == 0) continue;
        double sum = 0.0;
        for (Index i = 0; i < n_scan; ++i) sum += prod[i] * (1.0 + gamma * omega[(i * cand) % n_scan]);
        const double val = -1.0 + sum / static_cast<double>(n_scan);
        if (best_g < 0 || val < best_val) {
          best_val = val;
          best_g = cand;
        }
      }
      g[j] = best_g;
      for (Index i = 0; i < n_scan; ++i) prod[i] *= 1.0 + gamma * omega[(i * best_g) % n_scan];
      log.push_back({"scan", m_scan, j + 1, best_g, best_val});
    }
  }

  // --- digit-by-digit refinement for levels past the scan size ---
  for (int m = m_scan + 1; m <= m_max; ++m) {
    const Index n = ipow(base, m);
    const Index step = ipow(base, m - 1);
    const auto omega = omega_table(n);
    std::vector<double> prod(n);
    for (Index i = 0; i < n; ++i) {
      double p = 1.0;
      for (int j = 0; j < dimension; ++j) p *= 1.0 + weights.gamma[j] * omega[(i * g[j]) % n];
      prod[i] = p;
    }
    for (int j = 1; j < dimension; ++j) {
      const double gamma = weights.gamma[j];
      // factor out component j; fall back to a full recompute when its
      // factor can get close to zero
      std::vector<double> excl(n);
      if (1.0 - gamma * kTwoPiSq / 12.0 > 0.05) {
        for (Index i = 0; i < n; ++i) excl[i] = prod[i] / (1.0 + gamma * omega[(i * g[j]) % n]);
      } else {
        for (Index i = 0; i < n; ++i) {
          double p = 1.0;
          for (int jj = 0; jj < dimension; ++jj) {
            if (jj == j) continue;
            p *= 1.0 + weights.gamma[jj] * omega[(i * g[jj]) % n];
          }
          excl[i] = p;
        }
      }
      double best_val = 0.0;
      std::int64_t best_g = -1;
      for (std::int64_t t = 0; t < base; ++t) {
        const std::int64_t cand = g[j] + t * step;
        double sum = 0.0;
        for (Index i = 0; i < n; ++i) sum += excl[i] * (1.0 + gamma * omega[(i * cand) % n]);
        const double val = -1.0 + sum / static_cast<double>(n);
        if (best_g < 0 || val < best_val) {
          best_val = val;
          best_g = cand;
        }
      }
      g[j] = best_g;
      for (Index i = 0; i < n; ++i) prod[i] = excl[i] * (1.0 + gamma * omega[(i * best_g) % n]);
      log.push_back({"refine", m, j + 1, best_g, best_val});
    }
  }

  return CbcResult{GeneratingVector(base, m_max, std::move(g)), std::move(log)};
}

}  // namespace latcub
