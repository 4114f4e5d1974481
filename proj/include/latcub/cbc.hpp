#pragma once

#include "latcub/lattice.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace latcub {

/// Product coordinate weights gamma_1..gamma_d.
struct WeightSpec {
  Eigen::ArrayXd gamma;

  /// gamma_j = j^-power (default power 2).
  static WeightSpec power_weights(int dimension, double power = 2.0);
};

/// Squared worst-case error surrogate in the weighted smoothness-2 Korobov
/// space: -1 + (1/n) sum_i prod_j (1 + gamma_j 2 pi^2 B2({i g_j / n})),
/// with B2(x) = x^2 - x + 1/6. O(n d).
double p2_criterion(const IntVec& g, Index n, const WeightSpec& weights);

struct CbcLogEntry {
  std::string stage;  // "scan" or "refine"
  int level = 0;
  int component = 0;
  std::int64_t chosen = 0;
  double criterion = 0.0;
};

struct CbcResult {
  GeneratingVector gv;
  std::vector<CbcLogEntry> log;

  nlohmann::json log_json() const;
};

/// Component-by-component construction: g_1 = 1, then each g_j scans all
/// candidates coprime to b at n = b^min(m_max, full_scan_level); levels past
/// the scan size are fixed digit by digit against the full-vector criterion.
/// Deterministic; ties prefer the smallest candidate.
CbcResult cbc_construct(std::int64_t base, int m_max, int dimension, const WeightSpec& weights,
                        int full_scan_level = 12);

}  // namespace latcub
