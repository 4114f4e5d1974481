#pragma once

#include "latcub/cone.hpp"
#include "latcub/integrands.hpp"
#include "latcub/kappa_map.hpp"
#include "latcub/lattice.hpp"
#include "latcub/transform.hpp"

#include <cstdint>
#include <vector>

namespace latcub {

struct CubatureRequest {
  Integrand f;
  int dimension = 0;
  double tolerance = 0.0;
  ConeSpec cone = ConeSpec::default_cone();
  GeneratingVector gv;
  std::uint64_t shift_seed = 0;
  int m_budget = -1;  // default: gv.max_level
};

struct TraceEntry {
  int m = 0;
  double s_tilde = 0.0;
  double bound = 0.0;
};

struct CubatureResult {
  double estimate = 0.0;
  double error_bound = 0.0;
  int final_level = 0;
  Index n_samples = 0;
  bool converged = false;
  std::vector<TraceEntry> trace;
  double wall_seconds = 0.0;
  Index evaluation_count = 0;
  std::uint64_t shift_seed = 0;
  std::uint64_t transform_flops = 0;
};

/// Adaptive rank-1 lattice cubature: doubles the embedded node set from
/// level ell_star + lag, reusing all previous integrand values, until
/// C(m) * S~_{m-r,m} <= tolerance or the level budget runs out. Budget
/// exhaustion returns converged = false with the best estimate rather than
/// throwing.
CubatureResult integrate(const CubatureRequest& req);

/// |Y(perm[kappa])| snapshots per checked level, for coefficient-decay plots.
struct TracedCubatureResult : CubatureResult {
  std::vector<Eigen::ArrayXd> kappa_magnitudes;
};

TracedCubatureResult integrate_traced(const CubatureRequest& req);

}  // namespace latcub
