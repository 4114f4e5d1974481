#include "latcub/engine.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace latcub {

namespace {

struct LoopState {
  GeneratingVector gv;
  Shift shift;
  const Integrand* f = nullptr;
  std::int64_t base = 0;
  SpectralArray spec;
  KappaNuMap map;
  Index evaluations = 0;
  OpCounter ops;

  explicit LoopState(const CubatureRequest& req)
      : gv(req.gv.prefix(req.dimension)),
        shift(Shift::draw(req.dimension, req.shift_seed)),
        f(&req.f),
        base(req.gv.base()),
        map(req.gv.base()) {}

  Complex eval_node(Index i) {
    ++evaluations;
    return (*f)(shifted_value(gv.node(i), shift.delta));
  }

  void start() {
    SampleBuffer buf;
    buf.level = 0;
    buf.values = {eval_node(0)};
    spec = transform(buf, base, &ops);
  }

  // Level m-1 -> m: evaluate the new node blocks, transform each at level
  // m-1, merge with the existing spectrum, extend the kappa map.
  void extend(int lag) {
    const int m = spec.level + 1;
    const Index len = ipow(base, m - 1);
    std::vector<SpectralArray> blocks;
    blocks.reserve(base);
    blocks.push_back(spec);
    for (std::int64_t a = 1; a < base; ++a) {
      SampleBuffer buf;
      buf.level = m - 1;
      buf.values.reserve(len);
      for (Index i = a * len; i < (a + 1) * len; ++i) buf.values.push_back(eval_node(i));
      blocks.push_back(transform(buf, base, &ops));
    }
    spec = merge(blocks, base, &ops);
    map.extend(spec, lag);
  }
};

void validate(const CubatureRequest& req, int m_budget) {
  if (!req.f) throw std::invalid_argument("integrate: missing integrand");
  if (!(req.tolerance > 0.0)) throw std::invalid_argument("integrate: tolerance must be positive");
  if (req.dimension < 1 || req.dimension > req.gv.dimension())
    throw std::invalid_argument("integrate: dimension must be in [1, gv.dimension]");
  if (m_budget > req.gv.max_level()) throw std::invalid_argument("integrate: m_budget exceeds gv.max_level");
  if (req.cone.initial_level() > m_budget)
    throw std::invalid_argument("integrate: ell_star + lag exceeds m_budget");
}

template <typename Result>
Result run(const CubatureRequest& req, bool traced) {
  const auto t0 = std::chrono::steady_clock::now();
  const int m_budget = req.m_budget < 0 ? req.gv.max_level() : req.m_budget;
  validate(req, m_budget);

  LoopState state(req);
  state.start();
  const int m0 = req.cone.initial_level();
  for (int m = 1; m <= m0; ++m) state.extend(req.cone.lag);

  Result result{};
  result.shift_seed = req.shift_seed;
  for (int m = m0;; ++m) {
    const ErrorBoundReport report = error_bound(req.cone, state.spec, state.map, m, req.tolerance);
    result.trace.push_back({m, report.s_tilde, report.bound});
    if constexpr (std::is_same_v<Result, TracedCubatureResult>) {
      if (traced) {
        Eigen::ArrayXd mags(state.spec.coeffs.size());
        for (Index kappa = 0; kappa < mags.size(); ++kappa)
          mags[kappa] = std::abs(state.spec.coeffs[state.map.perm()[kappa]]);
        result.kappa_magnitudes.push_back(std::move(mags));
      }
    }
    if (report.satisfied || m == m_budget) {
      result.estimate = state.spec.coeffs[0].real();
      result.error_bound = report.bound;
      result.final_level = m;
      result.n_samples = ipow(state.base, m);
      result.converged = report.satisfied;
      break;
    }
    state.extend(req.cone.lag);
  }
  result.evaluation_count = state.evaluations;
  result.transform_flops = state.ops.flops;
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace

CubatureResult integrate(const CubatureRequest& req) { return run<CubatureResult>(req, false); }

TracedCubatureResult integrate_traced(const CubatureRequest& req) {
  return run<TracedCubatureResult>(req, true);
}

}  // namespace latcub
