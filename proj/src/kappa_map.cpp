#include "latcub/kappa_map.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace latcub {

KappaNuMap::KappaNuMap(std::int64_t base) : base_(base), level_(0), perm_{0} {
  if (base < 2) throw std::invalid_argument("KappaNuMap: base must be >= 2");
}

void KappaNuMap::extend(const SpectralArray& spec, int lag) {
  const int m = level_ + 1;
  if (spec.level != m) throw std::invalid_argument("KappaNuMap::extend: spectrum level mismatch");
  if (lag < 1) throw std::invalid_argument("KappaNuMap::extend: lag must be >= 1");
  const Index half = static_cast<Index>(perm_.size());
  const Index n = half * base_;
  if (spec.coeffs.size() != n) throw std::invalid_argument("KappaNuMap::extend: spectrum size mismatch");

  perm_.resize(n);
  for (std::int64_t a = 1; a < base_; ++a) {
    for (Index kappa = 0; kappa < half; ++kappa) perm_[a * half + kappa] = perm_[kappa] + a * half;
  }

  const auto mag = [&spec](Index nu) { return std::abs(spec.coeffs[nu]); };
  const int ell_lo = std::max(1, m - lag);
  for (int ell = m - 1; ell >= ell_lo; --ell) {
    const Index bl = ipow(base_, ell);
    const Index stride = bl * base_;
    for (Index kappa = 1; kappa < bl; ++kappa) {
      if (mag(perm_[kappa + bl]) > mag(perm_[kappa])) {
        // swap the whole aliasing classes so residues mod b^ell survive
        for (Index lo = kappa, hi = kappa + bl; hi < n; lo += stride, hi += stride)
          std::swap(perm_[lo], perm_[hi]);
      }
    }
  }
  level_ = m;
}

double s_tilde(const SpectralArray& spec, const KappaNuMap& map, int ell) {
  if (ell < 0 || ell > map.level()) throw std::out_of_range("s_tilde: level out of range");
  if (spec.level != map.level()) throw std::invalid_argument("s_tilde: spectrum/map level mismatch");
  const Index lo = ell == 0 ? 0 : ipow(map.base(), ell - 1);
  const Index hi = ipow(map.base(), ell);
  double sum = 0.0;
  for (Index kappa = lo; kappa < hi; ++kappa) sum += std::abs(spec.coeffs[map.perm()[kappa]]);
  return sum;
}

}  // namespace latcub
